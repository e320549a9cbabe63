#include "lik/report.hpp"

#include "lik/conservation.hpp"
#include "lik/parser.hpp"
#include "lik/recursion.hpp"
#include "lik/symmetry.hpp"

#include <json.hpp>

#include <set>
#include <sstream>
#include <stdexcept>

namespace lik {

std::pair<std::string, Rational> parse_assignment(const std::string& text) {
  auto trim = [](std::string s) {
    const char* space = " \t";
    s.erase(0, s.find_first_not_of(space));
    s.erase(s.find_last_not_of(space) + 1);
    return s;
  };
  auto eq = text.find('=');
  std::string name = eq == std::string::npos ? "" : trim(text.substr(0, eq));
  if (name.empty()) throw std::invalid_argument("expected name=value, got '" + text + "'");
  try {
    return {name, parse_rational(trim(text.substr(eq + 1)))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational value in '" + text + "'");
  }
}

namespace {

using Json = nlohmann::ordered_json;

// Raised for problems with the request itself (exit code 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string render_ranks(const std::vector<Rational>& ranks) {
  std::vector<std::string> parts;
  for (const auto& r : ranks) parts.push_back(to_string(r));
  return "(" + join(parts, ", ") + ")";
}

Json ranks_json(const std::vector<Rational>& ranks) {
  Json out = Json::array();
  for (const auto& r : ranks) out.push_back(to_string(r));
  return out;
}

std::string status_text(ParametricBranch::Status s) {
  switch (s) {
    case ParametricBranch::Status::Solved:
      return "solved";
    case ParametricBranch::Status::DepthExhausted:
      return "depth exhausted";
    case ParametricBranch::Status::Unresolved:
      return "unresolved";
  }
  return "unknown";
}

class Session {
 public:
  explicit Session(const RunOptions& options) : opts_(options) {
    doc_["schema_version"] = 1;
    doc_["command"] = options.command;
    doc_["system"] = nullptr;
    doc_["weights"] = nullptr;
    doc_["densities"] = Json::array();
    doc_["symmetries"] = Json::array();
    doc_["recursion_operator"] = nullptr;
    doc_["conditions"] = Json::array();
    doc_["verification"] = Json::array();
  }

  RunOutput execute() {
    RunOutput out;
    try {
      load_system();
      out.exit_code = dispatch();
    } catch (const ParseError& e) {
      err_ << "error: " << current_file_ << ": " << e.what() << "\n";
      return {kExitUsage, "", err_.str()};
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << "\n";
      return {kExitUsage, "", err_.str()};
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return {kExitUsage, "", err_.str()};
    } catch (const std::runtime_error& e) {
      err_ << "error: " << e.what() << "\n";
      return {kExitUsage, "", err_.str()};
    }
    out.out = opts_.json ? doc_.dump(2) + "\n" : text_.str();
    out.err = err_.str();
    return out;
  }

 private:
  const RunOptions& opts_;
  DdeSystem sys_;
  SymbolTable symbols_;
  std::ostringstream text_;
  std::ostringstream err_;
  Json doc_;
  std::optional<WeightVector> w_;
  std::string current_file_;
  int max_depth_ = branch_depth_from_env();

  int dispatch() {
    const std::string& c = opts_.command;
    if (c == "weights") return cmd_weights();
    if (c == "densities") return cmd_densities();
    if (c == "symmetries") return cmd_symmetries();
    if (c == "recursion") return cmd_recursion();
    if (c == "verify") return cmd_verify();
    if (c == "verify-recursion") return cmd_verify_recursion();
    throw UsageError("unknown command '" + c + "'");
  }

  std::string read_input(const std::string& path) {
    current_file_ = path;
    return read_file(path);
  }

  void load_system() {
    sys_ = parse_system(read_input(opts_.system_path));
    Json values = Json::object();
    for (const auto& [name, value] : opts_.params) {
      auto it = std::find(sys_.parameters.begin(), sys_.parameters.end(), name);
      if (it == sys_.parameters.end()) throw UsageError("unknown parameter '" + name + "'");
      sys_ = sys_.with_parameter(static_cast<std::size_t>(it - sys_.parameters.begin()), ParamCoeff(value));
      values[name] = to_string(value);
    }
    symbols_ = sys_.symbols();
    Json sys_json;
    sys_json["components"] = sys_.components;
    sys_json["parameters"] = sys_.parameters;
    sys_json["parameter_values"] = values;
    Json eqs = Json::array();
    text_ << "system:\n";
    for (std::size_t i = 0; i < sys_.size(); ++i) {
      std::string eq = sys_.components[i] + "' = " + sys_.rhs[i].render(symbols_);
      eqs.push_back(eq);
      text_ << "  " << eq << "\n";
    }
    for (const auto& [name, value] : opts_.params) text_ << "  with " << name << " = " << to_string(value) << "\n";
    sys_json["equations"] = eqs;
    doc_["system"] = sys_json;
  }

  std::string weight_list(const std::vector<Rational>& v) const {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < v.size(); ++i) parts.push_back("w(" + sys_.components[i] + ") = " + to_string(v[i]));
    return join(parts, ", ");
  }

  Json weight_json(const std::vector<Rational>& v) const {
    Json out = Json::object();
    for (std::size_t i = 0; i < v.size(); ++i) out[sys_.components[i]] = to_string(v[i]);
    return out;
  }

  // Returns true when a unique weight vector is available.
  bool weights_section() {
    std::map<std::size_t, Rational> fixed;
    for (const auto& [name, value] : opts_.weights) {
      int idx = sys_.component_index(name);
      if (idx < 0) throw UsageError("unknown component '" + name + "' in --weight");
      fixed[static_cast<std::size_t>(idx)] = value;
    }
    WeightResult result = compute_weights(sys_, fixed);
    Json j;
    if (auto* wv = std::get_if<WeightVector>(&result)) {
      w_ = *wv;
      j["status"] = "determined";
      j["values"] = weight_json(wv->weights);
      text_ << "weights: " << weight_list(wv->weights) << "\n";
    } else if (auto* u = std::get_if<Underdetermined>(&result)) {
      j["status"] = "underdetermined";
      j["particular"] = weight_json(u->particular);
      Json dirs = Json::array();
      text_ << "weights: underdetermined, " << weight_list(u->particular);
      for (std::size_t k = 0; k < u->directions.size(); ++k) {
        dirs.push_back(weight_json(u->directions[k]));
        text_ << " + t" << k + 1 << "*" << render_ranks(u->directions[k]);
      }
      text_ << " (pin components with --weight name=value)\n";
      j["directions"] = dirs;
    } else {
      const auto& inc = std::get<Inconsistent>(result);
      j["status"] = "inconsistent";
      j["reason"] = inc.reason;
      text_ << "weights: inconsistent: " << inc.reason << "\n";
    }
    doc_["weights"] = j;
    return w_.has_value();
  }

  const WeightVector& require_weights_or_throw() {
    if (!weights_section()) throw std::runtime_error("weights are not uniquely determined; use --weight name=value");
    return *w_;
  }

  int cmd_weights() {
    weights_section();
    const std::string& status = doc_["weights"]["status"].get_ref<const std::string&>();
    return status == "inconsistent" ? kExitNoResult : kExitOk;
  }

  // Distinct positive ranks up to max, ascending.
  std::vector<Rational> ranks_upto(const Rational& max) const {
    std::set<Rational> ranks;
    for (const auto& m : monomials_upto_rank(*w_, max)) ranks.insert(rank_of(m, *w_));
    return {ranks.begin(), ranks.end()};
  }

  // One "conditions" entry per branch; branch lines only when parameters split.
  template <class Branch>
  void report_branches(const std::vector<Branch>& branches, const std::vector<Rational>& ranks, const std::string& kind) {
    bool parametric = branches.size() > 1 || !branches.front().conditions.empty() || !branches.front().assumptions.empty();
    for (const auto& b : branches) {
      Json j;
      j["kind"] = kind;
      j["ranks"] = ranks_json(ranks);
      j["conditions"] = b.conditions;
      j["assumptions"] = b.assumptions;
      j["status"] = status_text(b.status);
      j["results"] = b.results.size();
      doc_["conditions"].push_back(j);
      if (!parametric) continue;
      std::string label = b.conditions.empty() ? "generic" : join(b.conditions, ", ");
      if (!b.assumptions.empty()) label += " [" + join(b.assumptions, ", ") + "]";
      std::string verdict = b.status != ParametricBranch::Status::Solved ? status_text(b.status)
                            : b.results.empty()                          ? "no candidate"
                                                                         : std::to_string(b.results.size()) + " " + kind;
      text_ << "  branch " << label << ": " << verdict << "\n";
    }
  }

  std::vector<DensityResult> densities_at(const Rational& rank, bool report) {
    DensityCandidate candidate;
    try {
      candidate = build_density_candidate(sys_, *w_, rank);
    } catch (const std::runtime_error& e) {
      if (report) text_ << "density rank " << to_string(rank) << "\n  " << e.what() << "\n";
      return {};
    }
    auto branches = solve_density_branches(candidate, sys_, max_depth_);
    std::vector<DensityResult> results;
    for (const auto& b : branches) results.insert(results.end(), b.results.begin(), b.results.end());
    if (!report) return results;
    text_ << "density rank " << to_string(rank) << "\n";
    text_ << "  candidate: " << candidate.render(symbols_) << "\n";
    report_branches(branches, {rank}, "density");
    if (results.empty()) text_ << "  no density at this rank\n";
    for (const auto& d : results) {
      text_ << "  rho = " << d.rho.render(symbols_) << "\n";
      text_ << "  flux = " << d.flux.render(symbols_) << "\n";
      text_ << "  flux_decomposition = " << d.flux_decomposition.render(symbols_) << "\n";
      text_ << "  normalization: " << d.normalization << "\n";
      if (!d.conditions.empty()) text_ << "  conditions: " << join(d.conditions, ", ") << "\n";
      Json j;
      j["rank"] = to_string(d.rank);
      j["rho"] = d.rho.render(symbols_);
      j["flux"] = d.flux.render(symbols_);
      j["flux_decomposition"] = d.flux_decomposition.render(symbols_);
      j["conditions"] = d.conditions;
      j["normalization"] = d.normalization;
      j["candidate"] = candidate.render(symbols_);
      doc_["densities"].push_back(j);
    }
    return results;
  }

  int cmd_densities() {
    if (opts_.rank.has_value() == opts_.max_rank.has_value()) {
      throw UsageError("densities needs exactly one of --rank or --max-rank");
    }
    const Rational bound = opts_.rank ? *opts_.rank : *opts_.max_rank;
    if (bound <= 0) throw UsageError("rank must be positive");
    require_weights_or_throw();
    std::vector<Rational> ranks = opts_.rank ? std::vector<Rational>{*opts_.rank} : ranks_upto(*opts_.max_rank);
    std::size_t found = 0;
    for (const auto& r : ranks) found += densities_at(r, true).size();
    if (found == 0) {
      err_ << "no density found\n";
      return kExitNoResult;
    }
    return kExitOk;
  }

  std::optional<std::size_t> normalize_index() const {
    if (!opts_.normalize_unknown) return std::nullopt;
    if (*opts_.normalize_unknown == 0) throw UsageError("--normalize-unknown is 1-based");
    return *opts_.normalize_unknown - 1;
  }

  std::vector<SymmetryResult> symmetries_at(const std::vector<Rational>& ranks, bool report) {
    SymmetryCandidate candidate;
    try {
      candidate = build_symmetry_candidate(sys_, *w_, ranks);
    } catch (const std::runtime_error& e) {
      if (report) text_ << "symmetry ranks " << render_ranks(ranks) << "\n  " << e.what() << "\n";
      return {};
    }
    auto branches = solve_symmetry_branches(candidate, sys_, normalize_index(), max_depth_);
    std::vector<SymmetryResult> all;
    for (const auto& b : branches) all.insert(all.end(), b.results.begin(), b.results.end());
    if (!report) return all;

    text_ << "symmetry ranks " << render_ranks(ranks) << "\n";
    text_ << "  candidate (" << candidate.unknowns() << " unknowns):\n";
    auto rendered = candidate.render(symbols_);
    for (std::size_t i = 0; i < rendered.size(); ++i) text_ << "    " << sys_.components[i] << ": " << rendered[i] << "\n";
    report_branches(branches, ranks, "symmetry");
    if (all.empty()) text_ << "  no symmetry at these ranks\n";
    for (const auto& g : all) {
      if (!g.conditions.empty()) text_ << "  under " << join(g.conditions, ", ") << ":\n";
      Json comps = Json::array();
      for (std::size_t i = 0; i < g.components.size(); ++i) {
        std::string s = g.components[i].render(symbols_);
        comps.push_back(s);
        text_ << "  " << sys_.components[i] << " = " << s << "\n";
      }
      Json j;
      j["ranks"] = ranks_json(g.ranks);
      j["components"] = comps;
      j["conditions"] = g.conditions;
      doc_["symmetries"].push_back(j);
    }
    return all;
  }

  std::vector<Rational> level_ranks(int level) const {
    std::vector<Rational> ranks = rhs_ranks(sys_, *w_);
    for (auto& r : ranks) r += Rational(level);
    return ranks;
  }

  int cmd_symmetries() {
    if (opts_.ranks.empty() == !opts_.levels.has_value()) {
      throw UsageError("symmetries needs exactly one of --ranks or --levels");
    }
    require_weights_or_throw();
    if (!opts_.ranks.empty()) {
      if (opts_.ranks.size() != sys_.size()) throw UsageError("--ranks needs one rank per component");
      return symmetries_at(opts_.ranks, true).empty() ? kExitNoResult : kExitOk;
    }
    if (*opts_.levels < 1) throw UsageError("--levels must be at least 1");
    int code = kExitOk;
    for (int k = 0; k < *opts_.levels; ++k) {
      if (symmetries_at(level_ranks(k * opts_.gap), true).empty()) code = kExitNoResult;
    }
    return code;
  }

  int report_no_solution(const NoSolution& ns) {
    text_ << "recursion: no operator found\n";
    text_ << "  failing constraint family: " << ns.family << "\n";
    text_ << "  detail: " << ns.detail << "\n";
    err_ << "no recursion operator: " << ns.family << ": " << ns.detail << "\n";
    Json v;
    v["check"] = "recursion";
    v["ok"] = false;
    v["family"] = ns.family;
    v["detail"] = ns.detail;
    doc_["verification"].push_back(v);
    return ns.family == "verification" ? kExitVerificationFailed : kExitNoResult;
  }

  int cmd_recursion() {
    require_weights_or_throw();
    for (const auto& f : sys_.rhs) {
      if (f.has_parameters()) {
        return report_no_solution({"parameters", "assign numeric values to all parameters with --param"});
      }
    }
    int levels = opts_.levels.value_or(3);
    if (opts_.gap < 1) throw UsageError("--gap must be positive");
    if (levels < opts_.gap + 1) throw UsageError("--levels must exceed --gap");
    const int extra_levels = 2;

    std::vector<SymmetryResult> chain;
    std::string missing;
    auto extend_chain = [&](int upto) {
      while (static_cast<int>(chain.size()) < upto && missing.empty()) {
        auto ranks = level_ranks(static_cast<int>(chain.size()));
        auto found = symmetries_at(ranks, false);
        if (found.empty()) {
          missing = "no symmetry at ranks " + render_ranks(ranks);
        } else {
          chain.push_back(found.front());
        }
      }
    };
    extend_chain(levels);
    if (static_cast<int>(chain.size()) < opts_.gap + 1) {
      return report_no_solution({"symmetry chain", missing.empty() ? "not enough symmetries" : missing});
    }

    RankMatrix rm = rank_matrix(chain[0], chain[static_cast<std::size_t>(opts_.gap)]);
    std::vector<DensityDescriptor> densities = log_densities(sys_);
    Rational bound = 0;
    for (std::size_t i = 0; i < rm.n; ++i) {
      for (std::size_t l = 0; l < rm.n; ++l) bound = std::max(bound, Rational(rm.at(i, l) + (*w_)[l]));
    }
    if (bound > 0) {
      for (const auto& r : ranks_upto(bound)) {
        for (auto& d : densities_at(r, false)) densities.push_back(DensityDescriptor::polynomial(d.rho));
      }
    }

    RecursionResult result = solve_recursion(sys_, *w_, chain, densities, opts_.gap);
    while (std::holds_alternative<NoSolution>(result) && std::get<NoSolution>(result).family == "underdetermined" &&
           static_cast<int>(chain.size()) < levels + extra_levels && missing.empty()) {
      extend_chain(static_cast<int>(chain.size()) + 1);
      result = solve_recursion(sys_, *w_, chain, densities, opts_.gap);
    }

    text_ << "symmetries used:\n";
    for (std::size_t k = 0; k < chain.size(); ++k) {
      std::vector<std::string> comps;
      for (const auto& g : chain[k].components) comps.push_back(g.render(symbols_));
      text_ << "  G(" << k + 1 << ") ranks " << render_ranks(chain[k].ranks) << ": (" << join(comps, ", ") << ")\n";
    }
    if (auto* ns = std::get_if<NoSolution>(&result)) return report_no_solution(*ns);
    const auto& sol = std::get<RecursionSolution>(result);

    Json j;
    j["gap"] = opts_.gap;
    j["levels_used"] = chain.size();
    Json rmj = Json::array();
    text_ << "rank matrix:\n";
    for (std::size_t i = 0; i < rm.n; ++i) {
      std::vector<std::string> row;
      for (std::size_t l = 0; l < rm.n; ++l) row.push_back(to_string(rm.at(i, l)));
      rmj.push_back(row);
      text_ << "  [" << join(row, ", ") << "]\n";
    }
    j["rank_matrix"] = rmj;
    Json cov = Json::array();
    std::vector<std::string> cov_text;
    for (const auto& d : densities) {
      cov.push_back(d.render(symbols_));
      cov_text.push_back(d.render(symbols_));
    }
    j["densities"] = cov;
    text_ << "densities for covariants: " << join(cov_text, ", ") << "\n";

    std::string cand = sol.candidate.render(symbols_);
    text_ << "candidate (" << sol.candidate.unknowns() << " unknowns):\n";
    Json cand_lines = Json::array();
    std::istringstream lines(cand);
    for (std::string line; std::getline(lines, line);) {
      cand_lines.push_back(line);
      text_ << "  " << line << "\n";
    }
    j["unknowns"] = sol.candidate.unknowns();
    j["candidate"] = cand_lines;
    Json coeffs = Json::object();
    std::vector<std::string> coeff_text;
    for (std::size_t k = 0; k < sol.coefficients.size(); ++k) {
      std::string name = "c" + std::to_string(k + 1);
      std::string value = sol.coefficients[k].render(sys_.parameters);
      coeffs[name] = value;
      coeff_text.push_back(name + " = " + value);
    }
    j["coefficients"] = coeffs;
    text_ << "coefficients: " << join(coeff_text, ", ") << "\n";

    Json entries = Json::array();
    text_ << "recursion operator:\n";
    for (std::size_t r = 0; r < sol.op.size(); ++r) {
      for (std::size_t c = 0; c < sol.op.size(); ++c) {
        if (sol.op.at(r, c).is_zero()) continue;
        std::string e = sol.op.at(r, c).render(symbols_);
        entries.push_back({{"row", r + 1}, {"col", c + 1}, {"entry", e}});
        text_ << "  R[" << r + 1 << "," << c + 1 << "] = " << e << "\n";
      }
    }
    j["entries"] = entries;
    j["verdict"] = sol.verification.summary;
    doc_["recursion_operator"] = j;
    text_ << "verdict: " << sol.verification.summary << "\n";
    push_operator_verification(sol.verification);
    return kExitOk;
  }

  void push_operator_verification(const OperatorVerification& v) {
    Json j;
    j["check"] = "operator";
    j["ok"] = v.ok;
    j["detail"] = v.summary;
    if (!v.ok) j["failure"] = v.failure;
    Json steps = Json::array();
    for (const auto& s : v.generation) {
      steps.push_back({{"level", s.level}, {"theta_free", s.theta_free}, {"symmetry", s.symmetry}});
    }
    j["generation"] = steps;
    j["probes"] = v.probes;
    doc_["verification"].push_back(j);
  }

  bool verify_density_file(const std::string& path) {
    std::optional<LatticePoly> rho, flux;
    for (const auto& kl : split_keyed_lines(read_input(path))) {
      auto value = evaluate_poly(*parse_expression(kl.value, kl.line, kl.value_column), symbols_, PolyMode::Laurent);
      if (kl.key == "rho") {
        rho = value;
      } else if (kl.key == "flux") {
        flux = value;
      } else if (kl.key != "flux_decomposition") {
        throw ParseError(kl.line, 1, "expected 'rho' or 'flux', got '" + kl.key + "'");
      }
    }
    if (!rho) throw ParseError(1, 1, "density file has no 'rho = ...' line");
    DensityCheck check = verify_density(sys_, *rho, flux);
    text_ << "verify density\n";
    text_ << "  rho = " << rho->render(symbols_) << "\n";
    text_ << "  flux = " << check.flux.render(symbols_) << (flux ? "" : " (derived)") << "\n";
    text_ << "  residual = " << check.residual.render(symbols_) << "\n";
    text_ << "  conserved: " << (check.conserved ? "yes" : "no") << "\n";
    Json j;
    j["check"] = "density";
    j["ok"] = check.conserved;
    j["subject"] = rho->render(symbols_);
    j["flux"] = check.flux.render(symbols_);
    j["residual"] = check.residual.render(symbols_);
    doc_["verification"].push_back(j);
    return check.conserved;
  }

  bool verify_symmetry_file(const std::string& path) {
    std::vector<LatticePoly> g(sys_.size());
    std::vector<bool> seen(sys_.size(), false);
    for (const auto& kl : split_keyed_lines(read_input(path))) {
      int idx = sys_.component_index(kl.key);
      if (idx < 0) throw ParseError(kl.line, 1, "unknown component '" + kl.key + "'");
      if (seen[static_cast<std::size_t>(idx)]) throw ParseError(kl.line, 1, "duplicate component '" + kl.key + "'");
      seen[static_cast<std::size_t>(idx)] = true;
      g[static_cast<std::size_t>(idx)] =
          evaluate_poly(*parse_expression(kl.value, kl.line, kl.value_column), symbols_, PolyMode::Laurent);
    }
    auto res = symmetry_residual(sys_, g);
    bool nonzero = std::any_of(g.begin(), g.end(), [](const LatticePoly& p) { return !p.is_zero(); });
    bool ok = nonzero && std::all_of(res.begin(), res.end(), [](const LatticePoly& p) { return p.is_zero(); });
    text_ << "verify symmetry\n";
    Json residual = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
      text_ << "  " << sys_.components[i] << " = " << g[i].render(symbols_) << "\n";
      residual.push_back(res[i].render(symbols_));
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      text_ << "  residual " << sys_.components[i] << ": " << res[i].render(symbols_) << "\n";
    }
    text_ << "  symmetry: " << (ok ? "yes" : "no") << "\n";
    Json j;
    j["check"] = "symmetry";
    j["ok"] = ok;
    Json comps = Json::array();
    for (const auto& p : g) comps.push_back(p.render(symbols_));
    j["subject"] = comps;
    j["residual"] = residual;
    doc_["verification"].push_back(j);
    return ok;
  }

  bool verify_operator_file(const std::string& path) {
    DiffOperator r = parse_operator(read_input(path), symbols_);
    std::vector<LatticePoly> g1 = sys_.rhs;
    std::string start = "F";
    if (weights_section()) {
      auto found = symmetries_at(rhs_ranks(sys_, *w_), false);
      if (!found.empty()) {
        g1 = found.front().components;
        start = "G(1)";
      }
    }
    OperatorVerification v = verify_operator(r, sys_, g1, 3);
    text_ << "verify operator (starting from " << start << ")\n";
    for (const auto& s : v.generation) {
      text_ << "  G(" << s.level << "): " << (s.theta_free ? "local" : "nonlocal") << ", "
            << (s.symmetry ? "symmetry" : "not a symmetry") << "\n";
    }
    for (std::size_t k = 0; k < v.probes.size(); ++k) {
      text_ << "  defining residual on G(" << k + 1 << "): " << (v.probes[k] ? "zero" : "nonzero") << "\n";
    }
    text_ << "  verdict: " << v.summary << "\n";
    push_operator_verification(v);
    return v.ok;
  }

  int cmd_verify() {
    if (opts_.density_file.empty() && opts_.symmetry_file.empty() && opts_.operator_file.empty()) {
      throw UsageError("verify needs --density, --symmetry or --operator");
    }
    bool ok = true;
    if (!opts_.density_file.empty()) ok = verify_density_file(opts_.density_file) && ok;
    if (!opts_.symmetry_file.empty()) ok = verify_symmetry_file(opts_.symmetry_file) && ok;
    if (!opts_.operator_file.empty()) ok = verify_operator_file(opts_.operator_file) && ok;
    return ok ? kExitOk : kExitVerificationFailed;
  }

  int cmd_verify_recursion() {
    if (opts_.operator_file.empty()) throw UsageError("verify-recursion needs --operator");
    return verify_operator_file(opts_.operator_file) ? kExitOk : kExitVerificationFailed;
  }
};

}  // namespace

RunOutput run(const RunOptions& options) { return Session(options).execute(); }

}  // namespace lik
