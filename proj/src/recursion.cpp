#include "lik/recursion.hpp"

#include "lik/conservation.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace lik {

RankMatrix rank_matrix(const SymmetryResult& ga, const SymmetryResult& gb) {
  if (ga.ranks.size() != gb.ranks.size()) throw std::invalid_argument("symmetries of different sizes");
  RankMatrix rm{ga.ranks.size(), {}};
  for (std::size_t i = 0; i < rm.n; ++i) {
    for (std::size_t j = 0; j < rm.n; ++j) rm.entries.push_back(gb.ranks[i] - ga.ranks[j]);
  }
  return rm;
}

DiffOperator OperatorCandidate::instantiate(const std::vector<ParamCoeff>& c) const {
  DiffOperator out(n);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    DiffOperator t = terms[k];
    t *= c.at(k);
    out += t;
  }
  return out;
}

void OperatorCandidate::append(const OperatorCandidate& other) {
  if (n == 0) n = other.n;
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
}

std::string OperatorCandidate::render(const SymbolTable& symbols) const {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::string line;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const OpEntry& e = terms[k].at(i, j);
        if (e.is_zero()) continue;
        std::string s = e.render(symbols);
        bool wrap = e.local().size() + e.nonlocal_terms().size() > 1 || s.starts_with("-");
        if (!line.empty()) line += " + ";
        line += "c" + std::to_string(k + 1) + "*" + (wrap ? "(" + s + ")" : s);
      }
      if (!line.empty()) out += "R[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] = " + line + "\n";
    }
  }
  return out;
}

namespace {

// Lowest and highest shift of one component within p.
std::optional<std::pair<int, int>> shift_window(const LatticePoly& p, int component) {
  std::optional<std::pair<int, int>> out;
  for (const VarRef& x : variables_of(p)) {
    if (x.component != component) continue;
    if (!out) {
      out = {x.shift, x.shift};
    } else {
      out->first = std::min(out->first, x.shift);
      out->second = std::max(out->second, x.shift);
    }
  }
  return out;
}

std::optional<std::pair<int, int>> shift_window(const LatticePoly& p) {
  std::optional<std::pair<int, int>> out;
  for (const VarRef& x : variables_of(p)) {
    if (!out) {
      out = {x.shift, x.shift};
    } else {
      out->first = std::min(out->first, x.shift);
      out->second = std::max(out->second, x.shift);
    }
  }
  return out;
}

// Variables of the right-hand sides, filled in to contiguous shift ranges
// per component.
std::vector<VarRef> cofactor_pool(const DdeSystem& sys) {
  std::vector<VarRef> pool;
  for (std::size_t c = 0; c < sys.size(); ++c) {
    std::optional<std::pair<int, int>> window;
    for (const auto& f : sys.rhs) {
      auto wnd = shift_window(f, static_cast<int>(c));
      if (!wnd) continue;
      if (!window) {
        window = wnd;
      } else {
        window->first = std::min(window->first, wnd->first);
        window->second = std::max(window->second, wnd->second);
      }
    }
    if (!window) continue;
    for (int s = window->first; s <= window->second; ++s) pool.push_back({static_cast<int>(c), s});
  }
  return pool;
}

std::optional<Rational> proportionality(const std::vector<LatticePoly>& g, const std::vector<LatticePoly>& f) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero() != f.at(i).is_zero()) return std::nullopt;
    if (g[i].is_zero()) continue;
    auto a = g[i].leading_term().second.as_rational();
    auto b = f[i].coefficient(g[i].leading_term().first).as_rational();
    if (!a || !b || *b == 0) return std::nullopt;
    if (!lambda) lambda = *a / *b;
  }
  if (!lambda) return std::nullopt;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != f[i] * ParamCoeff(*lambda)) return std::nullopt;
  }
  return lambda;
}

}  // namespace

OperatorCandidate build_R0(const DdeSystem& sys, const WeightVector& w, const RankMatrix& rm,
                           const SymmetryResult& ga, const SymmetryResult& gb) {
  std::size_t n = sys.size();
  OperatorCandidate out{n, {}};
  std::vector<VarRef> pool = cofactor_pool(sys);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LatticePoly& from = ga.components.at(j);
      const LatticePoly& to = gb.components.at(i);
      if (from.is_zero() || to.is_zero()) continue;
      int lo = INT_MIN, hi = INT_MAX;
      bool common = false;
      for (std::size_t c = 0; c < n; ++c) {
        auto a = shift_window(from, static_cast<int>(c));
        auto b = shift_window(to, static_cast<int>(c));
        if (!a || !b) continue;
        common = true;
        lo = std::max(lo, b->first - a->first);
        hi = std::min(hi, b->second - a->second);
      }
      if (!common) {
        auto a = shift_window(from);
        auto b = shift_window(to);
        if (!a || !b) continue;
        lo = b->first - a->first;
        hi = b->second - a->second;
      }
      if (lo > hi) continue;
      auto monomials = monomials_of_rank(pool, w, rm.at(i, j));
      for (int a = lo; a <= hi; ++a) {
        for (const auto& m : monomials) {
          DiffOperator term(n);
          term.at(i, j) = OpEntry::local_term(LatticePoly(m), a);
          out.terms.push_back(std::move(term));
        }
      }
    }
  }
  return out;
}

std::string DensityDescriptor::render(const SymbolTable& symbols) const {
  if (rho) return rho->render(symbols);
  return "ln(" + symbols.components.at(static_cast<std::size_t>(log_component)) + "[0])";
}

std::vector<OpEntry> covariant(const DensityDescriptor& rho, std::size_t components) {
  std::vector<OpEntry> row(components);
  if (!rho.rho) {
    if (rho.log_component < 0 || static_cast<std::size_t>(rho.log_component) >= components) {
      throw std::invalid_argument("unsupported density");
    }
    row[static_cast<std::size_t>(rho.log_component)] =
        OpEntry::multiplication(LatticePoly::variable(rho.log_component, 0, -1));
    return row;
  }
  for (const VarRef& x : variables_of(*rho.rho)) {
    row.at(static_cast<std::size_t>(x.component)).add_local(x.shift, partial(*rho.rho, x));
  }
  return row;
}

std::vector<DensityDescriptor> log_densities(const DdeSystem& sys) {
  std::vector<DensityDescriptor> out;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    VarRef self{static_cast<int>(i), 0};
    const LatticePoly& f = sys.rhs[i];
    if (f.is_zero()) continue;
    LatticePoly q;
    bool divisible = true;
    for (const auto& [m, c] : f.terms()) {
      if (m.exponent(self) < 1) {
        divisible = false;
        break;
      }
      q.add_term(m * LatticeMonomial::variable(self, -1), c);
    }
    if (divisible && is_trivial(q)) out.push_back(DensityDescriptor::logarithm(static_cast<int>(i)));
  }
  return out;
}

OperatorCandidate build_R1(const DdeSystem& sys, const WeightVector& w, const std::vector<SymmetryResult>& symmetries,
                           const std::vector<std::vector<OpEntry>>& covariants, const RankMatrix& rm) {
  std::size_t n = sys.size();
  OperatorCandidate out{n, {}};
  for (const SymmetryResult& s : symmetries) {
    std::vector<LatticePoly> g = proportionality(s.components, sys.rhs) ? sys.rhs : s.components;
    for (const auto& row : covariants) {
      bool admissible = true;
      bool any = false;
      for (std::size_t i = 0; i < n && admissible; ++i) {
        if (g[i].is_zero()) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (row.at(l).is_zero()) continue;
          auto r = entry_rank(row[l], w);
          if (!r || s.ranks[i] + *r != rm.at(i, l)) {
            admissible = false;
            break;
          }
          any = true;
        }
      }
      if (!admissible || !any) continue;
      DiffOperator term(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (g[i].is_zero()) continue;
        OpEntry left = OpEntry::sandwich(g[i], LatticePoly(1L));
        for (std::size_t l = 0; l < n; ++l) {
          if (!row[l].is_zero()) term.at(i, l) = op_compose(left, row[l]);
        }
      }
      out.terms.push_back(std::move(term));
    }
  }
  return out;
}

std::vector<ExtendedExpr> defining_residual(const DiffOperator& r, const DdeSystem& sys,
                                            const std::vector<LatticePoly>& g) {
  std::vector<ExtendedExpr> out = op_apply(op_frechet(r, sys), g);
  std::vector<ExtendedExpr> b = op_apply(r, frechet_apply(sys.rhs, g));
  std::vector<ExtendedExpr> c = frechet_apply(sys.rhs, op_apply(r, g));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + b[i] - c[i];
  return out;
}

OperatorVerification verify_operator(const DiffOperator& r, const DdeSystem& sys, const std::vector<LatticePoly>& g1,
                                     int steps) {
  OperatorVerification out;
  std::vector<std::vector<LatticePoly>> probes{g1};
  std::vector<LatticePoly> x = g1;
  for (int s = 1; s <= steps; ++s) {
    GenerationStep step;
    step.level = s + 1;
    step.value = op_apply(r, x);
    step.theta_free = std::all_of(step.value.begin(), step.value.end(),
                                  [](const ExtendedExpr& e) { return e.is_theta_free(); });
    std::vector<LatticePoly> next;
    if (step.theta_free) {
      for (const auto& e : step.value) next.push_back(e.local());
      bool nonzero = std::any_of(next.begin(), next.end(), [](const LatticePoly& p) { return !p.is_zero(); });
      auto res = symmetry_residual(sys, next);
      step.symmetry = nonzero && std::all_of(res.begin(), res.end(), [](const LatticePoly& p) { return p.is_zero(); });
    }
    out.generation.push_back(step);
    std::string label = "G(" + std::to_string(step.level) + ")";
    if (!step.theta_free) {
      out.failure = "generation: " + label + " has unresolved nonlocal terms";
      break;
    }
    if (!step.symmetry) {
      out.failure = "generation: " + label + " is not a symmetry";
      break;
    }
    if (s < steps) probes.push_back(next);
    x = std::move(next);
  }
  for (std::size_t k = 0; k < probes.size(); ++k) {
    auto res = defining_residual(r, sys, probes[k]);
    bool zero = std::all_of(res.begin(), res.end(), [](const ExtendedExpr& e) { return e.is_zero(); });
    out.probes.push_back(zero);
    if (!zero && out.failure.empty()) {
      out.failure = "defining-equation residual on G(" + std::to_string(k + 1) + ") is nonzero";
    }
  }
  out.ok = out.failure.empty();
  if (out.ok) {
    out.summary = "generates";
    for (const auto& step : out.generation) {
      out.summary += (step.level == 2 ? " G(" : ", G(") + std::to_string(step.level) + ")";
    }
    out.summary += ": verified";
  } else {
    out.summary = out.failure;
  }
  return out;
}

namespace {

// (component, Theta argument or constant for local terms, is_theta, monomial)
using RowKey = std::tuple<std::size_t, bool, LatticeMonomial, LatticeMonomial>;
using RowMap = std::map<RowKey, LinearSystem::Row>;

void add_rows(RowMap& rows, const std::vector<ExtendedExpr>& v, std::size_t column, const ParamCoeff& sign) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (const auto& [m, c] : v[i].local().terms()) rows[{i, false, LatticeMonomial(), m}][column] += c * sign;
    for (const auto& [arg, cof] : v[i].theta()) {
      for (const auto& [m, c] : cof.terms()) rows[{i, true, arg, m}][column] += c * sign;
    }
  }
}

void add_to_system(LinearSystem& sys, RowMap rows) {
  for (auto& [key, row] : rows) sys.add_equation(std::move(row));
}

bool has_scale(const SolveOutcome& outcome, std::size_t column) {
  return std::any_of(outcome.basis.begin(), outcome.basis.end(),
                     [&](const std::vector<ParamCoeff>& v) { return !v[column].is_zero(); });
}

}  // namespace

RecursionResult solve_recursion(const DdeSystem& sys, const WeightVector& w, const std::vector<SymmetryResult>& chain,
                                const std::vector<DensityDescriptor>& densities, int gap) {
  for (const auto& f : sys.rhs) {
    if (f.has_parameters()) return NoSolution{"parameters", "assign numeric values to all parameters first"};
  }
  if (gap < 1) return NoSolution{"symmetry chain", "gap must be positive"};
  std::size_t s = static_cast<std::size_t>(gap);
  if (chain.size() < s + 1) {
    return NoSolution{"symmetry chain", "need two symmetries " + std::to_string(gap) + " level(s) apart, found " +
                                            std::to_string(chain.size())};
  }

  RankMatrix rm = rank_matrix(chain[0], chain[s]);
  OperatorCandidate cand = build_R0(sys, w, rm, chain[0], chain[s]);
  std::vector<std::vector<OpEntry>> rows_cov;
  for (const auto& d : densities) rows_cov.push_back(covariant(d, sys.size()));
  cand.append(build_R1(sys, w, chain, rows_cov, rm));
  cand.n = sys.size();
  std::size_t k_count = cand.unknowns();
  if (k_count == 0) return NoSolution{"candidate", "no admissible operator terms"};

  std::size_t pairs = chain.size() - s;
  std::size_t total = k_count + pairs;
  RowMap generation;
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t k = 0; k < k_count; ++k) {
      add_rows(generation, op_apply(cand.terms[k], chain[p].components), k, ParamCoeff(1L));
    }
    std::vector<ExtendedExpr> target(chain[p + s].components.begin(), chain[p + s].components.end());
    add_rows(generation, target, k_count + p, ParamCoeff(-1L));
  }
  RowMap probes;
  for (const auto& g : chain) {
    for (std::size_t k = 0; k < k_count; ++k) {
      add_rows(probes, defining_residual(cand.terms[k], sys, g.components), k, ParamCoeff(1L));
    }
  }

  LinearSystem gen_only(total);
  add_to_system(gen_only, generation);
  if (!has_scale(nullspace(gen_only), k_count)) {
    return NoSolution{"generation", "no candidate operator maps G(1) onto a multiple of G(" +
                                        std::to_string(1 + gap) + ")"};
  }
  LinearSystem combined(total);
  add_to_system(combined, generation);
  add_to_system(combined, probes);
  SolveOutcome outcome = nullspace(combined);
  if (!has_scale(outcome, k_count)) {
    return NoSolution{"defining-equation residual",
                      "generation constraints are solvable but the defining identity forces the zero operator"};
  }
  if (outcome.basis.size() > 1) {
    return NoSolution{"underdetermined", std::to_string(outcome.basis.size()) +
                                             "-dimensional solution space; more symmetries are needed"};
  }
  std::vector<ParamCoeff> sol = normalize_vector(outcome.basis[0], k_count, Rational(1));
  std::vector<ParamCoeff> coefficients(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(k_count));

  RecursionSolution out;
  out.op = cand.instantiate(coefficients);
  out.candidate = std::move(cand);
  out.coefficients = std::move(coefficients);
  out.ranks = rm;
  out.verification = verify_operator(out.op, sys, chain[0].components, 3);
  if (!out.verification.ok) return NoSolution{"verification", out.verification.failure};
  return out;
}

}  // namespace lik
