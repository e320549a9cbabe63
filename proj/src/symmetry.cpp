#include "lik/symmetry.hpp"

#include <map>
#include <stdexcept>

namespace lik {

std::size_t SymmetryCandidate::unknowns() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::vector<LatticePoly> SymmetryCandidate::instantiate(const std::vector<ParamCoeff>& c) const {
  std::vector<LatticePoly> out(blocks.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (const auto& m : blocks[i]) out[i].add_term(m, c.at(k++));
  }
  return out;
}

std::vector<std::string> SymmetryCandidate::render(const SymbolTable& symbols) const {
  std::vector<std::string> out;
  std::size_t k = 0;
  for (const auto& comp : blocks) {
    std::string s;
    for (const auto& m : comp) {
      if (!s.empty()) s += " + ";
      s += "c" + std::to_string(++k);
      if (!m.is_constant()) s += "*" + m.render(symbols);
    }
    out.push_back(s.empty() ? "0" : s);
  }
  return out;
}

SymmetryCandidate build_symmetry_candidate(const DdeSystem& sys, const WeightVector& w,
                                           const std::vector<Rational>& ranks) {
  if (ranks.size() != sys.size()) throw std::invalid_argument("one rank per component required");
  SymmetryCandidate out{ranks, {}};
  for (const Rational& r : ranks) {
    std::vector<LatticeMonomial> blocks;
    if (r > 0) blocks = derivative_completion_raw(monomials_upto_rank(w, r), w, r, sys);
    out.blocks.push_back(std::move(blocks));
  }
  if (out.unknowns() == 0) throw std::runtime_error("no candidate at these ranks");
  return out;
}

std::vector<LatticePoly> symmetry_residual(const DdeSystem& sys, const std::vector<LatticePoly>& g) {
  std::vector<LatticePoly> dt = total_time_derivative(g, sys);
  std::vector<LatticePoly> fg = frechet_apply(sys.rhs, g);
  for (std::size_t i = 0; i < dt.size(); ++i) dt[i] -= fg[i];
  return dt;
}

std::vector<SymmetryBranch> solve_symmetry_branches(const SymmetryCandidate& candidate, const DdeSystem& sys,
                                                    std::optional<std::size_t> normalize_unknown, int max_depth) {
  std::size_t count = candidate.unknowns();
  std::size_t n = sys.size();
  // Residual of each unit candidate, keyed by (component, monomial).
  std::vector<std::map<LatticeMonomial, LinearSystem::Row, RenderOrder>> rows(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : candidate.blocks[i]) {
      std::vector<LatticePoly> unit(n);
      unit[i] = LatticePoly(m);
      auto res = symmetry_residual(sys, unit);
      for (std::size_t comp = 0; comp < n; ++comp) {
        for (const auto& [mono, c] : res[comp].terms()) rows[comp][mono][k] += c;
      }
      ++k;
    }
  }
  LinearSystem system(count);
  for (auto& comp : rows) {
    for (auto& [mono, row] : comp) system.add_equation(std::move(row));
  }

  std::vector<SymmetryBranch> out;
  for (const ParametricBranch& branch : parametric_solve(system, sys.parameters.size(), max_depth)) {
    SymmetryBranch sb;
    sb.conditions = branch.render_conditions(sys.parameters);
    sb.assumptions = branch.render_assumptions(sys.parameters);
    sb.status = branch.status;
    if (branch.has_candidate()) {
      for (const auto& vec : branch.outcome.basis) {
        std::optional<std::size_t> index;
        if (normalize_unknown && *normalize_unknown < vec.size()) {
          auto r = vec[*normalize_unknown].as_rational();
          if (r && *r != 0) index = normalize_unknown;
        }
        if (!index) index = last_rational_entry(vec);
        std::vector<ParamCoeff> scaled = index ? normalize_vector(vec, *index, Rational(1)) : vec;
        SymmetryResult result{candidate.ranks, candidate.instantiate(scaled), sb.conditions, scaled};
        bool nonzero = false;
        for (const auto& g : result.components) nonzero = nonzero || !g.is_zero();
        if (nonzero) sb.results.push_back(std::move(result));
      }
    }
    out.push_back(std::move(sb));
  }
  return out;
}

std::vector<SymmetryResult> solve_symmetry(const SymmetryCandidate& candidate, const DdeSystem& sys,
                                           std::optional<std::size_t> normalize_unknown, int max_depth) {
  std::vector<SymmetryResult> out;
  for (auto& branch : solve_symmetry_branches(candidate, sys, normalize_unknown, max_depth)) {
    for (auto& r : branch.results) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Rational> rhs_ranks(const DdeSystem& sys, const WeightVector& w) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < sys.size(); ++i) out.push_back(w[i] + 1);
  return out;
}

}  // namespace lik
