#include "lik/conservation.hpp"

#include "lik/linalg.hpp"

#include <stdexcept>

namespace lik {

LatticePoly DensityCandidate::instantiate(const std::vector<ParamCoeff>& c) const {
  LatticePoly out;
  for (std::size_t k = 0; k < blocks.size(); ++k) out.add_term(blocks[k], c.at(k));
  return out;
}

std::string DensityCandidate::render(const SymbolTable& symbols) const {
  std::string out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k) out += " + ";
    out += "c" + std::to_string(k + 1);
    if (!blocks[k].is_constant()) out += "*" + blocks[k].render(symbols);
  }
  return out;
}

DensityCandidate build_density_candidate(const DdeSystem& sys, const WeightVector& w, const Rational& rank) {
  auto blocks = monomials_upto_rank(w, rank);
  if (blocks.empty()) throw std::runtime_error("no candidate at this rank");
  DensityCandidate out{rank, derivative_completion(blocks, w, rank, sys)};
  if (out.blocks.empty()) throw std::runtime_error("no candidate at this rank");
  return out;
}

namespace {

LatticePoly apply_substitutions(LatticePoly p, const ParametricBranch& branch) {
  for (const auto& [param, value] : branch.substitutions) p = p.substitute_parameter(param, value);
  return p;
}

// Pure power of the first component's unshifted variable, if present.
std::optional<LatticeMonomial> pure_power(const LatticePoly& rho) {
  for (const auto& [m, c] : rho.terms()) {
    if (m.factors().size() == 1 && m.factors()[0].first == VarRef{0, 0} && m.factors()[0].second > 0) return m;
  }
  return std::nullopt;
}

// Returns the note and the factor applied to rho.
std::pair<std::string, Rational> normalize_density(const LatticePoly& rho, const Rational& rank,
                                                   const SymbolTable& symbols) {
  if (auto m = pure_power(rho)) {
    if (auto c = rho.coefficient(*m).as_rational()) {
      return {"coefficient of " + m->render(symbols) + " set to " + to_string(Rational(1 / rank)), 1 / (rank * *c)};
    }
  }
  if (auto c = rho.leading_term().second.as_rational()) return {"leading coefficient set to 1", 1 / *c};
  return {"not normalized", Rational(1)};
}

}  // namespace

std::vector<DensityBranch> solve_density_branches(const DensityCandidate& candidate, const DdeSystem& sys,
                                                  int max_depth) {
  std::size_t k_count = candidate.unknowns();
  std::vector<DeltaDecomposition> parts;
  parts.reserve(k_count);
  for (const auto& block : candidate.blocks) parts.push_back(delta_decompose(total_time_derivative(LatticePoly(block), sys)));

  std::map<LatticeMonomial, LinearSystem::Row, RenderOrder> rows;
  for (std::size_t k = 0; k < k_count; ++k) {
    for (const auto& [m, c] : parts[k].canonical.terms()) rows[m][k] += c;
  }
  LinearSystem system(k_count);
  for (auto& [m, row] : rows) system.add_equation(std::move(row));

  SymbolTable symbols = sys.symbols();
  std::vector<DensityBranch> out;
  for (const ParametricBranch& branch : parametric_solve(system, sys.parameters.size(), max_depth)) {
    DensityBranch db;
    db.conditions = branch.render_conditions(sys.parameters);
    db.assumptions = branch.render_assumptions(sys.parameters);
    db.status = branch.status;
    if (!branch.has_candidate()) {
      out.push_back(std::move(db));
      continue;
    }
    for (const auto& vec : branch.outcome.basis) {
      LatticePoly rho = candidate.instantiate(vec);
      if (rho.is_zero()) continue;
      LatticePoly decomposition_flux;
      for (std::size_t k = 0; k < k_count; ++k) {
        decomposition_flux += apply_substitutions(parts[k].flux, branch) * vec[k];
      }
      DensityResult result;
      result.rank = candidate.rank;
      auto [note, scale] = normalize_density(rho, candidate.rank, symbols);
      result.normalization = note;
      result.rho = rho * ParamCoeff(scale);
      result.flux_decomposition = decomposition_flux * ParamCoeff(scale);
      result.flux = -result.flux_decomposition;
      result.conditions = db.conditions;

      bool duplicate = false;
      for (const auto& prev : db.results) {
        if (equivalent(prev.rho, result.rho)) duplicate = true;
      }
      if (!duplicate) db.results.push_back(std::move(result));
    }
    out.push_back(std::move(db));
  }
  return out;
}

std::vector<DensityResult> solve_density(const DensityCandidate& candidate, const DdeSystem& sys, int max_depth) {
  std::vector<DensityResult> out;
  for (auto& branch : solve_density_branches(candidate, sys, max_depth)) {
    for (auto& r : branch.results) out.push_back(std::move(r));
  }
  return out;
}

bool is_trivial(const LatticePoly& rho) { return delta_decompose(rho).canonical.is_zero(); }

std::optional<Rational> equivalent(const LatticePoly& rho1, const LatticePoly& rho2) {
  LatticePoly c1 = delta_decompose(rho1).canonical;
  LatticePoly c2 = delta_decompose(rho2).canonical;
  if (c1.is_zero() && c2.is_zero()) return Rational(1);
  if (c1.is_zero() || c2.is_zero()) return std::nullopt;
  const auto& [m, b] = c2.leading_term();
  auto a = c1.coefficient(m).as_rational();
  auto bb = b.as_rational();
  if (!a || !bb || *a == 0) return std::nullopt;
  Rational k = -*a / *bb;
  if (!(c1 + c2 * ParamCoeff(k)).is_zero()) return std::nullopt;
  return k;
}

DensityCheck verify_density(const DdeSystem& sys, const LatticePoly& rho, const std::optional<LatticePoly>& flux) {
  DensityCheck check;
  LatticePoly dt = total_time_derivative(rho, sys);
  if (flux) {
    check.flux = *flux;
    check.residual = dt + delta(*flux);
  } else {
    DeltaDecomposition dec = delta_decompose(dt);
    check.flux = -dec.flux;
    check.residual = dec.canonical;
  }
  check.conserved = check.residual.is_zero() && !rho.is_zero();
  return check;
}

}  // namespace lik
