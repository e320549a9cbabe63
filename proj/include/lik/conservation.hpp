#pragma once

#include "lik/linalg.hpp"
#include "lik/scaling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lik {

// sum_k c_k * blocks[k] with unknowns c1, c2, ... in block order.
struct DensityCandidate {
  Rational rank;
  std::vector<LatticeMonomial> blocks;

  std::size_t unknowns() const { return blocks.size(); }
  LatticePoly instantiate(const std::vector<ParamCoeff>& c) const;
  std::string render(const SymbolTable& symbols) const;
};

struct DensityResult {
  Rational rank;
  LatticePoly rho;
  // Satisfies Dt(rho) + delta(flux) = 0.
  LatticePoly flux;
  // Flux of the decomposition Dt(rho) = canonical + delta(J), i.e. -flux.
  LatticePoly flux_decomposition;
  std::vector<std::string> conditions;
  std::string normalization;
};

// Throws std::runtime_error("no candidate at this rank") when no building
// block has rank <= R.
DensityCandidate build_density_candidate(const DdeSystem& sys, const WeightVector& w, const Rational& rank);

// Outcome of one parameter branch.
struct DensityBranch {
  std::vector<std::string> conditions;
  std::vector<std::string> assumptions;  // factors assumed nonzero
  ParametricBranch::Status status = ParametricBranch::Status::Solved;
  std::vector<DensityResult> results;
};

std::vector<DensityBranch> solve_density_branches(const DensityCandidate& candidate, const DdeSystem& sys,
                                                  int max_depth = 6);

// Results of every solved branch.
std::vector<DensityResult> solve_density(const DensityCandidate& candidate, const DdeSystem& sys,
                                         int max_depth = 6);

bool is_trivial(const LatticePoly& rho);

// Nonzero k with rho1 + k*rho2 trivial, or nullopt.
std::optional<Rational> equivalent(const LatticePoly& rho1, const LatticePoly& rho2);

struct DensityCheck {
  bool conserved = false;
  // Dt(rho) + delta(flux); with no flux supplied, the non-exact part of Dt(rho).
  LatticePoly residual;
  LatticePoly flux;
};

// Recomputes the conservation law from scratch. Without a flux, one is
// derived from the decomposition of Dt(rho).
DensityCheck verify_density(const DdeSystem& sys, const LatticePoly& rho, const std::optional<LatticePoly>& flux);

}  // namespace lik
