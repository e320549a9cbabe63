#pragma once

#include "lik/linalg.hpp"
#include "lik/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lik {

// Per component i, sum_k c_k * blocks[i][k]; unknowns numbered through all
// components in order.
struct SymmetryCandidate {
  std::vector<Rational> ranks;
  std::vector<std::vector<LatticeMonomial>> blocks;

  std::size_t unknowns() const;
  std::vector<LatticePoly> instantiate(const std::vector<ParamCoeff>& c) const;
  std::vector<std::string> render(const SymbolTable& symbols) const;
};

struct SymmetryResult {
  std::vector<Rational> ranks;
  std::vector<LatticePoly> components;
  std::vector<std::string> conditions;
  // Unknown values after normalization (same numbering as the candidate).
  std::vector<ParamCoeff> coefficients;
};

// Outcome of one parameter branch.
struct SymmetryBranch {
  std::vector<std::string> conditions;
  std::vector<std::string> assumptions;  // factors assumed nonzero
  ParametricBranch::Status status = ParametricBranch::Status::Solved;
  std::vector<SymmetryResult> results;
};

// Blocks keep every shifted representative of the derivative completion.
SymmetryCandidate build_symmetry_candidate(const DdeSystem& sys, const WeightVector& w,
                                           const std::vector<Rational>& ranks);

// Dt(G) - F'[G] on solutions.
std::vector<LatticePoly> symmetry_residual(const DdeSystem& sys, const std::vector<LatticePoly>& g);

// Solutions are scaled so that unknown `normalize_unknown` (0-based) is 1
// when it is a nonzero rational, else the last rational nonzero unknown.
std::vector<SymmetryBranch> solve_symmetry_branches(const SymmetryCandidate& candidate, const DdeSystem& sys,
                                                    std::optional<std::size_t> normalize_unknown = std::nullopt,
                                                    int max_depth = 6);

std::vector<SymmetryResult> solve_symmetry(const SymmetryCandidate& candidate, const DdeSystem& sys,
                                           std::optional<std::size_t> normalize_unknown = std::nullopt,
                                           int max_depth = 6);

// Rank of each component of F: the starting level of symmetry searches.
std::vector<Rational> rhs_ranks(const DdeSystem& sys, const WeightVector& w);

}  // namespace lik
