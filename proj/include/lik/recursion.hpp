#pragma once

#include "lik/symmetry.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lik {

// rank R_ij = rank G_i(k+s) - rank G_j(k).
struct RankMatrix {
  std::size_t n = 0;
  std::vector<Rational> entries;

  const Rational& at(std::size_t i, std::size_t j) const { return entries.at(i * n + j); }
  friend bool operator==(const RankMatrix&, const RankMatrix&) = default;
};

RankMatrix rank_matrix(const SymmetryResult& ga, const SymmetryResult& gb);

// sum_k c_k * terms[k]; unknowns numbered in term order.
struct OperatorCandidate {
  std::size_t n = 0;
  std::vector<DiffOperator> terms;

  std::size_t unknowns() const { return terms.size(); }
  DiffOperator instantiate(const std::vector<ParamCoeff>& c) const;
  void append(const OperatorCandidate& other);
  // "R[i,j] = c1*u[0]*I + ..." lines for nonzero entries.
  std::string render(const SymbolTable& symbols) const;
};

// Local part: per entry, shift powers from the growth of the shift window
// between the two symmetries, cofactors of the entry's rank built from the
// variables of the right-hand sides.
OperatorCandidate build_R0(const DdeSystem& sys, const WeightVector& w, const RankMatrix& rm,
                           const SymmetryResult& ga, const SymmetryResult& gb);

// Conserved density given either polynomially or as ln of a component.
struct DensityDescriptor {
  std::optional<LatticePoly> rho;
  int log_component = -1;

  static DensityDescriptor polynomial(LatticePoly p) { return {std::move(p), -1}; }
  static DensityDescriptor logarithm(int component) { return {std::nullopt, component}; }
  std::string render(const SymbolTable& symbols) const;
};

// Row of Frechet-derivative entries sum_k d rho/d u^(j)_{n+k} D^k.
std::vector<OpEntry> covariant(const DensityDescriptor& rho, std::size_t components);

// Components i whose ln(u^(i)) is conserved: F_i / u^(i)_n polynomial and
// a total difference.
std::vector<DensityDescriptor> log_densities(const DdeSystem& sys);

// Nonlocal part: G (D - I)^{-1} (x) rho' for each pair whose entry ranks
// match the rank matrix exactly. A symmetry proportional to F enters as F.
OperatorCandidate build_R1(const DdeSystem& sys, const WeightVector& w, const std::vector<SymmetryResult>& symmetries,
                           const std::vector<std::vector<OpEntry>>& covariants, const RankMatrix& rm);

// R'[F] G + R(F'[G]) - F'[R G]: the defining identity applied to G.
std::vector<ExtendedExpr> defining_residual(const DiffOperator& r, const DdeSystem& sys,
                                            const std::vector<LatticePoly>& g);

struct GenerationStep {
  int level = 0;  // index of the generated symmetry
  bool theta_free = false;
  bool symmetry = false;
  std::vector<ExtendedExpr> value;
};

struct OperatorVerification {
  bool ok = false;
  std::vector<GenerationStep> generation;
  std::vector<bool> probes;  // defining residual zero on G(1), G(2), ...
  std::string failure;       // named failing family, empty when ok
  std::string summary;
};

// Applies r repeatedly starting from g1 (`steps` times) and checks every
// image is local and a symmetry; evaluates the defining residual on g1 and
// each generated symmetry except the last.
OperatorVerification verify_operator(const DiffOperator& r, const DdeSystem& sys, const std::vector<LatticePoly>& g1,
                                     int steps = 3);

struct RecursionSolution {
  DiffOperator op;
  OperatorCandidate candidate;
  std::vector<ParamCoeff> coefficients;
  RankMatrix ranks;
  OperatorVerification verification;
};

struct NoSolution {
  std::string family;
  std::string detail;
};

using RecursionResult = std::variant<RecursionSolution, NoSolution>;

// `chain` holds consecutive symmetries G(1), G(2), ...; pairs (G(k), G(k+gap))
// and defining residuals on every member constrain the candidate.
RecursionResult solve_recursion(const DdeSystem& sys, const WeightVector& w, const std::vector<SymmetryResult>& chain,
                                const std::vector<DensityDescriptor>& densities, int gap = 1);

}  // namespace lik
