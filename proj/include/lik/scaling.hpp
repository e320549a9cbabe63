#pragma once

#include "lik/dde_system.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace lik {

// Dilation weight per component; the time derivative has weight 1.
struct WeightVector {
  std::vector<Rational> weights;

  const Rational& operator[](std::size_t i) const { return weights.at(i); }
  std::size_t size() const { return weights.size(); }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

// Weights form an affine family particular + span(directions).
struct Underdetermined {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> directions;
};

struct Inconsistent {
  std::string reason;
};

using WeightResult = std::variant<WeightVector, Underdetermined, Inconsistent>;

// Balances the weight of every right-hand-side monomial of equation i
// against w(u^(i)) + 1. `fixed` pins chosen components (component -> value)
// to resolve a family.
WeightResult compute_weights(const DdeSystem& sys, const std::map<std::size_t, Rational>& fixed = {});

// Throws std::runtime_error unless the result is a WeightVector.
WeightVector require_weights(const WeightResult& result, const DdeSystem& sys);

Rational rank_of(const LatticeMonomial& m, const WeightVector& w);
// Rank of a uniform expression; throws std::domain_error when not uniform.
Rational uniform_rank(const LatticePoly& p, const WeightVector& w);
bool is_uniform(const LatticePoly& p, const WeightVector& w);

// Zero-shift monomials with nonnegative exponents and 0 < rank <= max_rank,
// highest rank first.
std::vector<LatticeMonomial> monomials_upto_rank(const WeightVector& w, const Rational& max_rank);

// Monomials with nonnegative exponents in the given variables whose rank is
// exactly `rank` (the constant monomial when rank is 0), in CandidateOrder.
std::vector<LatticeMonomial> monomials_of_rank(const std::vector<VarRef>& pool, const WeightVector& w,
                                               const Rational& rank);

// Every monomial produced by differentiating each building block d times,
// d = (rank - rank(block)) a nonnegative integer; CandidateOrder.
std::vector<LatticeMonomial> derivative_completion_raw(const std::vector<LatticeMonomial>& blocks,
                                                       const WeightVector& w, const Rational& rank,
                                                       const DdeSystem& sys);

// The raw completion replaced by canonical representatives, deduplicated.
std::vector<LatticeMonomial> derivative_completion(const std::vector<LatticeMonomial>& blocks,
                                                   const WeightVector& w, const Rational& rank,
                                                   const DdeSystem& sys);

}  // namespace lik
