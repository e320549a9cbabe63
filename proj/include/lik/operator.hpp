#pragma once

#include "lik/dde_system.hpp"
#include "lik/scaling.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lik {

// Scalar expression extended by formal antidifferences: local part plus
// sum of cofactor * Theta(m), Theta(m) = (D - I)^{-1} m for canonical
// monomials m that are not summable.
class ExtendedExpr {
 public:
  using ThetaMap = std::map<LatticeMonomial, LatticePoly, RenderOrder>;

  ExtendedExpr() = default;
  ExtendedExpr(LatticePoly local);  // NOLINT(google-explicit-constructor)

  const LatticePoly& local() const { return local_; }
  const ThetaMap& theta() const { return theta_; }
  bool is_theta_free() const { return theta_.empty(); }
  bool is_zero() const { return local_.is_zero() && theta_.empty(); }

  // Adds cofactor * Theta(argument); the argument must be canonical.
  void add_theta(const LatticeMonomial& argument, const LatticePoly& cofactor);

  ExtendedExpr& operator+=(const ExtendedExpr& rhs);
  ExtendedExpr& operator-=(const ExtendedExpr& rhs);
  ExtendedExpr& operator*=(const LatticePoly& f);
  ExtendedExpr& operator*=(const ParamCoeff& c);
  friend ExtendedExpr operator+(ExtendedExpr a, const ExtendedExpr& b) { return a += b; }
  friend ExtendedExpr operator-(ExtendedExpr a, const ExtendedExpr& b) { return a -= b; }
  friend ExtendedExpr operator*(ExtendedExpr a, const LatticePoly& f) { return a *= f; }
  friend bool operator==(const ExtendedExpr& a, const ExtendedExpr& b) {
    return a.local_ == b.local_ && a.theta_ == b.theta_;
  }

  std::string render(const SymbolTable& symbols) const;

 private:
  LatticePoly local_;
  ThetaMap theta_;
};

// D^r X, using D Theta(m) = Theta(m) + m and D^{-1} Theta(m) = Theta(m) - D^{-1} m.
ExtendedExpr shift(const ExtendedExpr& x, int r);

// The antidifference (D - I)^{-1} y: summable parts resolve, the rest stays
// formal.
ExtendedExpr sum_operator(const LatticePoly& y);

// One entry of a difference-operator matrix in normal form:
//   sum_a A_a D^a  +  sum B (D - I)^{-1} C.
// The nonlocal part is stored as a bilinear tensor over monomial pairs so
// that equal operators have equal representations.
class OpEntry {
 public:
  struct MonomialPairOrder {
    bool operator()(const std::pair<LatticeMonomial, LatticeMonomial>& a,
                    const std::pair<LatticeMonomial, LatticeMonomial>& b) const;
  };
  using LocalMap = std::map<int, LatticePoly>;
  using NonlocalMap = std::map<std::pair<LatticeMonomial, LatticeMonomial>, ParamCoeff, MonomialPairOrder>;

  // B (D - I)^{-1} C with C scaled to a unit leading coefficient.
  struct NonlocalTerm {
    LatticePoly left;
    LatticePoly right;
  };

  OpEntry() = default;
  static OpEntry identity();
  static OpEntry shift_power(int a);
  static OpEntry multiplication(const LatticePoly& f);
  static OpEntry local_term(const LatticePoly& cofactor, int a);
  static OpEntry inverse_difference();
  static OpEntry sandwich(const LatticePoly& left, const LatticePoly& right);

  const LocalMap& local() const { return local_; }
  const NonlocalMap& nonlocal() const { return nonlocal_; }
  std::vector<NonlocalTerm> nonlocal_terms() const;
  bool is_zero() const { return local_.empty() && nonlocal_.empty(); }
  bool is_local() const { return nonlocal_.empty(); }

  void add_local(int a, const LatticePoly& cofactor);
  void add_nonlocal(const LatticePoly& left, const LatticePoly& right);

  OpEntry& operator+=(const OpEntry& rhs);
  OpEntry& operator-=(const OpEntry& rhs);
  OpEntry& operator*=(const ParamCoeff& c);
  friend OpEntry operator+(OpEntry a, const OpEntry& b) { return a += b; }
  friend OpEntry operator-(OpEntry a, const OpEntry& b) { return a -= b; }
  friend bool operator==(const OpEntry& a, const OpEntry& b) {
    return a.local_ == b.local_ && a.nonlocal_ == b.nonlocal_;
  }

  std::string render(const SymbolTable& symbols) const;

 private:
  LocalMap local_;
  NonlocalMap nonlocal_;
};

// Normal form of a∘b. Composing two nonlocal terms is not representable and
// throws std::domain_error.
OpEntry op_compose(const OpEntry& a, const OpEntry& b);

// (D - I)^{-1} is fixed only up to constants: Theta(1) is not shift
// invariant, so a nonlocal term B S C may give results that differ by a
// constant multiple of B depending on how the argument was formed.
ExtendedExpr apply(const OpEntry& op, const LatticePoly& g);
// Nonlocal terms require a Theta-free argument (std::domain_error otherwise).
ExtendedExpr apply(const OpEntry& op, const ExtendedExpr& g);

// N x N matrix of entries, row major.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::size_t n) : n_(n), entries_(n * n) {}
  static DiffOperator identity(std::size_t n);

  std::size_t size() const { return n_; }
  OpEntry& at(std::size_t i, std::size_t j) { return entries_.at(i * n_ + j); }
  const OpEntry& at(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  bool is_zero() const;

  DiffOperator& operator+=(const DiffOperator& rhs);
  DiffOperator& operator*=(const ParamCoeff& c);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

  // Lines "R[i,j] = entry" (1-based), zero entries omitted.
  std::string render(const SymbolTable& symbols) const;

 private:
  std::size_t n_ = 0;
  std::vector<OpEntry> entries_;
};

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b);

std::vector<ExtendedExpr> op_apply(const DiffOperator& op, const std::vector<LatticePoly>& g);
std::vector<ExtendedExpr> op_apply(const DiffOperator& op, const std::vector<ExtendedExpr>& g);

// Differentiates every cofactor (left and right) along the flow of the
// system, keeping the operator skeleton.
DiffOperator op_frechet(const DiffOperator& op, const DdeSystem& sys);

// Frechet derivative operator of the right-hand sides:
// entry (i, j) = sum_k dF_i/du^(j)_{n+k} D^k.
DiffOperator frechet_operator(const std::vector<LatticePoly>& f, std::size_t components);

// F'[G] computed term by term; also accepts extended arguments.
std::vector<LatticePoly> frechet_apply(const std::vector<LatticePoly>& f, const std::vector<LatticePoly>& g);
std::vector<ExtendedExpr> frechet_apply(const std::vector<LatticePoly>& f, const std::vector<ExtendedExpr>& g);

// Rank of every term of an entry (cofactor ranks, shifts are weightless);
// nullopt when the entry is zero or mixes ranks.
std::optional<Rational> entry_rank(const OpEntry& e, const WeightVector& w);

// Operator grammar: products compose left to right; D, I and S denote the
// up-shift, the identity and (D - I)^{-1}; functions act by multiplication.
OpEntry parse_op_entry(std::string_view text, const SymbolTable& symbols, int line = 1, int column_offset = 0);
// Lines "R[i,j] = entry" with 1-based indices; missing entries are zero.
DiffOperator parse_operator(std::string_view text, const SymbolTable& symbols);

}  // namespace lik
