#pragma once

#include "lik/param_coeff.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lik {

// Names used when rendering: dependent variables and scalar parameters.
struct SymbolTable {
  std::vector<std::string> components;
  std::vector<std::string> parameters;
};

// Dependent variable u^(component) at lattice site n + shift.
struct VarRef {
  int component = 0;
  int shift = 0;
  auto operator<=>(const VarRef&) const = default;
};

class LatticeMonomial {
 public:
  using Factor = std::pair<VarRef, int>;

  LatticeMonomial() = default;
  static LatticeMonomial variable(VarRef v, int exponent = 1);

  bool is_constant() const { return factors_.empty(); }
  // Sorted by VarRef; exponents nonzero (possibly negative).
  const std::vector<Factor>& factors() const { return factors_; }
  int exponent(VarRef v) const;
  int degree() const;
  bool has_negative_exponent() const;

  // Lowest/highest shift over all factors; both 0 for the constant.
  int min_shift() const;
  int max_shift() const;
  bool contains_component(int component) const;

  LatticeMonomial shifted(int r) const;
  LatticeMonomial pow(int k) const;
  friend LatticeMonomial operator*(const LatticeMonomial& a, const LatticeMonomial& b);

  friend bool operator==(const LatticeMonomial&, const LatticeMonomial&) = default;
  // Structural order (factor lists compared lexicographically).
  friend bool operator<(const LatticeMonomial& a, const LatticeMonomial& b) {
    return a.factors_ < b.factors_;
  }

  std::string render(const SymbolTable& symbols) const;

 private:
  std::vector<Factor> factors_;
};

// Rendering order: higher degree first, then factor lists compared by
// (component, shift) ascending with larger exponents first.
struct RenderOrder {
  bool operator()(const LatticeMonomial& a, const LatticeMonomial& b) const;
};

// Order used to number undetermined coefficients in candidates: compare the
// highest factor first (u before v, lower shift first), then its exponent
// (lower first), then the next highest factor. Reproduces the printed
// numbering of the candidate density, symmetry and recursion operator.
struct CandidateOrder {
  bool operator()(const LatticeMonomial& a, const LatticeMonomial& b) const;
};

// Laurent polynomial in shifted dependent variables with parameter-polynomial
// coefficients. Terms are kept in RenderOrder; no zero coefficients.
class LatticePoly {
 public:
  using TermMap = std::map<LatticeMonomial, ParamCoeff, RenderOrder>;

  LatticePoly() = default;
  LatticePoly(const ParamCoeff& constant);  // NOLINT(google-explicit-constructor)
  LatticePoly(long constant);               // NOLINT(google-explicit-constructor)
  LatticePoly(const LatticeMonomial& m, ParamCoeff coeff = ParamCoeff(1L));

  static LatticePoly variable(int component, int shift = 0, int exponent = 1);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  ParamCoeff coefficient(const LatticeMonomial& m) const;
  bool has_parameters() const;
  bool is_polynomial() const;  // no negative exponents

  // First term in rendering order; throws on zero.
  const std::pair<const LatticeMonomial, ParamCoeff>& leading_term() const;

  void add_term(const LatticeMonomial& m, const ParamCoeff& c);

  LatticePoly operator-() const;
  LatticePoly& operator+=(const LatticePoly& rhs);
  LatticePoly& operator-=(const LatticePoly& rhs);
  LatticePoly& operator*=(const ParamCoeff& rhs);
  friend LatticePoly operator+(LatticePoly a, const LatticePoly& b) { return a += b; }
  friend LatticePoly operator-(LatticePoly a, const LatticePoly& b) { return a -= b; }
  friend LatticePoly operator*(const LatticePoly& a, const LatticePoly& b);
  friend LatticePoly operator*(LatticePoly a, const ParamCoeff& c) { return a *= c; }
  friend LatticePoly operator*(const ParamCoeff& c, LatticePoly a) { return a *= c; }
  friend bool operator==(const LatticePoly& a, const LatticePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const LatticePoly& a, const LatticePoly& b);

  LatticePoly pow(unsigned k) const;
  LatticePoly substitute_parameter(std::size_t param, const ParamCoeff& value) const;

  std::string render(const SymbolTable& symbols) const;
  // True when the rendering is a single factor (safe to juxtapose with '*').
  bool is_single_factor() const;

 private:
  TermMap terms_;
};

// D^r p: every shift offset k becomes k + r.
LatticePoly shift(const LatticePoly& p, int r);
// Forward difference (D - I) p.
LatticePoly delta(const LatticePoly& p);
// Formal partial derivative with respect to one shifted variable.
LatticePoly partial(const LatticePoly& p, VarRef x);
// Every variable occurring in p.
std::vector<VarRef> variables_of(const LatticePoly& p);

// Unique shift of a nonconstant monomial whose lowest occurring component has
// its lowest shift at zero. Constants are returned unchanged.
LatticeMonomial canonical_rep(const LatticeMonomial& m);
// Shift r with canonical_rep(m) = m.shifted(r).
int canonical_shift(const LatticeMonomial& m);

// p = canonical + delta(flux), every monomial of canonical being canonical.
struct DeltaDecomposition {
  LatticePoly canonical;
  LatticePoly flux;
};
DeltaDecomposition delta_decompose(const LatticePoly& p);

struct NotExact {
  LatticePoly canonical;
  LatticePoly flux;
};
// q with delta(q) = p when p is exact; otherwise both decomposition parts.
std::variant<LatticePoly, NotExact> antidifference(const LatticePoly& p);

}  // namespace lik
