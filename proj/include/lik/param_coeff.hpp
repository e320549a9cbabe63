#pragma once

#include "lik/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lik {

// Exact polynomial in the declared scalar parameters with rational
// coefficients. With no parameters declared it is just a rational number.
//
// Parameter monomials are exponent vectors indexed by parameter number with
// trailing zeros trimmed, so the constant monomial is the empty vector.
class ParamCoeff {
 public:
  using Exponents = std::vector<int>;
  using Term = std::pair<Exponents, Rational>;

  ParamCoeff() = default;
  ParamCoeff(const Rational& value);  // NOLINT(google-explicit-constructor)
  ParamCoeff(long value);             // NOLINT(google-explicit-constructor)

  static ParamCoeff parameter(std::size_t index);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value of a constant coefficient; nullopt when parameters occur.
  std::optional<Rational> as_rational() const;
  int total_degree() const;
  // Degree in one parameter.
  int degree_in(std::size_t param) const;
  // Highest parameter index occurring plus one.
  std::size_t parameter_span() const;

  // Terms in descending graded order (highest total degree first).
  const std::vector<Term>& terms() const { return terms_; }

  ParamCoeff operator-() const;
  ParamCoeff& operator+=(const ParamCoeff& rhs);
  ParamCoeff& operator-=(const ParamCoeff& rhs);
  ParamCoeff& operator*=(const ParamCoeff& rhs);
  ParamCoeff& operator*=(const Rational& rhs);
  friend ParamCoeff operator+(ParamCoeff a, const ParamCoeff& b) { return a += b; }
  friend ParamCoeff operator-(ParamCoeff a, const ParamCoeff& b) { return a -= b; }
  friend ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b);
  friend bool operator==(const ParamCoeff& a, const ParamCoeff& b) { return a.terms_ == b.terms_; }
  // Total order used for keys and deterministic output.
  friend bool operator<(const ParamCoeff& a, const ParamCoeff& b);

  ParamCoeff pow(unsigned exponent) const;
  ParamCoeff substitute(std::size_t param, const ParamCoeff& value) const;
  Rational evaluate(std::span<const Rational> values) const;

  // Exact quotient, or nullopt when divisor does not divide this.
  std::optional<ParamCoeff> divide_exact(const ParamCoeff& divisor) const;

  // Rational c and primitive q with *this = c * q (q has integer
  // coefficients with gcd 1 and a positive leading coefficient).
  std::pair<Rational, ParamCoeff> primitive_part() const;

  // Coefficient of the leading (first rendered) term.
  const Rational& leading_coefficient() const;

  std::string render(const std::vector<std::string>& names) const;
  // True when rendering needs parentheses as a product factor.
  bool needs_parens() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  void normalize();
  std::vector<Term> terms_;
};

// Distinct non-unit factors of a parameter polynomial, each primitive.
// Rational content and pure parameter monomials are dropped (parameters are
// assumed nonzero). Linear factors p - r with rational r are split off;
// whatever remains is returned as one factor.
std::vector<ParamCoeff> factor_parameter_poly(const ParamCoeff& poly);

}  // namespace lik
