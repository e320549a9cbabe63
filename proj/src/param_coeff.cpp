#include "lik/param_coeff.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace lik {
namespace {

int exponent_at(const ParamCoeff::Exponents& e, std::size_t i) {
  return i < e.size() ? e[i] : 0;
}

int degree_of(const ParamCoeff::Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

void trim(ParamCoeff::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

// Graded, then lexicographic with the first parameter most significant;
// "greater" monomials come first.
struct DescendingOrder {
  bool operator()(const ParamCoeff::Exponents& a, const ParamCoeff::Exponents& b) const {
    int da = degree_of(a), db = degree_of(b);
    if (da != db) return da > db;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      int x = exponent_at(a, i), y = exponent_at(b, i);
      if (x != y) return x > y;
    }
    return false;
  }
};

// Pure lexicographic (for exact division).
bool lex_greater(const ParamCoeff::Exponents& a, const ParamCoeff::Exponents& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int x = exponent_at(a, i), y = exponent_at(b, i);
    if (x != y) return x > y;
  }
  return false;
}

ParamCoeff::Exponents multiply(const ParamCoeff::Exponents& a, const ParamCoeff::Exponents& b) {
  ParamCoeff::Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = exponent_at(a, i) + exponent_at(b, i);
  trim(r);
  return r;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  std::vector<mpz_class> out;
  if (a == 0 || a > mpz_class("10000000000")) return out;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

// Rational roots of a univariate polynomial given by coefficients in
// ascending degree.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == 0) ++low;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(low));
  if (coeffs.size() < 2) return {};
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs) lcm_den = lcm(lcm_den, c.get_den());
  std::vector<mpz_class> ints;
  for (const auto& c : coeffs) ints.push_back(mpz_class(c * lcm_den));
  std::vector<Rational> roots;
  for (const auto& p : divisors(ints.front())) {
    for (const auto& q : divisors(ints.back())) {
      for (int sign : {1, -1}) {
        Rational r(p * sign, q);
        r.canonicalize();
        Rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
        if (acc == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

ParamCoeff::ParamCoeff(const Rational& value) {
  if (value != 0) terms_.emplace_back(Exponents{}, value);
}

ParamCoeff::ParamCoeff(long value) : ParamCoeff(Rational(value)) {}

ParamCoeff ParamCoeff::parameter(std::size_t index) {
  ParamCoeff p;
  Exponents e(index + 1, 0);
  e[index] = 1;
  p.terms_.emplace_back(std::move(e), Rational(1));
  return p;
}

bool ParamCoeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

std::optional<Rational> ParamCoeff::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (is_constant()) return terms_[0].second;
  return std::nullopt;
}

int ParamCoeff::total_degree() const {
  return terms_.empty() ? -1 : degree_of(terms_.front().first);
}

int ParamCoeff::degree_in(std::size_t param) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_at(e, param));
  return d;
}

std::size_t ParamCoeff::parameter_span() const {
  std::size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return n;
}

void ParamCoeff::normalize() {
  std::map<Exponents, Rational, DescendingOrder> acc;
  for (auto& [e, c] : terms_) {
    trim(e);
    acc[e] += c;
  }
  terms_.clear();
  for (auto& [e, c] : acc) {
    if (c != 0) terms_.emplace_back(e, c);
  }
}

void ParamCoeff::add_term(const Exponents& e, const Rational& c) {
  DescendingOrder less;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [&](const Term& t, const Exponents& key) { return less(t.first, key); });
  if (it != terms_.end() && !less(e, it->first)) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else if (c != 0) {
    terms_.insert(it, Term(e, c));
  }
}

ParamCoeff ParamCoeff::operator-() const {
  ParamCoeff r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

ParamCoeff& ParamCoeff::operator+=(const ParamCoeff& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) return *this = rhs;
  if (is_constant() && rhs.is_constant()) {
    terms_[0].second += rhs.terms_[0].second;
    if (terms_[0].second == 0) terms_.clear();
    return *this;
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

ParamCoeff& ParamCoeff::operator-=(const ParamCoeff& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (is_constant() && rhs.is_constant() && !terms_.empty()) {
    terms_[0].second -= rhs.terms_[0].second;
    if (terms_[0].second == 0) terms_.clear();
    return *this;
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b) {
  ParamCoeff r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.is_constant() && b.is_constant()) {
    r.terms_.emplace_back(ParamCoeff::Exponents{}, a.terms_[0].second * b.terms_[0].second);
    return r;
  }
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.terms_.emplace_back(multiply(ea, eb), ca * cb);
  }
  r.normalize();
  return r;
}

ParamCoeff& ParamCoeff::operator*=(const ParamCoeff& rhs) { return *this = *this * rhs; }

ParamCoeff& ParamCoeff::operator*=(const Rational& rhs) {
  if (rhs == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= rhs;
  }
  return *this;
}

bool operator<(const ParamCoeff& a, const ParamCoeff& b) {
  DescendingOrder order;
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [ea, ca] = a.terms_[i];
    const auto& [eb, cb] = b.terms_[i];
    if (order(ea, eb)) return true;
    if (order(eb, ea)) return false;
    if (ca != cb) return ca < cb;
  }
  return a.terms_.size() < b.terms_.size();
}

ParamCoeff ParamCoeff::pow(unsigned exponent) const {
  ParamCoeff result(1L);
  ParamCoeff base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

ParamCoeff ParamCoeff::substitute(std::size_t param, const ParamCoeff& value) const {
  ParamCoeff result;
  for (const auto& [e, c] : terms_) {
    int k = exponent_at(e, param);
    Exponents rest = e;
    if (param < rest.size()) rest[param] = 0;
    trim(rest);
    ParamCoeff term;
    term.terms_.emplace_back(rest, c);
    if (k > 0) term *= value.pow(static_cast<unsigned>(k));
    result += term;
  }
  return result;
}

Rational ParamCoeff::evaluate(std::span<const Rational> values) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= values.size()) throw std::out_of_range("missing parameter value");
      for (int k = 0; k < e[i]; ++k) t *= values[i];
    }
    acc += t;
  }
  return acc;
}

std::optional<ParamCoeff> ParamCoeff::divide_exact(const ParamCoeff& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero coefficient");
  if (auto c = divisor.as_rational()) {
    ParamCoeff q = *this;
    q *= Rational(1 / *c);
    return q;
  }
  auto lex_leading = [](const ParamCoeff& p) -> const Term& {
    const Term* best = &p.terms_.front();
    for (const auto& t : p.terms_) {
      if (lex_greater(t.first, best->first)) best = &t;
    }
    return *best;
  };
  const Term& lead = lex_leading(divisor);
  ParamCoeff rem = *this;
  ParamCoeff quot;
  while (!rem.is_zero()) {
    const Term& lt = lex_leading(rem);
    Exponents e(std::max(lt.first.size(), lead.first.size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = exponent_at(lt.first, i) - exponent_at(lead.first, i);
      if (e[i] < 0) return std::nullopt;
    }
    trim(e);
    ParamCoeff t;
    t.terms_.emplace_back(e, lt.second / lead.second);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

std::pair<Rational, ParamCoeff> ParamCoeff::primitive_part() const {
  if (terms_.empty()) return {Rational(1), ParamCoeff()};
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& [e, c] : terms_) {
    g = gcd(g, c.get_num());
    l = lcm(l, c.get_den());
  }
  Rational content(g, l);
  content.canonicalize();
  if (terms_.front().second < 0) content = -content;
  ParamCoeff q = *this;
  q *= Rational(1 / content);
  return {content, q};
}

const Rational& ParamCoeff::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero");
  return terms_.front().second;
}

bool ParamCoeff::needs_parens() const { return terms_.size() > 1; }

std::string ParamCoeff::render(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "p" + std::to_string(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else if (mag.get_den() == 1) {
      out += to_string(mag) + "*" + mono;
    } else {
      out += "(" + to_string(mag) + ")*" + mono;
    }
  }
  return out;
}

std::vector<ParamCoeff> factor_parameter_poly(const ParamCoeff& poly) {
  std::vector<ParamCoeff> factors;
  if (poly.is_constant()) return factors;
  ParamCoeff work = poly.primitive_part().second;

  // Strip the monomial content: parameters are nonzero.
  std::size_t span = work.parameter_span();
  ParamCoeff::Exponents content(span, 0);
  for (std::size_t i = 0; i < span; ++i) {
    int m = -1;
    for (const auto& [e, c] : work.terms()) {
      int x = exponent_at(e, i);
      m = m < 0 ? x : std::min(m, x);
    }
    content[i] = std::max(m, 0);
  }
  trim(content);
  if (!content.empty()) {
    ParamCoeff divisor;
    divisor += ParamCoeff(1L);
    for (std::size_t i = 0; i < content.size(); ++i) {
      if (content[i] > 0) divisor *= ParamCoeff::parameter(i).pow(static_cast<unsigned>(content[i]));
    }
    work = *work.divide_exact(divisor);
  }

  for (std::size_t p = 0; p < span && !work.is_constant(); ++p) {
    bool found = true;
    while (found && work.degree_in(p) > 0) {
      found = false;
      // Specialise the other parameters to small primes to get candidates.
      static const long samples[] = {3, 5, 7, 11, 13, 17, 19, 23};
      std::vector<Rational> coeffs(static_cast<std::size_t>(work.degree_in(p)) + 1);
      for (const auto& [e, c] : work.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
          if (i == p) continue;
          for (int k = 0; k < e[i]; ++k) t *= samples[i % 8];
        }
        coeffs[static_cast<std::size_t>(exponent_at(e, p))] += t;
      }
      for (const Rational& r : rational_roots(coeffs)) {
        ParamCoeff linear = ParamCoeff::parameter(p) - ParamCoeff(r);
        if (auto q = work.divide_exact(linear)) {
          ParamCoeff f = linear.primitive_part().second;
          if (std::find(factors.begin(), factors.end(), f) == factors.end()) factors.push_back(f);
          work = q->primitive_part().second;
          found = true;
          break;
        }
      }
    }
  }
  if (!work.is_constant()) {
    ParamCoeff f = work.primitive_part().second;
    if (std::find(factors.begin(), factors.end(), f) == factors.end()) factors.push_back(f);
  }
  return factors;
}

}  // namespace lik
