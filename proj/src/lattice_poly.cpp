#include "lik/lattice_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace lik {

// ---- LatticeMonomial --------------------------------------------------------

LatticeMonomial LatticeMonomial::variable(VarRef v, int exponent) {
  LatticeMonomial m;
  if (exponent != 0) m.factors_.emplace_back(v, exponent);
  return m;
}

int LatticeMonomial::exponent(VarRef v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const VarRef& key) { return f.first < key; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

int LatticeMonomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

bool LatticeMonomial::has_negative_exponent() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second < 0; });
}

int LatticeMonomial::min_shift() const {
  if (factors_.empty()) return 0;
  int s = factors_.front().first.shift;
  for (const auto& f : factors_) s = std::min(s, f.first.shift);
  return s;
}

int LatticeMonomial::max_shift() const {
  if (factors_.empty()) return 0;
  int s = factors_.front().first.shift;
  for (const auto& f : factors_) s = std::max(s, f.first.shift);
  return s;
}

bool LatticeMonomial::contains_component(int component) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.first.component == component; });
}

LatticeMonomial LatticeMonomial::shifted(int r) const {
  LatticeMonomial m = *this;
  for (auto& f : m.factors_) f.first.shift += r;
  return m;
}

LatticeMonomial LatticeMonomial::pow(int k) const {
  LatticeMonomial m;
  if (k == 0) return m;
  m = *this;
  for (auto& f : m.factors_) f.second *= k;
  return m;
}

LatticeMonomial operator*(const LatticeMonomial& a, const LatticeMonomial& b) {
  LatticeMonomial r;
  auto& out = r.factors_;
  out.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      int e = i->second + j->second;
      if (e != 0) out.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string LatticeMonomial::render(const SymbolTable& symbols) const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += "*";
    const auto c = static_cast<std::size_t>(v.component);
    out += c < symbols.components.size() ? symbols.components[c] : "x" + std::to_string(c);
    out += "[" + std::to_string(v.shift) + "]";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool RenderOrder::operator()(const LatticeMonomial& a, const LatticeMonomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  return fa.size() < fb.size();
}

bool CandidateOrder::operator()(const LatticeMonomial& a, const LatticeMonomial& b) const {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.rbegin();
  auto j = fb.rbegin();
  for (; i != fa.rend() && j != fb.rend(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first;
    if (i->second != j->second) return i->second < j->second;
  }
  return fa.size() < fb.size();
}

// ---- LatticePoly ------------------------------------------------------------

LatticePoly::LatticePoly(const ParamCoeff& constant) {
  if (!constant.is_zero()) terms_.emplace(LatticeMonomial(), constant);
}

LatticePoly::LatticePoly(long constant) : LatticePoly(ParamCoeff(constant)) {}

LatticePoly::LatticePoly(const LatticeMonomial& m, ParamCoeff coeff) {
  if (!coeff.is_zero()) terms_.emplace(m, std::move(coeff));
}

LatticePoly LatticePoly::variable(int component, int shift, int exponent) {
  return LatticePoly(LatticeMonomial::variable({component, shift}, exponent));
}

ParamCoeff LatticePoly::coefficient(const LatticeMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ParamCoeff() : it->second;
}

bool LatticePoly::has_parameters() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.second.is_constant(); });
}

bool LatticePoly::is_polynomial() const {
  return std::none_of(terms_.begin(), terms_.end(),
                      [](const auto& t) { return t.first.has_negative_exponent(); });
}

const std::pair<const LatticeMonomial, ParamCoeff>& LatticePoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.begin();
}

void LatticePoly::add_term(const LatticeMonomial& m, const ParamCoeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LatticePoly LatticePoly::operator-() const {
  LatticePoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LatticePoly& LatticePoly::operator+=(const LatticePoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

LatticePoly& LatticePoly::operator-=(const LatticePoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

LatticePoly& LatticePoly::operator*=(const ParamCoeff& rhs) {
  if (rhs.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (auto r = rhs.as_rational()) {
    for (auto& t : terms_) t.second *= *r;
    return *this;
  }
  TermMap out;
  for (auto& [m, c] : terms_) {
    ParamCoeff p = c * rhs;
    if (!p.is_zero()) out.emplace_hint(out.end(), m, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

LatticePoly operator*(const LatticePoly& a, const LatticePoly& b) {
  LatticePoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

bool operator<(const LatticePoly& a, const LatticePoly& b) {
  RenderOrder order;
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
    if (order(i->first, j->first)) return true;
    if (order(j->first, i->first)) return false;
    if (i->second < j->second) return true;
    if (j->second < i->second) return false;
  }
  return a.terms_.size() < b.terms_.size();
}

LatticePoly LatticePoly::pow(unsigned k) const {
  LatticePoly result(1L);
  LatticePoly base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

LatticePoly LatticePoly::substitute_parameter(std::size_t param, const ParamCoeff& value) const {
  LatticePoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, c.substitute(param, value));
  return r;
}

namespace {

std::string render_term(const LatticeMonomial& m, const ParamCoeff& c, const SymbolTable& symbols,
                        bool first) {
  std::string sign;
  std::string coeff;
  if (auto r = c.as_rational()) {
    bool negative = *r < 0;
    Rational mag = abs(*r);
    sign = negative ? (first ? "-" : " - ") : (first ? "" : " + ");
    if (m.is_constant()) {
      coeff = to_string(mag);
    } else if (mag != 1) {
      coeff = (mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")") + "*";
    }
  } else if (c.terms().size() == 1) {
    bool negative = c.leading_coefficient() < 0;
    sign = negative ? (first ? "-" : " - ") : (first ? "" : " + ");
    coeff = (negative ? -c : c).render(symbols.parameters);
    if (!m.is_constant()) coeff += "*";
  } else {
    sign = first ? "" : " + ";
    coeff = "(" + c.render(symbols.parameters) + ")";
    if (!m.is_constant()) coeff += "*";
  }
  return sign + coeff + (m.is_constant() ? "" : m.render(symbols));
}

}  // namespace

std::string LatticePoly::render(const SymbolTable& symbols) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    out += render_term(m, c, symbols, first);
    first = false;
  }
  return out;
}

bool LatticePoly::is_single_factor() const {
  if (terms_.size() != 1) return false;
  const auto& [m, c] = *terms_.begin();
  if (m.is_constant()) return c.as_rational() && *c.as_rational() > 0 && c.as_rational()->get_den() == 1;
  return c == ParamCoeff(1L) && m.factors().size() == 1;
}

// ---- shift calculus ---------------------------------------------------------

LatticePoly shift(const LatticePoly& p, int r) {
  if (r == 0) return p;
  LatticePoly out;
  for (const auto& [m, c] : p.terms()) out.add_term(m.shifted(r), c);
  return out;
}

LatticePoly delta(const LatticePoly& p) { return shift(p, 1) - p; }

LatticePoly partial(const LatticePoly& p, VarRef x) {
  LatticePoly out;
  for (const auto& [m, c] : p.terms()) {
    int e = m.exponent(x);
    if (e == 0) continue;
    LatticeMonomial reduced = m * LatticeMonomial::variable(x, -1);
    ParamCoeff coeff = c;
    coeff *= Rational(e);
    out.add_term(reduced, coeff);
  }
  return out;
}

std::vector<VarRef> variables_of(const LatticePoly& p) {
  std::vector<VarRef> vars;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) vars.push_back(f.first);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

int canonical_shift(const LatticeMonomial& m) {
  if (m.is_constant()) return 0;
  // Factors are sorted by (component, shift): the first one is the lowest
  // shift of the lowest component present.
  return -m.factors().front().first.shift;
}

LatticeMonomial canonical_rep(const LatticeMonomial& m) { return m.shifted(canonical_shift(m)); }

DeltaDecomposition delta_decompose(const LatticePoly& p) {
  DeltaDecomposition out;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_constant()) {
      out.canonical.add_term(m, c);
      continue;
    }
    int r = canonical_shift(m);
    LatticeMonomial rep = m.shifted(r);
    out.canonical.add_term(rep, c);
    // m = D^s rep with s = -r.
    int s = -r;
    if (s > 0) {
      for (int j = 0; j < s; ++j) out.flux.add_term(rep.shifted(j), c);
    } else {
      for (int j = s; j < 0; ++j) out.flux.add_term(rep.shifted(j), -c);
    }
  }
  return out;
}

std::variant<LatticePoly, NotExact> antidifference(const LatticePoly& p) {
  DeltaDecomposition d = delta_decompose(p);
  if (d.canonical.is_zero()) return std::move(d.flux);
  return NotExact{std::move(d.canonical), std::move(d.flux)};
}

}  // namespace lik
