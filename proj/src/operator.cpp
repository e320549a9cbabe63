#include "lik/operator.hpp"

#include "lik/parser.hpp"

#include <regex>
#include <set>
#include <stdexcept>

namespace lik {

// ---- ExtendedExpr -----------------------------------------------------------

ExtendedExpr::ExtendedExpr(LatticePoly local) : local_(std::move(local)) {}

void ExtendedExpr::add_theta(const LatticeMonomial& argument, const LatticePoly& cofactor) {
  if (cofactor.is_zero()) return;
  auto [it, inserted] = theta_.try_emplace(argument, cofactor);
  if (!inserted) {
    it->second += cofactor;
    if (it->second.is_zero()) theta_.erase(it);
  }
}

ExtendedExpr& ExtendedExpr::operator+=(const ExtendedExpr& rhs) {
  local_ += rhs.local_;
  for (const auto& [m, b] : rhs.theta_) add_theta(m, b);
  return *this;
}

ExtendedExpr& ExtendedExpr::operator-=(const ExtendedExpr& rhs) {
  local_ -= rhs.local_;
  for (const auto& [m, b] : rhs.theta_) add_theta(m, -b);
  return *this;
}

ExtendedExpr& ExtendedExpr::operator*=(const LatticePoly& f) {
  local_ = local_ * f;
  ThetaMap out;
  for (const auto& [m, b] : theta_) {
    LatticePoly nb = b * f;
    if (!nb.is_zero()) out.emplace(m, std::move(nb));
  }
  theta_ = std::move(out);
  return *this;
}

ExtendedExpr& ExtendedExpr::operator*=(const ParamCoeff& c) { return *this *= LatticePoly(c); }

std::string ExtendedExpr::render(const SymbolTable& symbols) const {
  std::string out = theta_.empty() || !local_.is_zero() ? local_.render(symbols) : "";
  for (const auto& [m, b] : theta_) {
    std::string cof = b.render(symbols);
    std::string term = (b == LatticePoly(1L) ? "" : b.is_single_factor() ? cof + "*" : "(" + cof + ")*") +
                       "Theta(" + m.render(symbols) + ")";
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

ExtendedExpr shift(const ExtendedExpr& x, int r) {
  ExtendedExpr out(shift(x.local(), r));
  for (const auto& [m, b] : x.theta()) {
    LatticePoly bs = shift(b, r);
    out.add_theta(m, bs);
    LatticePoly extra;
    for (int j = 0; j < r; ++j) extra += shift(LatticePoly(m), j);
    for (int j = 1; j <= -r; ++j) extra -= shift(LatticePoly(m), -j);
    out += ExtendedExpr(bs * extra);
  }
  return out;
}

ExtendedExpr sum_operator(const LatticePoly& y) {
  DeltaDecomposition dec = delta_decompose(y);
  ExtendedExpr out(dec.flux);
  for (const auto& [m, c] : dec.canonical.terms()) out.add_theta(m, LatticePoly(c));
  return out;
}

// ---- OpEntry ----------------------------------------------------------------

bool OpEntry::MonomialPairOrder::operator()(const std::pair<LatticeMonomial, LatticeMonomial>& a,
                                            const std::pair<LatticeMonomial, LatticeMonomial>& b) const {
  RenderOrder less;
  if (less(a.first, b.first)) return true;
  if (less(b.first, a.first)) return false;
  return less(a.second, b.second);
}

OpEntry OpEntry::identity() { return shift_power(0); }

OpEntry OpEntry::shift_power(int a) { return local_term(LatticePoly(1L), a); }

OpEntry OpEntry::multiplication(const LatticePoly& f) { return local_term(f, 0); }

OpEntry OpEntry::local_term(const LatticePoly& cofactor, int a) {
  OpEntry e;
  e.add_local(a, cofactor);
  return e;
}

OpEntry OpEntry::inverse_difference() { return sandwich(LatticePoly(1L), LatticePoly(1L)); }

OpEntry OpEntry::sandwich(const LatticePoly& left, const LatticePoly& right) {
  OpEntry e;
  e.add_nonlocal(left, right);
  return e;
}

void OpEntry::add_local(int a, const LatticePoly& cofactor) {
  if (cofactor.is_zero()) return;
  auto [it, inserted] = local_.try_emplace(a, cofactor);
  if (!inserted) {
    it->second += cofactor;
    if (it->second.is_zero()) local_.erase(it);
  }
}

void OpEntry::add_nonlocal(const LatticePoly& left, const LatticePoly& right) {
  for (const auto& [mb, cb] : left.terms()) {
    for (const auto& [mc, cc] : right.terms()) {
      ParamCoeff k = cb * cc;
      auto [it, inserted] = nonlocal_.try_emplace({mb, mc}, k);
      if (!inserted) {
        it->second += k;
        if (it->second.is_zero()) nonlocal_.erase(it);
      }
    }
  }
}

std::vector<OpEntry::NonlocalTerm> OpEntry::nonlocal_terms() const {
  std::map<LatticeMonomial, LatticePoly, RenderOrder> by_left;
  for (const auto& [key, k] : nonlocal_) by_left[key.first].add_term(key.second, k);
  std::map<LatticePoly, LatticePoly> by_right;
  for (const auto& [mb, c] : by_left) {
    ParamCoeff lc = c.leading_term().second;
    auto r = lc.as_rational();
    if (r) {
      by_right[c * ParamCoeff(Rational(1 / *r))] += LatticePoly(mb, lc);
    } else {
      by_right[c] += LatticePoly(mb);
    }
  }
  std::vector<NonlocalTerm> out;
  for (auto& [right, left] : by_right) {
    if (!left.is_zero()) out.push_back({left, right});
  }
  return out;
}

OpEntry& OpEntry::operator+=(const OpEntry& rhs) {
  for (const auto& [a, c] : rhs.local_) add_local(a, c);
  for (const auto& [key, k] : rhs.nonlocal_) add_nonlocal(LatticePoly(key.first, k), LatticePoly(key.second));
  return *this;
}

OpEntry& OpEntry::operator-=(const OpEntry& rhs) {
  for (const auto& [a, c] : rhs.local_) add_local(a, -c);
  for (const auto& [key, k] : rhs.nonlocal_) add_nonlocal(LatticePoly(key.first, -k), LatticePoly(key.second));
  return *this;
}

OpEntry& OpEntry::operator*=(const ParamCoeff& c) {
  if (c.is_zero()) {
    local_.clear();
    nonlocal_.clear();
    return *this;
  }
  for (auto& [a, cof] : local_) cof *= c;
  for (auto& [key, k] : nonlocal_) k *= c;
  return *this;
}

namespace {

std::string shift_symbol(int a) {
  if (a == 0) return "I";
  if (a == 1) return "D";
  return "D^" + std::to_string(a);
}

// Renders a factor placed before '*'; "-" alone for -1, empty for 1.
std::string prefix_factor(const LatticePoly& f, const SymbolTable& symbols) {
  if (f == LatticePoly(1L)) return "";
  if (f == LatticePoly(-1L)) return "-";
  std::string s = f.render(symbols);
  return (f.size() == 1 ? s : "(" + s + ")") + "*";
}

void join_signed(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (term.starts_with("-")) {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

}  // namespace

std::string OpEntry::render(const SymbolTable& symbols) const {
  std::string out;
  for (const auto& [a, cof] : local_) join_signed(out, prefix_factor(cof, symbols) + shift_symbol(a));
  for (const auto& [left, right] : nonlocal_terms()) {
    std::string term = prefix_factor(left, symbols) + "S";
    if (right != LatticePoly(1L)) {
      std::string s = right.render(symbols);
      term += "*" + (right.is_single_factor() ? s : "(" + s + ")");
    }
    join_signed(out, term);
  }
  return out.empty() ? "0" : out;
}

OpEntry op_compose(const OpEntry& a, const OpEntry& b) {
  if (!a.is_local() && !b.is_local()) {
    throw std::domain_error("composition of two nonlocal terms is not representable");
  }
  OpEntry out;
  for (const auto& [sa, A] : a.local()) {
    for (const auto& [sb, B] : b.local()) out.add_local(sa + sb, A * shift(B, sa));
    for (const auto& [key, k] : b.nonlocal()) {
      LatticePoly left = A * shift(LatticePoly(key.first, k), sa);
      LatticePoly right(key.second);
      out.add_nonlocal(left, right);
      for (int j = 0; j < sa; ++j) out.add_local(j, left * shift(right, j));
      for (int j = 1; j <= -sa; ++j) out.add_local(-j, -(left * shift(right, -j)));
    }
  }
  for (const auto& [key, k] : a.nonlocal()) {
    LatticePoly left(key.first, k);
    for (const auto& [sb, B] : b.local()) {
      LatticePoly y = shift(LatticePoly(key.second) * B, -sb);
      out.add_nonlocal(left, y);
      for (int j = 0; j < sb; ++j) out.add_local(j, left * shift(y, j));
      for (int j = 1; j <= -sb; ++j) out.add_local(-j, -(left * shift(y, -j)));
    }
  }
  return out;
}

ExtendedExpr apply(const OpEntry& op, const LatticePoly& g) {
  ExtendedExpr out;
  LatticePoly local;
  for (const auto& [a, A] : op.local()) local += A * shift(g, a);
  out += ExtendedExpr(local);
  for (const auto& [left, right] : op.nonlocal_terms()) {
    ExtendedExpr s = sum_operator(right * g);
    s *= left;
    out += s;
  }
  return out;
}

ExtendedExpr apply(const OpEntry& op, const ExtendedExpr& g) {
  if (g.is_theta_free()) return apply(op, g.local());
  if (!op.is_local()) throw std::domain_error("nonlocal operator applied to a nonlocal expression");
  ExtendedExpr out;
  for (const auto& [a, A] : op.local()) out += shift(g, a) * A;
  return out;
}

// ---- DiffOperator -----------------------------------------------------------

DiffOperator DiffOperator::identity(std::size_t n) {
  DiffOperator out(n);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = OpEntry::identity();
  return out;
}

bool DiffOperator::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("operator size mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

DiffOperator& DiffOperator::operator*=(const ParamCoeff& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

std::string DiffOperator::render(const SymbolTable& symbols) const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (at(i, j).is_zero()) continue;
      out += "R[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] = " + at(i, j).render(symbols) + "\n";
    }
  }
  return out;
}

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b) {
  if (a.size() != b.size()) throw std::invalid_argument("operator size mismatch");
  std::size_t n = a.size();
  DiffOperator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out.at(i, j) += op_compose(a.at(i, k), b.at(k, j));
    }
  }
  return out;
}

std::vector<ExtendedExpr> op_apply(const DiffOperator& op, const std::vector<LatticePoly>& g) {
  std::vector<ExtendedExpr> ext(g.begin(), g.end());
  return op_apply(op, ext);
}

std::vector<ExtendedExpr> op_apply(const DiffOperator& op, const std::vector<ExtendedExpr>& g) {
  if (g.size() != op.size()) throw std::invalid_argument("operator and vector sizes differ");
  std::vector<ExtendedExpr> out(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) {
    for (std::size_t j = 0; j < op.size(); ++j) {
      if (!op.at(i, j).is_zero()) out[i] += apply(op.at(i, j), g[j]);
    }
  }
  return out;
}

DiffOperator op_frechet(const DiffOperator& op, const DdeSystem& sys) {
  DiffOperator out(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) {
    for (std::size_t j = 0; j < op.size(); ++j) {
      OpEntry& e = out.at(i, j);
      for (const auto& [a, A] : op.at(i, j).local()) e.add_local(a, total_time_derivative(A, sys));
      for (const auto& [key, k] : op.at(i, j).nonlocal()) {
        LatticePoly left(key.first, k);
        LatticePoly right(key.second);
        e.add_nonlocal(total_time_derivative(left, sys), right);
        e.add_nonlocal(left, total_time_derivative(right, sys));
      }
    }
  }
  return out;
}

DiffOperator frechet_operator(const std::vector<LatticePoly>& f, std::size_t components) {
  DiffOperator out(components);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const VarRef& x : variables_of(f[i])) {
      out.at(i, static_cast<std::size_t>(x.component)).add_local(x.shift, partial(f[i], x));
    }
  }
  return out;
}

std::vector<LatticePoly> frechet_apply(const std::vector<LatticePoly>& f, const std::vector<LatticePoly>& g) {
  std::vector<LatticePoly> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const VarRef& x : variables_of(f[i])) {
      out[i] += partial(f[i], x) * shift(g.at(static_cast<std::size_t>(x.component)), x.shift);
    }
  }
  return out;
}

std::vector<ExtendedExpr> frechet_apply(const std::vector<LatticePoly>& f, const std::vector<ExtendedExpr>& g) {
  std::vector<ExtendedExpr> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const VarRef& x : variables_of(f[i])) {
      out[i] += shift(g.at(static_cast<std::size_t>(x.component)), x.shift) * partial(f[i], x);
    }
  }
  return out;
}

std::optional<Rational> entry_rank(const OpEntry& e, const WeightVector& w) {
  std::optional<Rational> rank;
  auto visit = [&](const Rational& r) {
    if (!rank) {
      rank = r;
      return true;
    }
    return *rank == r;
  };
  for (const auto& [a, A] : e.local()) {
    for (const auto& [m, c] : A.terms()) {
      if (!visit(rank_of(m, w))) return std::nullopt;
    }
  }
  for (const auto& [key, k] : e.nonlocal()) {
    if (!visit(rank_of(key.first, w) + rank_of(key.second, w))) return std::nullopt;
  }
  return rank;
}

// ---- parsing ----------------------------------------------------------------

namespace {

std::optional<LatticePoly> as_function(const OpEntry& e) {
  if (!e.is_local()) return std::nullopt;
  if (e.local().empty()) return LatticePoly();
  if (e.local().size() != 1 || e.local().begin()->first != 0) return std::nullopt;
  return e.local().begin()->second;
}

std::optional<int> as_pure_shift(const OpEntry& e) {
  if (!e.is_local() || e.local().size() != 1) return std::nullopt;
  const auto& [a, cof] = *e.local().begin();
  if (cof != LatticePoly(1L)) return std::nullopt;
  return a;
}

std::optional<LatticePoly> monomial_inverse(const LatticePoly& f) {
  if (f.size() != 1) return std::nullopt;
  const auto& [m, c] = f.leading_term();
  auto r = c.as_rational();
  if (!r) return std::nullopt;
  return LatticePoly(m.pow(-1), ParamCoeff(Rational(1 / *r)));
}

OpEntry evaluate_op(const ExprNode& node, const SymbolTable& symbols) {
  using K = ExprNode::Kind;
  auto err = [&](const std::string& msg) { return ParseError(node.line, node.column, msg); };
  switch (node.kind) {
    case K::Number:
      return OpEntry::multiplication(LatticePoly(ParamCoeff(node.number)));
    case K::Symbol:
      if (node.name == "D" || node.name == "I" || node.name == "S") {
        if (node.shift) throw err("'" + node.name + "' cannot carry a shift");
        if (node.name == "D") return OpEntry::shift_power(1);
        if (node.name == "I") return OpEntry::identity();
        return OpEntry::inverse_difference();
      }
      return OpEntry::multiplication(evaluate_poly(node, symbols, PolyMode::Laurent));
    case K::Negate: {
      OpEntry e = evaluate_op(*node.children[0], symbols);
      e *= ParamCoeff(-1L);
      return e;
    }
    case K::Add:
      return evaluate_op(*node.children[0], symbols) + evaluate_op(*node.children[1], symbols);
    case K::Subtract:
      return evaluate_op(*node.children[0], symbols) - evaluate_op(*node.children[1], symbols);
    case K::Multiply:
      try {
        return op_compose(evaluate_op(*node.children[0], symbols), evaluate_op(*node.children[1], symbols));
      } catch (const std::domain_error&) {
        throw err("product of two nonlocal terms is not supported");
      }
    case K::Divide: {
      OpEntry num = evaluate_op(*node.children[0], symbols);
      auto den = as_function(evaluate_op(*node.children[1], symbols));
      if (!den) throw err("can only divide by a function");
      if (den->is_zero()) throw err("division by zero");
      auto inv = monomial_inverse(*den);
      if (!inv) throw err("can only divide by a monomial");
      return op_compose(num, OpEntry::multiplication(*inv));
    }
    case K::Power: {
      OpEntry base = evaluate_op(*node.children[0], symbols);
      if (auto a = as_pure_shift(base)) return OpEntry::shift_power(*a * node.exponent);
      auto f = as_function(base);
      if (!f) throw err("only D and functions can be raised to a power");
      if (node.exponent >= 0) return OpEntry::multiplication(f->pow(static_cast<unsigned>(node.exponent)));
      auto inv = monomial_inverse(*f);
      if (!inv) throw err("negative power of a non-monomial");
      return OpEntry::multiplication(inv->pow(static_cast<unsigned>(-node.exponent)));
    }
  }
  throw err("bad expression node");
}

}  // namespace

OpEntry parse_op_entry(std::string_view text, const SymbolTable& symbols, int line, int column_offset) {
  auto ast = parse_expression(text, line, column_offset);
  return evaluate_op(*ast, symbols);
}

DiffOperator parse_operator(std::string_view text, const SymbolTable& symbols) {
  static const std::regex key_re(R"(R\s*\[\s*(\d+)\s*,\s*(\d+)\s*\])");
  std::size_t n = symbols.components.size();
  DiffOperator out(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const KeyedLine& kl : split_keyed_lines(text)) {
    std::smatch match;
    if (!std::regex_match(kl.key, match, key_re)) {
      throw ParseError(kl.line, 1, "expected 'R[i,j] = entry', got '" + kl.key + "'");
    }
    std::size_t i = std::stoul(match[1].str());
    std::size_t j = std::stoul(match[2].str());
    if (i < 1 || j < 1 || i > n || j > n) {
      throw ParseError(kl.line, 1, "entry index out of range for " + std::to_string(n) + " components");
    }
    if (!seen.insert({i, j}).second) throw ParseError(kl.line, 1, "duplicate entry " + kl.key);
    out.at(i - 1, j - 1) = parse_op_entry(kl.value, symbols, kl.line, kl.value_column);
  }
  return out;
}

}  // namespace lik
