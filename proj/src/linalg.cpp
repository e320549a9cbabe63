#include "lik/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace lik {

std::vector<std::size_t> rref(RationalMatrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) {
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

namespace {

// Rational content over every coefficient of a collection of entries, signed
// so the first nonzero entry gets a positive leading coefficient.
template <typename Range>
Rational joint_content(const Range& entries) {
  mpz_class g = 0;
  mpz_class l = 1;
  const ParamCoeff* first = nullptr;
  for (const ParamCoeff& e : entries) {
    if (e.is_zero()) continue;
    if (!first) first = &e;
    for (const auto& [mono, c] : e.terms()) {
      g = gcd(g, c.get_num());
      l = lcm(l, c.get_den());
    }
  }
  if (!first) return Rational(1);
  Rational content(g, l);
  content.canonicalize();
  if (first->leading_coefficient() < 0) content = -content;
  return content;
}

// Common parameter monomial dividing every entry (parameters are nonzero).
ParamCoeff monomial_content(const std::vector<ParamCoeff>& row) {
  std::vector<int> common;
  bool first = true;
  for (const auto& e : row) {
    if (e.is_zero()) continue;
    for (const auto& [mono, c] : e.terms()) {
      if (first) {
        common = mono;
        first = false;
      } else {
        common.resize(std::min(common.size(), mono.size()));
        for (std::size_t i = 0; i < common.size(); ++i) common[i] = std::min(common[i], mono[i]);
      }
    }
  }
  ParamCoeff m(1L);
  for (std::size_t i = 0; i < common.size(); ++i) {
    if (common[i] > 0) m *= ParamCoeff::parameter(i).pow(static_cast<unsigned>(common[i]));
  }
  return m;
}

void make_primitive(std::vector<ParamCoeff>& row) {
  Rational content = joint_content(row);
  if (content != 1) {
    Rational inv = 1 / content;
    for (auto& e : row) e *= inv;
  }
  ParamCoeff mono = monomial_content(row);
  if (!mono.is_constant()) {
    for (auto& e : row) {
      if (!e.is_zero()) e = *e.divide_exact(mono);
    }
  }
}

}  // namespace

bool LinearSystem::has_parameters() const {
  for (const auto& row : rows_) {
    for (const auto& [k, c] : row) {
      if (!c.is_constant()) return true;
    }
  }
  return false;
}

void LinearSystem::add_equation(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  if (row.empty()) return;
  std::vector<ParamCoeff> values;
  for (const auto& [k, c] : row) values.push_back(c);
  Rational content = joint_content(values);
  Rational inv = 1 / content;
  std::vector<std::pair<std::size_t, ParamCoeff>> key;
  for (auto& [k, c] : row) {
    c *= inv;
    key.emplace_back(k, c);
    if (k >= unknowns_) unknowns_ = k + 1;
  }
  if (seen_.emplace(std::move(key), true).second) rows_.push_back(std::move(row));
}

SolveOutcome nullspace(const LinearSystem& sys) {
  const std::size_t n = sys.unknowns();
  RationalMatrix m;
  m.reserve(sys.equations().size());
  for (const auto& row : sys.equations()) {
    std::vector<Rational> dense(n, Rational(0));
    for (const auto& [k, c] : row) {
      auto r = c.as_rational();
      if (!r) throw std::invalid_argument("nullspace: parameters present; use parametric_solve");
      dense[k] = *r;
    }
    m.push_back(std::move(dense));
  }
  std::vector<std::size_t> pivots = rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  SolveOutcome out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<ParamCoeff> v(n);
    v[f] = ParamCoeff(1L);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = ParamCoeff(Rational(-m[r][f]));
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::vector<ParamCoeff> normalize_vector(const std::vector<ParamCoeff>& v, std::size_t index, const Rational& value) {
  auto r = v.at(index).as_rational();
  if (!r || *r == 0) throw std::invalid_argument("normalize_vector: entry is not a nonzero rational");
  Rational scale = value / *r;
  std::vector<ParamCoeff> out = v;
  for (auto& e : out) e *= scale;
  return out;
}

std::optional<std::size_t> last_rational_entry(const std::vector<ParamCoeff>& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    auto r = v[i].as_rational();
    if (r && *r != 0) return i;
  }
  return std::nullopt;
}

ParamCoeff residual(const LinearSystem::Row& row, const std::vector<ParamCoeff>& x) {
  ParamCoeff acc;
  for (const auto& [k, c] : row) acc += c * x.at(k);
  return acc;
}

std::vector<std::string> ParametricBranch::render_conditions(const std::vector<std::string>& names) const {
  // Resolve later substitutions into earlier values.
  std::vector<std::pair<std::size_t, ParamCoeff>> resolved = substitutions;
  for (std::size_t i = resolved.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < resolved.size(); ++j) {
      resolved[i].second = resolved[i].second.substitute(resolved[j].first, resolved[j].second);
    }
  }
  std::vector<std::string> out;
  for (const auto& [p, value] : resolved) {
    std::string name = p < names.size() ? names[p] : "p" + std::to_string(p);
    out.push_back(name + " = " + value.render(names));
  }
  if (status == Status::Unresolved) out.push_back(unresolved.render(names) + " = 0");
  return out;
}

std::vector<std::string> ParametricBranch::render_assumptions(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (const auto& f : nonzero) {
    if (!f.is_constant()) out.push_back(f.render(names) + " != 0");
  }
  return out;
}

namespace {

struct ElimState {
  std::vector<std::vector<ParamCoeff>> rows;
  std::vector<std::pair<std::size_t, ParamCoeff>> substitutions;
  std::vector<ParamCoeff> nonzero;
  int depth = 0;
};

// param := value making f vanish, when f is linear in some parameter with a
// rational coefficient. Prefers parameters whose value is a constant.
std::optional<std::pair<std::size_t, ParamCoeff>> substitution_for(const ParamCoeff& f, std::size_t span) {
  std::optional<std::pair<std::size_t, ParamCoeff>> fallback;
  for (std::size_t p = 0; p < span; ++p) {
    if (f.degree_in(p) != 1) continue;
    ParamCoeff coeff;
    ParamCoeff rest;
    for (const auto& [e, c] : f.terms()) {
      ParamCoeff::Exponents reduced = e;
      bool linear = p < e.size() && e[p] == 1;
      if (linear) reduced[p] = 0;
      while (!reduced.empty() && reduced.back() == 0) reduced.pop_back();
      ParamCoeff t(Rational(1));
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (reduced[i] > 0) t *= ParamCoeff::parameter(i).pow(static_cast<unsigned>(reduced[i]));
      }
      t *= c;
      (linear ? coeff : rest) += t;
    }
    auto k = coeff.as_rational();
    if (!k || *k == 0) continue;
    ParamCoeff value = -rest;
    value *= Rational(1 / *k);
    if (value.is_constant()) return std::make_pair(p, value);
    if (!fallback) fallback = std::make_pair(p, value);
  }
  return fallback;
}

ElimState substitute_state(const ElimState& s, std::size_t param, const ParamCoeff& value) {
  ElimState out;
  out.depth = s.depth;
  out.substitutions = s.substitutions;
  out.substitutions.emplace_back(param, value);
  for (const auto& row : s.rows) {
    std::vector<ParamCoeff> r;
    r.reserve(row.size());
    for (const auto& e : row) r.push_back(e.is_constant() ? e : e.substitute(param, value));
    out.rows.push_back(std::move(r));
  }
  for (const auto& nz : s.nonzero) out.nonzero.push_back(nz.substitute(param, value));
  return out;
}

class ParametricSolver {
 public:
  ParametricSolver(std::size_t columns, std::size_t span, int max_depth)
      : columns_(columns), span_(span), max_depth_(max_depth) {}

  void run(ElimState state) {
    for (const auto& nz : state.nonzero) {
      if (nz.is_zero()) return;  // contradicts an earlier assumption
    }
    auto& m = state.rows;
    std::vector<bool> row_used(m.size(), false), col_used(columns_, false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      bool best_rational = false;
      std::pair<int, std::size_t> best_cost{0, 0};
      for (std::size_t c = 0; c < columns_ && !best_rational; ++c) {
        if (col_used[c]) continue;
        for (std::size_t r = 0; r < m.size(); ++r) {
          if (row_used[r] || m[r][c].is_zero()) continue;
          if (m[r][c].is_constant()) {
            best = {r, c};
            best_rational = true;
            break;
          }
          std::pair<int, std::size_t> cost{m[r][c].total_degree(), m[r][c].terms().size()};
          if (!best || cost < best_cost) {
            best = {r, c};
            best_cost = cost;
          }
        }
      }
      if (!best) break;
      auto [pr, pc] = *best;
      ParamCoeff pivot = m[pr][pc];
      if (best_rational) {
        Rational inv = 1 / *pivot.as_rational();
        for (auto& e : m[pr]) e *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
          if (r == pr || m[r][pc].is_zero()) continue;
          ParamCoeff f = m[r][pc];
          for (std::size_t c = 0; c < columns_; ++c) {
            if (!m[pr][c].is_zero()) m[r][c] -= f * m[pr][c];
          }
        }
      } else {
        std::vector<ParamCoeff> factors = factor_parameter_poly(pivot);
        for (std::size_t i = 0; i < factors.size(); ++i) {
          const ParamCoeff& f = factors[i];
          if (state.depth >= max_depth_) {
            ParametricBranch b;
            b.status = ParametricBranch::Status::DepthExhausted;
            b.substitutions = state.substitutions;
            b.nonzero = state.nonzero;
            b.unresolved = f;
            out_.push_back(std::move(b));
            continue;
          }
          auto sub = substitution_for(f, span_);
          if (!sub) {
            ParametricBranch b;
            b.status = ParametricBranch::Status::Unresolved;
            b.substitutions = state.substitutions;
            b.nonzero = state.nonzero;
            b.unresolved = f;
            out_.push_back(std::move(b));
            continue;
          }
          ElimState base = state;
          for (std::size_t j = 0; j < i; ++j) base.nonzero.push_back(factors[j]);
          ElimState child = substitute_state(base, sub->first, sub->second);
          child.depth = state.depth + 1;
          run(std::move(child));
        }
        for (const auto& f : factors) state.nonzero.push_back(f);
        for (std::size_t r = 0; r < m.size(); ++r) {
          if (r == pr || m[r][pc].is_zero()) continue;
          ParamCoeff f = m[r][pc];
          for (std::size_t c = 0; c < columns_; ++c) {
            ParamCoeff v = pivot * m[r][c];
            if (!m[pr][c].is_zero()) v -= f * m[pr][c];
            m[r][c] = std::move(v);
          }
          make_primitive(m[r]);
        }
      }
      row_used[pr] = true;
      col_used[pc] = true;
      pivots.emplace_back(pr, pc);
    }

    ParametricBranch b;
    b.substitutions = state.substitutions;
    b.nonzero = state.nonzero;
    for (std::size_t f = 0; f < columns_; ++f) {
      if (col_used[f]) continue;
      std::vector<ParamCoeff> v(columns_);
      // x_f = product of the pivots of rows touching f; each pivot variable
      // then takes -a_rf times the product of the other pivots.
      std::vector<std::size_t> touching;
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (!m[pivots[i].first][f].is_zero()) touching.push_back(i);
      }
      ParamCoeff all(1L);
      for (auto i : touching) all *= m[pivots[i].first][pivots[i].second];
      v[f] = all;
      for (auto i : touching) {
        ParamCoeff others(1L);
        for (auto j : touching) {
          if (j != i) others *= m[pivots[j].first][pivots[j].second];
        }
        v[pivots[i].second] = -(m[pivots[i].first][f] * others);
      }
      make_primitive(v);
      b.outcome.basis.push_back(std::move(v));
    }
    out_.push_back(std::move(b));
  }

  std::vector<ParametricBranch> take() { return std::move(out_); }

 private:
  std::size_t columns_;
  std::size_t span_;
  int max_depth_;
  std::vector<ParametricBranch> out_;
};

}  // namespace

std::vector<ParametricBranch> parametric_solve(const LinearSystem& sys, std::size_t parameter_count, int max_depth) {
  if (!sys.has_parameters()) {
    ParametricBranch b;
    b.outcome = nullspace(sys);
    return {b};
  }
  ElimState state;
  for (const auto& row : sys.equations()) {
    std::vector<ParamCoeff> dense(sys.unknowns());
    for (const auto& [k, c] : row) dense[k] = c;
    state.rows.push_back(std::move(dense));
  }
  ParametricSolver solver(sys.unknowns(), parameter_count, max_depth);
  solver.run(std::move(state));
  return solver.take();
}

int branch_depth_from_env() {
  const char* v = std::getenv("LIK_BRANCH_DEPTH");
  if (!v || !*v) return 6;
  char* end = nullptr;
  long d = std::strtol(v, &end, 10);
  if (*end != '\0' || d < 0 || d > 64) throw std::invalid_argument("LIK_BRANCH_DEPTH must be an integer in [0, 64]");
  return static_cast<int>(d);
}

}  // namespace lik
