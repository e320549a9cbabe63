#include "lik/scaling.hpp"

#include "lik/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lik {

WeightResult compute_weights(const DdeSystem& sys, const std::map<std::size_t, Rational>& fixed) {
  const std::size_t n = sys.size();
  // Augmented rows [coefficients | rhs].
  RationalMatrix rows;
  std::set<std::vector<Rational>> seen;
  auto push = [&](std::vector<Rational> row) {
    if (seen.insert(row).second) rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [m, c] : sys.rhs[i].terms()) {
      std::vector<Rational> row(n + 1, Rational(0));
      for (const auto& [v, e] : m.factors()) row[static_cast<std::size_t>(v.component)] += e;
      row[i] -= 1;
      row[n] = 1;
      push(std::move(row));
    }
  }
  for (const auto& [comp, value] : fixed) {
    if (comp >= n) throw std::out_of_range("weight normalization for an unknown component");
    std::vector<Rational> row(n + 1, Rational(0));
    row[comp] = 1;
    row[n] = value;
    push(std::move(row));
  }
  std::vector<std::size_t> pivots = rref(rows, n + 1);
  if (!pivots.empty() && pivots.back() == n) {
    return Inconsistent{"the weight balance equations have no solution with w(d/dt) = 1"};
  }
  std::vector<Rational> particular(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) particular[pivots[r]] = rows[r][n];
  if (pivots.size() < n) {
    Underdetermined family;
    family.particular = particular;
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Rational> dir(n, Rational(0));
      dir[f] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) dir[pivots[r]] = -rows[r][f];
      family.directions.push_back(std::move(dir));
    }
    return family;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (particular[i] < 0) {
      return Inconsistent{"weight of '" + sys.components[i] + "' would be negative (" + to_string(particular[i]) +
                          ")"};
    }
  }
  return WeightVector{particular};
}

WeightVector require_weights(const WeightResult& result, const DdeSystem& sys) {
  if (const auto* w = std::get_if<WeightVector>(&result)) return *w;
  if (const auto* bad = std::get_if<Inconsistent>(&result)) {
    throw std::runtime_error("system is not dilation invariant: " + bad->reason);
  }
  const auto& family = std::get<Underdetermined>(result);
  std::string free;
  for (const auto& dir : family.directions) {
    for (std::size_t i = 0; i < dir.size(); ++i) {
      if (dir[i] != 0) {
        free += (free.empty() ? "" : ", ") + sys.components[i];
        break;
      }
    }
  }
  throw std::runtime_error("weights are underdetermined; fix them with --weight (free: " + free + ")");
}

Rational rank_of(const LatticeMonomial& m, const WeightVector& w) {
  Rational r = 0;
  for (const auto& [v, e] : m.factors()) r += w[static_cast<std::size_t>(v.component)] * e;
  return r;
}

bool is_uniform(const LatticePoly& p, const WeightVector& w) {
  if (p.is_zero()) return true;
  Rational first = rank_of(p.terms().begin()->first, w);
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& t) { return rank_of(t.first, w) == first; });
}

Rational uniform_rank(const LatticePoly& p, const WeightVector& w) {
  if (p.is_zero()) throw std::domain_error("rank of the zero expression");
  if (!is_uniform(p, w)) throw std::domain_error("expression is not uniform in rank");
  return rank_of(p.terms().begin()->first, w);
}

namespace {

void enumerate(const std::vector<VarRef>& pool, const WeightVector& w, std::size_t index, const Rational& budget,
               bool exact, LatticeMonomial current, std::vector<LatticeMonomial>& out) {
  if (index == pool.size()) {
    if (exact ? budget == 0 : true) out.push_back(current);
    return;
  }
  const Rational& weight = w[static_cast<std::size_t>(pool[index].component)];
  Rational remaining = budget;
  for (int e = 0;; ++e) {
    if (remaining < 0) break;
    enumerate(pool, w, index + 1, remaining, exact, e == 0 ? current : current * LatticeMonomial::variable(pool[index], e),
              out);
    remaining -= weight;
  }
}

}  // namespace

std::vector<LatticeMonomial> monomials_of_rank(const std::vector<VarRef>& pool, const WeightVector& w,
                                               const Rational& rank) {
  for (const auto& v : pool) {
    if (w[static_cast<std::size_t>(v.component)] <= 0) {
      throw std::invalid_argument("monomial enumeration needs positive weights");
    }
  }
  std::vector<LatticeMonomial> out;
  if (rank < 0) return out;
  enumerate(pool, w, 0, rank, true, LatticeMonomial(), out);
  std::sort(out.begin(), out.end(), CandidateOrder());
  return out;
}

std::vector<LatticeMonomial> monomials_upto_rank(const WeightVector& w, const Rational& max_rank) {
  if (max_rank <= 0) throw std::invalid_argument("monomials_upto_rank needs a positive rank");
  std::vector<VarRef> pool;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) throw std::invalid_argument("monomial enumeration needs positive weights");
    pool.push_back({static_cast<int>(i), 0});
  }
  std::vector<LatticeMonomial> all;
  enumerate(pool, w, 0, max_rank, false, LatticeMonomial(), all);
  std::vector<LatticeMonomial> out;
  for (auto& m : all) {
    if (!m.is_constant()) out.push_back(std::move(m));
  }
  std::stable_sort(out.begin(), out.end(), [&](const LatticeMonomial& a, const LatticeMonomial& b) {
    Rational ra = rank_of(a, w), rb = rank_of(b, w);
    if (ra != rb) return ra > rb;
    return CandidateOrder()(a, b);
  });
  return out;
}

std::vector<LatticeMonomial> derivative_completion_raw(const std::vector<LatticeMonomial>& blocks,
                                                       const WeightVector& w, const Rational& rank,
                                                       const DdeSystem& sys) {
  std::set<LatticeMonomial, CandidateOrder> collected;
  for (const auto& m : blocks) {
    Rational deficit = rank - rank_of(m, w);
    if (deficit < 0 || deficit.get_den() != 1) continue;
    long d = deficit.get_num().get_si();
    LatticePoly p(m);
    for (long k = 0; k < d; ++k) p = total_time_derivative(p, sys);
    for (const auto& [mono, c] : p.terms()) collected.insert(mono);
  }
  return {collected.begin(), collected.end()};
}

std::vector<LatticeMonomial> derivative_completion(const std::vector<LatticeMonomial>& blocks, const WeightVector& w,
                                                   const Rational& rank, const DdeSystem& sys) {
  std::set<LatticeMonomial, CandidateOrder> reps;
  for (const auto& m : derivative_completion_raw(blocks, w, rank, sys)) reps.insert(canonical_rep(m));
  return {reps.begin(), reps.end()};
}

}  // namespace lik
