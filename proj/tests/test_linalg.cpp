#include "test_support.hpp"

#include <doctest.h>

using namespace lik;
using namespace lik::testing;

namespace {

LinearSystem::Row row(std::initializer_list<std::pair<std::size_t, ParamCoeff>> entries) {
  LinearSystem::Row r;
  for (const auto& [k, c] : entries) r[k] = c;
  return r;
}

ParamCoeff param(std::size_t k) { return ParamCoeff::parameter(k); }

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("reduced row echelon form") {
    RationalMatrix m = {{2, 4, 2}, {1, 2, 3}};
    auto pivots = rref(m, 3);
    CHECK(pivots == std::vector<std::size_t>{0, 2});
    CHECK(m[0] == std::vector<Rational>{1, 2, 0});
    CHECK(m[1] == std::vector<Rational>{0, 0, 1});
  }

  TEST_CASE("rank-3 density equations") {
    // 3c1 - c2 = 0, c3 - 3c1 = 0, c3 - c2 = 0.
    LinearSystem sys(3);
    sys.add_equation(row({{0, ParamCoeff(3L)}, {1, ParamCoeff(-1L)}}));
    sys.add_equation(row({{0, ParamCoeff(-3L)}, {2, ParamCoeff(1L)}}));
    sys.add_equation(row({{1, ParamCoeff(-1L)}, {2, ParamCoeff(1L)}}));
    sys.add_equation(row({{1, ParamCoeff(1L)}, {2, ParamCoeff(-1L)}}));
    auto out = nullspace(sys);
    REQUIRE(out.basis.size() == 1);
    CHECK(out.basis[0] == std::vector<ParamCoeff>{ParamCoeff(make_rational(1, 3)), ParamCoeff(1L), ParamCoeff(1L)});
    for (const auto& r : sys.equations()) CHECK(residual(r, out.basis[0]).is_zero());
  }

  TEST_CASE("only the trivial solution") {
    LinearSystem sys(2);
    sys.add_equation(row({{0, ParamCoeff(1L)}}));
    sys.add_equation(row({{1, ParamCoeff(1L)}}));
    CHECK(nullspace(sys).empty());
    auto branches = parametric_solve(sys, 0);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].substitutions.empty());
    CHECK_FALSE(branches[0].has_candidate());
  }

  TEST_CASE("duplicate and zero equations are dropped") {
    LinearSystem sys(2);
    sys.add_equation(row({{0, ParamCoeff(2L)}, {1, ParamCoeff(-2L)}}));
    sys.add_equation(row({{0, ParamCoeff(-1L)}, {1, ParamCoeff(1L)}}));
    sys.add_equation(row({{0, ParamCoeff()}}));
    CHECK(sys.equations().size() == 1);
  }

  TEST_CASE("nullspace refuses parameters") {
    LinearSystem sys(1);
    sys.add_equation(row({{0, param(0)}}));
    CHECK(sys.has_parameters());
    CHECK_THROWS_AS(nullspace(sys), std::invalid_argument);
  }

  TEST_CASE("normalization helpers") {
    std::vector<ParamCoeff> v = {ParamCoeff(2L), param(0), ParamCoeff(4L), ParamCoeff()};
    CHECK(last_rational_entry(v) == std::size_t{2});
    auto n = normalize_vector(v, 0, 1);
    CHECK(n[2] == ParamCoeff(2L));
    CHECK(n[1] == ParamCoeff(make_rational(1, 2)) * param(0));
  }

  TEST_CASE("parametric solve splits on a pivot factor") {
    // (a - 1) c1 = 0, c2 - b c1 = 0.
    LinearSystem sys(2);
    sys.add_equation(row({{0, param(0) - ParamCoeff(1L)}}));
    sys.add_equation(row({{1, ParamCoeff(1L)}, {0, -param(1)}}));
    auto branches = parametric_solve(sys, 2);
    REQUIRE(branches.size() == 2);
    int with_candidate = 0;
    for (const auto& b : branches) {
      CHECK(b.status == ParametricBranch::Status::Solved);
      auto conditions = b.render_conditions({"a", "b"});
      if (b.has_candidate()) {
        ++with_candidate;
        CHECK(conditions == std::vector<std::string>{"a = 1"});
        REQUIRE(b.outcome.basis.size() == 1);
        CHECK(b.outcome.basis[0][1] == param(1) * b.outcome.basis[0][0]);
      } else {
        CHECK(conditions.empty());
        REQUIRE(b.nonzero.size() == 1);
        CHECK(b.nonzero[0] == param(0) - ParamCoeff(1L));
      }
    }
    CHECK(with_candidate == 1);
  }

  TEST_CASE("branch depth is bounded") {
    // (a - 1)(b - 2) c1 = 0 needs two nested splits.
    LinearSystem sys(1);
    sys.add_equation(row({{0, (param(0) - ParamCoeff(1L)) * (param(1) - ParamCoeff(2L))}}));
    auto shallow = parametric_solve(sys, 2, 0);
    bool exhausted = false;
    for (const auto& b : shallow) exhausted |= b.status == ParametricBranch::Status::DepthExhausted;
    CHECK(exhausted);
    auto deep = parametric_solve(sys, 2, 6);
    for (const auto& b : deep) CHECK(b.status == ParametricBranch::Status::Solved);
  }

  TEST_CASE("branch depth from the environment") {
    ::setenv("LIK_BRANCH_DEPTH", "3", 1);
    CHECK(branch_depth_from_env() == 3);
    ::unsetenv("LIK_BRANCH_DEPTH");
    CHECK(branch_depth_from_env() == 6);
  }

  TEST_CASE("every branch solution satisfies the substituted equations") {
    Random rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
      LinearSystem sys(n);
      int rows = rng.integer(1, 3);
      for (int r = 0; r < rows; ++r) {
        LinearSystem::Row eq;
        for (std::size_t k = 0; k < n; ++k) {
          int kind = rng.integer(0, 3);
          if (kind == 0) continue;
          ParamCoeff c(rng.rational());
          if (kind == 3) c = c * (param(static_cast<std::size_t>(rng.integer(0, 1))) - ParamCoeff(rng.integer(-2, 2)));
          eq[k] = c;
        }
        sys.add_equation(eq);
      }
      for (const auto& b : parametric_solve(sys, 2)) {
        if (b.status != ParametricBranch::Status::Solved) continue;
        for (const auto& x : b.outcome.basis) {
          for (const auto& eq : sys.equations()) {
            ParamCoeff res = residual(eq, x);
            for (const auto& [p, value] : b.substitutions) res = res.substitute(p, value);
            // Basis vectors may carry pivot factors assumed nonzero; the
            // residual itself must vanish identically.
            CHECK(res.is_zero());
          }
        }
      }
    }
  }
}
