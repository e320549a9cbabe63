#include "test_support.hpp"

#include <doctest.h>

using namespace lik;
using namespace lik::testing;

namespace {

bool all_zero(const std::vector<LatticePoly>& v) {
  return std::all_of(v.begin(), v.end(), [](const LatticePoly& p) { return p.is_zero(); });
}

}  // namespace

TEST_SUITE("symmetry") {
  TEST_CASE("rank (3,4) candidate") {
    auto c = build_symmetry_candidate(toda(), toda_weights(), {3, 4});
    CHECK(c.unknowns() == 17);
    CHECK(c.blocks[0].size() == 5);
    CHECK(c.blocks[1].size() == 12);
    auto text = c.render(toda().symbols());
    CHECK(text[0] == "c1*u[0]^3 + c2*u[-1]*v[-1] + c3*u[0]*v[-1] + c4*u[0]*v[0] + c5*u[1]*v[0]");
    CHECK(text[1] ==
          "c6*u[0]^4 + c7*u[-1]^2*v[-1] + c8*u[-1]*u[0]*v[-1] + c9*u[0]^2*v[-1] + c10*v[-2]*v[-1] + "
          "c11*v[-1]^2 + c12*u[0]^2*v[0] + c13*u[0]*u[1]*v[0] + c14*u[1]^2*v[0] + c15*v[-1]*v[0] + "
          "c16*v[0]^2 + c17*v[0]*v[1]");
  }

  TEST_CASE("rank (3,4) coefficients") {
    auto c = build_symmetry_candidate(toda(), toda_weights(), {3, 4});
    auto results = solve_symmetry(c, toda());
    REQUIRE(results.size() == 1);
    std::vector<long> expected = {0, -1, -1, 1, 1, 0, 0, 0, 0, 0, 0, -1, 0, 1, -1, 0, 1};
    REQUIRE(results[0].coefficients.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CAPTURE(k);
      CHECK(results[0].coefficients[k] == ParamCoeff(expected[k]));
    }
  }

  TEST_CASE("first two symmetries") {
    auto g1 = solve_symmetry(build_symmetry_candidate(toda(), toda_weights(), {2, 3}), toda());
    REQUIRE(g1.size() == 1);
    CHECK(g1[0].components == known_g1());
    auto g2 = solve_symmetry(build_symmetry_candidate(toda(), toda_weights(), {3, 4}), toda());
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].components == known_g2());
    CHECK(all_zero(symmetry_residual(toda(), known_g1())));
    CHECK(all_zero(symmetry_residual(toda(), known_g2())));
  }

  TEST_CASE("the flow itself is a symmetry and a perturbed one is not") {
    CHECK(all_zero(symmetry_residual(toda(), toda().rhs)));
    CHECK_FALSE(all_zero(symmetry_residual(toda(), V("v[0]*(u[0] + u[1])", "v[0]*(u[1]^2 - u[0]^2)"))));
  }

  TEST_CASE("choosing the normalized unknown") {
    auto c = build_symmetry_candidate(toda(), toda_weights(), {3, 4});
    // Unknown c4 (index 3) set to 1 gives the same G(2); c2 set to 1 flips it.
    auto same = solve_symmetry(c, toda(), std::size_t{3});
    REQUIRE(same.size() == 1);
    CHECK(same[0].components == known_g2());
    auto flipped = solve_symmetry(c, toda(), std::size_t{1});
    REQUIRE(flipped.size() == 1);
    CHECK(flipped[0].components[0] == -known_g2()[0]);
    // A zero unknown cannot be normalized; the default is used instead.
    auto fallback = solve_symmetry(c, toda(), std::size_t{0});
    CHECK(fallback[0].components == known_g2());
  }

  TEST_CASE("higher symmetries") {
    const auto& chain = toda_chain();
    REQUIRE(chain.size() == 3);
    for (const auto& g : chain) CHECK(all_zero(symmetry_residual(toda(), g.components)));
    CHECK(chain[2].ranks == std::vector<Rational>{4, 5});
  }

  TEST_CASE("ranks with no candidate") {
    CHECK_THROWS_AS(build_symmetry_candidate(toda(), toda_weights(), {0, 0}), std::runtime_error);
    CHECK_THROWS_AS(build_symmetry_candidate(toda(), toda_weights(), {1}), std::invalid_argument);
    CHECK(rhs_ranks(toda(), toda_weights()) == std::vector<Rational>{2, 3});
  }

  TEST_CASE("parameter classification at ranks (3,4)") {
    const auto& sys = toda_params();
    auto w = require_weights(compute_weights(sys), sys);
    auto branches = solve_symmetry_branches(build_symmetry_candidate(sys, w, {3, 4}), sys);
    int with_symmetry = 0;
    for (const auto& b : branches) {
      CHECK(b.status == ParametricBranch::Status::Solved);
      if (b.results.empty()) continue;
      ++with_symmetry;
      CHECK(b.conditions == std::vector<std::string>{"a = 1", "b = 1"});
      REQUIRE(b.results.size() == 1);
      CHECK(b.results[0].components == known_g2());
    }
    CHECK(with_symmetry == 1);
    CHECK(branches.size() == 3);
  }

  TEST_CASE("fixing a = 1 leaves the condition b = 1") {
    auto sys = toda_params().with_parameter(0, ParamCoeff(1L));
    auto w = require_weights(compute_weights(sys), sys);
    auto branches = solve_symmetry_branches(build_symmetry_candidate(sys, w, {3, 4}), sys);
    std::vector<std::vector<std::string>> with_symmetry;
    for (const auto& b : branches) {
      if (!b.results.empty()) with_symmetry.push_back(b.conditions);
    }
    CHECK(with_symmetry == std::vector<std::vector<std::string>>{{"b = 1"}});
  }

  TEST_CASE("a fixed non-integrable parameter value has no rank (3,4) symmetry") {
    auto sys = parse_system(read_file(fixture("broken.sys")));
    auto w = require_weights(compute_weights(sys), sys);
    CHECK(solve_symmetry(build_symmetry_candidate(sys, w, {3, 4}), sys).empty());
    // The flow is still a (trivial) symmetry at ranks (2,3).
    auto trivial = solve_symmetry(build_symmetry_candidate(sys, w, {2, 3}), sys);
    REQUIRE(trivial.size() == 1);
  }
}
