#include "test_support.hpp"

#include <doctest.h>

using namespace lik;
using namespace lik::testing;

namespace {

std::vector<DensityDescriptor> toda_densities() {
  std::vector<DensityDescriptor> out = log_densities(toda());
  for (int rank = 1; rank <= 3; ++rank) {
    auto d = solve_density(build_density_candidate(toda(), toda_weights(), rank), toda());
    out.push_back(DensityDescriptor::polynomial(d.at(0).rho));
  }
  return out;
}

DiffOperator known_operator() { return parse_operator(read_file(fixture("toda_operator.txt")), toda().symbols()); }

bool theta_free_zero(const std::vector<ExtendedExpr>& v) {
  return std::all_of(v.begin(), v.end(), [](const ExtendedExpr& x) { return x.is_zero(); });
}

}  // namespace

TEST_SUITE("recursion") {
  TEST_CASE("rank matrix") {
    const auto& chain = toda_chain();
    auto rm = rank_matrix(chain[0], chain[1]);
    CHECK(rm.n == 2);
    CHECK(rm.entries == std::vector<Rational>{1, 0, 2, 1});
    CHECK(rank_matrix(chain[1], chain[2]) == rm);
    // Skipping a level doubles the gap.
    CHECK(rank_matrix(chain[0], chain[2]).entries == std::vector<Rational>{2, 1, 3, 2});
  }

  TEST_CASE("local candidate") {
    const auto& chain = toda_chain();
    auto rm = rank_matrix(chain[0], chain[1]);
    auto r0 = build_R0(toda(), toda_weights(), rm, chain[0], chain[1]);
    CHECK(r0.unknowns() == 16);
    CHECK(r0.render(toda().symbols()) ==
          "R[1,1] = c1*u[0]*I + c2*u[1]*I\n"
          "R[1,2] = c3*D^-1 + c4*I\n"
          "R[2,1] = c5*u[0]^2*I + c6*u[0]*u[1]*I + c7*u[1]^2*I + c8*v[-1]*I + c9*v[0]*I + c10*u[0]^2*D + "
          "c11*u[0]*u[1]*D + c12*u[1]^2*D + c13*v[-1]*D + c14*v[0]*D\n"
          "R[2,2] = c15*u[0]*I + c16*u[1]*I\n");
  }

  TEST_CASE("logarithmic density and its covariant") {
    auto logs = log_densities(toda());
    REQUIRE(logs.size() == 1);
    CHECK(logs[0].log_component == 1);
    CHECK(logs[0].render(toda().symbols()) == "ln(v[0])");
    auto row = covariant(logs[0], 2);
    CHECK(row[0].is_zero());
    CHECK(row[1] == OpEntry::multiplication(P("v[0]^-1")));
    auto poly = covariant(DensityDescriptor::polynomial(P("u[0]^2/2 + v[0]")), 2);
    CHECK(poly[0] == OpEntry::multiplication(P("u[0]")));
    CHECK(poly[1] == OpEntry::identity());
  }

  TEST_CASE("nonlocal candidate") {
    const auto& chain = toda_chain();
    auto rm = rank_matrix(chain[0], chain[1]);
    std::vector<std::vector<OpEntry>> cov;
    for (const auto& d : toda_densities()) cov.push_back(covariant(d, 2));
    auto r1 = build_R1(toda(), toda_weights(), chain, cov, rm);
    REQUIRE(r1.unknowns() == 1);
    CHECK(r1.render(toda().symbols()) ==
          "R[1,2] = c1*(v[-1] - v[0])*S*v[0]^-1\n"
          "R[2,2] = c1*(u[0]*v[0] - u[1]*v[0])*S*v[0]^-1\n");
  }

  TEST_CASE("the Toda recursion operator") {
    auto result = solve_recursion(toda(), toda_weights(), toda_chain(), toda_densities());
    REQUIRE(std::holds_alternative<RecursionSolution>(result));
    const auto& sol = std::get<RecursionSolution>(result);
    REQUIRE(sol.coefficients.size() == 17);
    for (std::size_t k = 0; k < 17; ++k) {
      CAPTURE(k + 1);
      long expected = 0;
      if (k + 1 == 1 || k + 1 == 3 || k + 1 == 4 || k + 1 == 9 || k + 1 == 14 || k + 1 == 16) expected = 1;
      if (k + 1 == 17) expected = -1;
      CHECK(sol.coefficients[k] == ParamCoeff(expected));
    }
    CHECK(sol.op == known_operator());
    CHECK(sol.verification.ok);
    CHECK(sol.verification.summary == "generates G(2), G(3), G(4): verified");
  }

  TEST_CASE("generation and defining residual") {
    auto r = known_operator();
    const auto& chain = toda_chain();
    auto g2 = op_apply(r, chain[0].components);
    for (std::size_t i = 0; i < 2; ++i) CHECK(g2[i] == ExtendedExpr(chain[1].components[i]));
    auto g3 = op_apply(r, g2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(g3[i] == ExtendedExpr(chain[2].components[i]));
    for (const auto& g : chain) CHECK(theta_free_zero(defining_residual(r, toda(), g.components)));

    auto v = verify_operator(r, toda(), chain[0].components, 3);
    REQUIRE(v.generation.size() == 3);
    for (const auto& step : v.generation) {
      CHECK(step.theta_free);
      CHECK(step.symmetry);
    }
    CHECK(v.probes == std::vector<bool>{true, true, true});
  }

  TEST_CASE("a wrong operator is rejected") {
    auto r = known_operator();
    r.at(1, 0) = OpEntry::multiplication(P("v[0]"));
    auto v = verify_operator(r, toda(), toda_chain()[0].components, 3);
    CHECK_FALSE(v.ok);
    CHECK(v.failure.rfind("generation", 0) == 0);
    CHECK_FALSE(theta_free_zero(defining_residual(r, toda(), known_g1())));
  }

  TEST_CASE("identity operator satisfies the defining identity but generates nothing new") {
    auto id = DiffOperator::identity(2);
    CHECK(theta_free_zero(defining_residual(id, toda(), known_g1())));
  }

  TEST_CASE("too short a chain is reported") {
    std::vector<SymmetryResult> one = {toda_chain()[0]};
    auto result = solve_recursion(toda(), toda_weights(), one, toda_densities());
    REQUIRE(std::holds_alternative<NoSolution>(result));
    CHECK(std::get<NoSolution>(result).family == "symmetry chain");
  }

  TEST_CASE("parameters must be fixed") {
    const auto& sys = toda_params();
    auto w = require_weights(compute_weights(sys), sys);
    auto result = solve_recursion(sys, w, toda_chain(), {});
    REQUIRE(std::holds_alternative<NoSolution>(result));
    CHECK(std::get<NoSolution>(result).family == "parameters");
  }
}
