#include "test_support.hpp"

#include <doctest.h>

using namespace lik;
using namespace lik::testing;

namespace {

OpEntry E(std::string_view text) { return parse_op_entry(text, toda_params().symbols()); }

std::string R(const OpEntry& e) { return e.render(toda_params().symbols()); }

const char* kTodaOperator =
    "R[1,1] = u[0]*I\n"
    "R[1,2] = D^-1 + I + (-v[-1] + v[0])*S*v[0]^-1\n"
    "R[2,1] = v[0]*I + v[0]*D\n"
    "R[2,2] = u[1]*I + (-u[0]*v[0] + u[1]*v[0])*S*v[0]^-1\n";

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("entry rendering") {
    CHECK(R(OpEntry::identity()) == "I");
    CHECK(R(OpEntry::shift_power(1)) == "D");
    CHECK(R(OpEntry::shift_power(-2)) == "D^-2");
    CHECK(R(OpEntry::inverse_difference()) == "S");
    CHECK(R(OpEntry()) == "0");
    CHECK(R(OpEntry::multiplication(P("u[0]*u[1]"))) == "u[0]*u[1]*I");
    CHECK(R(OpEntry::local_term(P("u[0] + v[0]"), 1)) == "(u[0] + v[0])*D");
    CHECK(R(OpEntry::sandwich(P("v[0] - v[-1]"), P("v[0]^-1"))) == "(-v[-1] + v[0])*S*v[0]^-1");
  }

  TEST_CASE("composition rules") {
    CHECK(op_compose(OpEntry::shift_power(1), OpEntry::inverse_difference()) == E("I + S"));
    CHECK(op_compose(OpEntry::inverse_difference(), OpEntry::shift_power(1)) == E("I + S"));
    CHECK(op_compose(OpEntry::inverse_difference(), E("D - I")) == OpEntry::identity());
    CHECK(op_compose(E("D - I"), OpEntry::inverse_difference()) == OpEntry::identity());
    CHECK(op_compose(OpEntry::shift_power(-1), OpEntry::inverse_difference()) == E("S - D^-1"));
    CHECK(op_compose(op_compose(OpEntry::multiplication(P("u[0]")), OpEntry::shift_power(1)),
                     OpEntry::multiplication(P("v[-1]"))) == E("u[0]*v[0]*D"));
    CHECK(op_compose(E("v[0]*I + v[0]*D"), E("D^-1 + I")) == E("v[0]*D^-1 + 2*v[0]*I + v[0]*D"));
    // Multiplication commutes past S only through the sandwich form.
    CHECK(op_compose(OpEntry::inverse_difference(), OpEntry::multiplication(P("v[0]"))) ==
          OpEntry::sandwich(LatticePoly(1L), P("v[0]")));
  }

  TEST_CASE("nonlocal composed with nonlocal is rejected") {
    CHECK_THROWS_AS(op_compose(OpEntry::inverse_difference(), OpEntry::inverse_difference()), std::domain_error);
  }

  TEST_CASE("sandwich terms are normalized") {
    OpEntry a = OpEntry::sandwich(P("2*u[0]"), P("v[0]"));
    OpEntry b = OpEntry::sandwich(P("u[0]"), P("2*v[0]"));
    CHECK(a == b);
    auto terms = a.nonlocal_terms();
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].left == P("2*u[0]"));
    CHECK(terms[0].right == P("v[0]"));
    CHECK((a - b).is_zero());
  }

  TEST_CASE("applying operators") {
    CHECK(apply(E("u[0]*D + D^-1"), P("v[0]")) == ExtendedExpr(P("u[0]*v[1] + v[-1]")));
    auto exact = apply(OpEntry::inverse_difference(), P("u[1] - u[0]"));
    CHECK(exact.is_theta_free());
    CHECK(exact.local() == P("u[0]"));
    auto formal = apply(OpEntry::inverse_difference(), P("u[1]"));
    REQUIRE(formal.theta().size() == 1);
    CHECK(formal.theta().begin()->first == M("u[0]"));
    CHECK(formal.local() == P("u[0]"));
    CHECK(formal.render(toda().symbols()) == "u[0] + Theta(u[0])");
  }

  TEST_CASE("shifting antidifferences") {
    ExtendedExpr theta = sum_operator(P("u[0]"));
    ExtendedExpr up = shift(theta, 1);
    CHECK(up.local() == P("u[0]"));
    CHECK(up.theta() == theta.theta());
    ExtendedExpr down = shift(theta, -1);
    CHECK(down.local() == P("-u[-1]"));
    CHECK(shift(shift(theta, 3), -3) == theta);
    // (D - I) applied to Theta(u) gives u back.
    CHECK(shift(theta, 1) - theta == ExtendedExpr(P("u[0]")));
  }

  TEST_CASE("nonlocal terms need local arguments") {
    CHECK_THROWS_AS(apply(OpEntry::inverse_difference(), sum_operator(P("u[0]"))), std::domain_error);
    CHECK(apply(E("u[0]*D"), sum_operator(P("v[0]"))).theta().size() == 1);
  }

  TEST_CASE("Frechet operator of the Toda flow") {
    auto fp = frechet_operator(toda().rhs, 2);
    CHECK(fp.at(0, 0).is_zero());
    CHECK(fp.at(0, 1) == E("D^-1 - I"));
    CHECK(fp.at(1, 0) == E("v[0]*I - v[0]*D"));
    CHECK(fp.at(1, 1) == E("(u[0] - u[1])*I"));
    auto via_operator = op_apply(fp, known_g1());
    auto direct = frechet_apply(toda().rhs, known_g1());
    for (std::size_t i = 0; i < 2; ++i) CHECK(via_operator[i] == ExtendedExpr(direct[i]));
    CHECK(direct == epsilon_oracle(toda().rhs, known_g1(), 2));
  }

  TEST_CASE("Frechet derivative of an operator along the flow") {
    DiffOperator m(1);
    m.at(0, 0) = OpEntry::multiplication(P("v[0]"));
    auto sys = parse_system("u' = v[-1] - v[0]\nv' = v[0]*(u[0] - u[1])\n");
    DiffOperator two(2);
    two.at(1, 1) = OpEntry::sandwich(P("v[0]"), P("v[0]^-1"));
    auto d = op_frechet(two, sys);
    // d/dt (v (D-I)^{-1} 1/v) = v' (D-I)^{-1} 1/v - v (D-I)^{-1} v'/v^2.
    OpEntry expected = OpEntry::sandwich(P("v[0]*(u[0] - u[1])"), P("v[0]^-1"));
    expected -= OpEntry::sandwich(P("v[0]"), P("(u[0] - u[1])*v[0]^-1"));
    CHECK(d.at(1, 1) == expected);
    CHECK(d.at(0, 0).is_zero());
    DiffOperator local(2);
    local.at(0, 0) = OpEntry::local_term(P("u[0]^2"), 1);
    CHECK(op_frechet(local, sys).at(0, 0) == OpEntry::local_term(P("2*u[0]*(v[-1] - v[0])"), 1));
  }

  TEST_CASE("entry ranks") {
    const auto& w = toda_weights();
    CHECK(entry_rank(E("u[0]*I + u[1]*D"), w) == Rational(1));
    CHECK(entry_rank(E("D^-1 + I + (v[0] - v[-1])*S*(1/v[0])"), w) == Rational(0));
    CHECK_FALSE(entry_rank(E("u[0]*I + v[0]*D"), w).has_value());
    CHECK_FALSE(entry_rank(OpEntry(), w).has_value());
  }

  TEST_CASE("operator text round trip") {
    auto op = parse_operator(kTodaOperator, toda().symbols());
    CHECK(op.render(toda().symbols()) == kTodaOperator);
    auto fixture_op = parse_operator(read_file(fixture("toda_operator.txt")), toda().symbols());
    CHECK(fixture_op == op);
  }

  TEST_CASE("operator parse errors") {
    auto symbols = toda().symbols();
    CHECK_THROWS_AS(parse_operator("R[3,1] = I\n", symbols), ParseError);
    CHECK_THROWS_AS(parse_operator("R[1,1] = I\nR[1,1] = D\n", symbols), ParseError);
    CHECK_THROWS_AS(parse_operator("R[1,1] = u[0]/D\n", symbols), ParseError);
    try {
      parse_operator("R[1,1] = u[0]*I\nR[1,2] = D^-1 + (I\n", symbols);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 9);
    }
  }

  TEST_CASE("the Toda recursion operator maps G(1) to G(2)") {
    auto op = parse_operator(kTodaOperator, toda().symbols());
    auto image = op_apply(op, known_g1());
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(image[i].is_theta_free());
      CHECK(image[i].local() == known_g2()[i]);
    }
  }
}
