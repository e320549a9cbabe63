#include "test_support.hpp"

#include "lik/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace lik;
using namespace lik::testing;

namespace {

RunOptions options(const std::string& command, const std::string& system) {
  RunOptions o;
  o.command = command;
  o.system_path = fixture(system);
  return o;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("lik_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

RunOutput run_text(const std::string& command, const std::string& system_text) {
  RunOptions o;
  o.command = command;
  o.system_path = temp_file(command + ".sys", system_text);
  return run(o);
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("system files") {
    auto sys = parse_system(read_file(fixture("toda.sys")));
    CHECK(sys.components == std::vector<std::string>{"u", "v"});
    CHECK(sys.rhs == toda().rhs);
    auto params = parse_system(read_file(fixture("toda_params.sys")));
    CHECK(params.parameters == std::vector<std::string>{"a", "b"});
    CHECK(params.rhs[0] == P("a*v[-1] - v[0]"));
    CHECK(params.rhs[1] == P("v[0]*(b*u[0] - u[1])"));
    // Components are numbered by first appearance.
    auto swapped = parse_system("v' = v[0]*(u[0] - u[1])\nu' = v[-1] - v[0]\n");
    CHECK(swapped.components == std::vector<std::string>{"v", "u"});
  }

  TEST_CASE("system round trip") {
    for (const char* name : {"toda.sys", "toda_params.sys", "broken.sys"}) {
      auto sys = parse_system(read_file(fixture(name)));
      auto again = parse_system(render_system(sys));
      CHECK(again.components == sys.components);
      CHECK(again.parameters == sys.parameters);
      CHECK(again.rhs == sys.rhs);
    }
  }

  TEST_CASE("result expressions round trip") {
    Random rng(41);
    for (int trial = 0; trial < 200; ++trial) {
      LatticePoly p = rng.poly(2, 3, 3, 4, true);
      CHECK(P(render(p)) == p);
    }
  }

  TEST_CASE("parse diagnostics carry positions") {
    auto check_error = [](const std::string& text, int line, int column, const std::string& message) {
      try {
        parse_system(text);
        FAIL("expected a parse error for " << text);
      } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
        CHECK(contains(e.message(), message));
      }
    };
    check_error("u' = v[0]/u[0]\nv' = v[0]\n", 1, 10, "non-polynomial right-hand side");
    check_error("u' = v[-1] - w[0]\nv' = v[0]\n", 1, 14, "unknown symbol 'w'");
    check_error("u' = v[-1] - v[0]\n", 1, 14, "unknown symbol 'v'");
    check_error("# comment\nu' = u[0]^\n", 2, 11, "");
    CHECK_THROWS_AS(parse_system("u' = u[0]\nu' = u[1]\n"), ParseError);
    CHECK_THROWS_AS(parse_system("u' = u[x]\n"), ParseError);
  }

  TEST_CASE("parse errors exit with 1 and name the file") {
    auto out = run_text("weights", "u' = v[0]/u[0]\nv' = v[0]\n");
    CHECK(out.exit_code == kExitUsage);
    CHECK(contains(out.err, "line 1, column 10: non-polynomial right-hand side"));
    CHECK(out.out.empty());
  }

  TEST_CASE("weights command") {
    auto out = run(options("weights", "toda.sys"));
    CHECK(out.exit_code == kExitOk);
    CHECK(contains(out.out, "weights: w(u) = 1, w(v) = 2"));
    CHECK(run_text("weights", "u' = u[1]\n").exit_code == kExitNoResult);
    auto family = run_text("weights", "u' = u[0]*v[0] - u[1]*v[0]\nv' = v[0]*v[1]\n");
    CHECK(family.exit_code == kExitOk);
    CHECK(contains(family.out, "underdetermined"));
  }

  TEST_CASE("densities command") {
    auto o = options("densities", "toda.sys");
    o.max_rank = Rational(4);
    auto out = run(o);
    CHECK(out.exit_code == kExitOk);
    CHECK(contains(out.out, "rho = u[0]\n"));
    CHECK(contains(out.out, "rho = (1/2)*u[0]^2 + v[0]\n"));
    CHECK(contains(out.out, "rho = (1/3)*u[0]^3 + u[0]*v[-1] + u[0]*v[0]\n"));
    CHECK(contains(out.out, "flux = u[-1]*u[0]*v[-1] + v[-1]^2\n"));

    auto both = options("densities", "toda.sys");
    both.rank = Rational(2);
    both.max_rank = Rational(3);
    CHECK(run(both).exit_code == kExitUsage);

    auto none = options("densities", "toda_params.sys");
    none.rank = Rational(2);
    auto nothing = run(none);
    CHECK(nothing.exit_code == kExitNoResult);
    CHECK(contains(nothing.out, "a*b - 1 = 0: unresolved"));
  }

  TEST_CASE("symmetries command") {
    auto o = options("symmetries", "toda_params.sys");
    o.ranks = {3, 4};
    auto out = run(o);
    CHECK(out.exit_code == kExitOk);
    CHECK(contains(out.out, "branch a = 1, b = 1: 1 symmetry"));
    CHECK(contains(out.out, "under a = 1, b = 1:"));

    auto broken = options("symmetries", "broken.sys");
    broken.ranks = {3, 4};
    CHECK(run(broken).exit_code == kExitNoResult);

    auto levels = options("symmetries", "toda.sys");
    levels.levels = 3;
    auto chain = run(levels);
    CHECK(chain.exit_code == kExitOk);
    CHECK(contains(chain.out, "symmetry ranks (4, 5)"));
  }

  TEST_CASE("recursion command") {
    auto out = run(options("recursion", "toda.sys"));
    CHECK(out.exit_code == kExitOk);
    CHECK(contains(out.out,
                   "recursion operator:\n"
                   "  R[1,1] = u[0]*I\n"
                   "  R[1,2] = D^-1 + I + (-v[-1] + v[0])*S*v[0]^-1\n"
                   "  R[2,1] = v[0]*I + v[0]*D\n"
                   "  R[2,2] = u[1]*I + (-u[0]*v[0] + u[1]*v[0])*S*v[0]^-1\n"));
    CHECK(contains(out.out, "verdict: generates G(2), G(3), G(4): verified"));
  }

  TEST_CASE("recursion fails honestly on a broken system") {
    auto out = run(options("recursion", "broken.sys"));
    CHECK((out.exit_code == kExitNoResult || out.exit_code == kExitVerificationFailed));
    CHECK(contains(out.out + out.err, "symmetry chain"));
    CHECK_FALSE(contains(out.out, "recursion operator:"));
  }

  TEST_CASE("recursion needs parameter values") {
    auto o = options("recursion", "toda_params.sys");
    auto missing = run(o);
    CHECK(missing.exit_code == kExitNoResult);
    CHECK(contains(missing.out + missing.err, "parameters"));
    o.params = {{"a", Rational(1)}, {"b", Rational(1)}};
    CHECK(run(o).exit_code == kExitOk);
  }

  TEST_CASE("verify command") {
    for (const char* name : {"density_rank5.txt", "density_rank6.txt"}) {
      auto o = options("verify", "toda.sys");
      o.density_file = fixture(name);
      auto out = run(o);
      CHECK(out.exit_code == kExitOk);
      CHECK(contains(out.out, "conserved: yes"));
    }
    auto bad = options("verify", "toda.sys");
    bad.density_file = fixture("density_bad.txt");
    CHECK(run(bad).exit_code == kExitVerificationFailed);

    auto sym = options("verify", "toda.sys");
    sym.symmetry_file = fixture("symmetry_rank34.txt");
    CHECK(run(sym).exit_code == kExitOk);
    sym.symmetry_file = fixture("symmetry_bad.txt");
    CHECK(run(sym).exit_code == kExitVerificationFailed);

    auto op = options("verify", "toda.sys");
    op.operator_file = fixture("toda_operator.txt");
    CHECK(run(op).exit_code == kExitOk);
    op.operator_file = fixture("operator_bad.txt");
    auto rejected = run(op);
    CHECK(rejected.exit_code == kExitVerificationFailed);
    CHECK(contains(rejected.out, "verdict: generation"));

    auto vr = options("verify-recursion", "toda.sys");
    vr.operator_file = fixture("toda_operator.txt");
    CHECK(run(vr).exit_code == kExitOk);
    CHECK(run(options("verify", "toda.sys")).exit_code == kExitUsage);
  }

  TEST_CASE("reports are byte-deterministic") {
    for (bool json : {false, true}) {
      auto o = options("recursion", "toda.sys");
      o.json = json;
      auto first = run(o);
      auto second = run(o);
      CHECK(first.out == second.out);
      CHECK(first.err == second.err);
    }
  }

  TEST_CASE("JSON report") {
    auto o = options("densities", "toda.sys");
    o.max_rank = Rational(3);
    o.json = true;
    auto doc = nlohmann::ordered_json::parse(run(o).out);
    std::vector<std::string> keys;
    for (const auto& item : doc.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{"schema_version", "command", "system", "weights", "densities", "symmetries",
                                           "recursion_operator", "conditions", "verification"});
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["weights"]["values"]["v"] == "2");
    REQUIRE(doc["densities"].size() == 3);
    CHECK(doc["densities"][2]["flux"] == "u[-1]*u[0]*v[-1] + v[-1]^2");
    for (const auto& d : doc["densities"]) {
      CHECK(verify_density(toda(), P(d["rho"].get<std::string>()), P(d["flux"].get<std::string>())).conserved);
    }
  }

  TEST_CASE("assignments") {
    CHECK(parse_assignment("a=3/2") == std::pair<std::string, Rational>{"a", make_rational(3, 2)});
    CHECK(parse_assignment(" b = -1 ").first == "b");
    CHECK_THROWS_AS(parse_assignment("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_assignment("a=x"), std::invalid_argument);
  }
}
