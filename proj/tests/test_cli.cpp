#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "opdiag/report.hpp"

using namespace opdiag;

namespace {

const char* kExample1 = R"({
  "rows": 3, "cols": 3, "kind": "polynomial", "order": 3,
  "coefficients": {
    "0": [["1","0","0"],["0","0","0"],["0","0","0"]],
    "1": [["0","0","0"],["0","0","1"],["0","0","0"]],
    "2": [["0","0","0"],["0","1","0"],["0","0","1"]],
    "3": [["0","0","1"],["0","0","1"],["1","0","0"]]
  }
})";

ErrorKind kind_of(const std::string& text) {
  try {
    parse_family(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for: " << text);
  return ErrorKind::Internal;
}

std::string family_text(const std::string& coefficients, const std::string& extra = "") {
  return R"({"rows": 2, "cols": 2, "kind": "polynomial", "order": 2, )" + extra + R"("coefficients": )" + coefficients + "}";
}

}  // namespace

TEST_CASE("parse example 1") {
  const FamilySpec spec = parse_family(kExample1);
  CHECK(spec.rows == 3);
  CHECK(spec.order == 3);
  CHECK(spec.coefficients.size() == 4);
  CHECK(spec.analytic_series().equal_through(fixtures::example1(), 6));
  CHECK(spec.analytic_series().is_polynomial());
}

TEST_CASE("parse errors") {
  CHECK(kind_of(family_text(R"({"0": [["2/0","0"],["0","1"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"0": [["1","0"],["0","1"]], "0": [["1","0"],["0","1"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"-1": [["1","0"],["0","1"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"0": [["1","0"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"0": [["1","0","0"],["0","1","0"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"3": [["1","0"],["0","1"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"x": [["1","0"],["0","1"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"0": [["1.5","0"],["0","1"]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text(R"({"0": [[1.5,0],[0,1]]})")) == ErrorKind::Input);
  CHECK(kind_of(family_text("{}", R"("color": "red", )")) == ErrorKind::Input);
  CHECK(kind_of(R"({"rows": 2})") == ErrorKind::Input);
  CHECK(kind_of("not json") == ErrorKind::Input);
  try {
    parse_family(family_text(R"({"0": [["1","0"],["0","1"]], "0": [["1","0"],["0","1"]]})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  try {
    parse_family(family_text(R"({"0": [["2/0","0"],["0","1"]]})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("malformed rational") != std::string::npos);
  }
}

TEST_CASE("declared pole normalizes the family") {
  const FamilySpec spec = parse_family(family_text(R"({"-1": [["1","0"],["0","1"]], "1": [["0","1"],["0","0"]]})", R"("pole": 1, )"));
  const Series l = spec.analytic_series();
  CHECK(l.trunc_order() == 3);
  CHECK(l.coefficient(0) == fixtures::eye(2));
  CHECK(is_zero(l.coefficient(1)));
  CHECK(l.coefficient(2) == fixtures::mat({{0, 1}, {0, 0}}));
}

TEST_CASE("serialize is canonical and round-trips") {
  const std::string messy = family_text(R"({"2": [["2/4", 3],["-0","+1"]], "0": [["1","0"],["0","1"]]})");
  const FamilySpec spec = parse_family(messy);
  const std::string canonical = serialize_family(spec);
  CHECK(canonical.find("\"1/2\"") != std::string::npos);
  CHECK(canonical.find("\"-0\"") == std::string::npos);
  CHECK(canonical.find("\"0\": [") < canonical.find("\"2\": ["));
  CHECK(serialize_family(parse_family(canonical)) == canonical);
}

TEST_CASE("diagonalize command on example 1") {
  CommandOptions o;
  o.order = 12;
  const Json r = run_command("diagonalize", parse_family(kExample1), o);
  CHECK(r["k"] == 3);
  CHECK(r["residual"]["exact_zero"] == true);
  CHECK(r["residual"]["checked_through"] == 12);
  const Json& d = r["delta_polynomial"]["coefficients"];
  CHECK(d[1]["matrix"] == Json::parse(R"([["0","0","0"],["0","0","1"],["0","0","0"]])"));
  CHECK(d[3]["matrix"] == Json::parse(R"([["0","0","0"],["0","0","0"],["0","-1","0"]])"));
  CHECK(r["phi"]["coefficients"].size() == 13);
}

TEST_CASE("invert command") {
  const FamilySpec constant = parse_family(R"({"rows": 2, "cols": 2, "kind": "polynomial", "order": 0,
    "coefficients": {"0": [["2","1"],["1","1"]]}})");
  CommandOptions o;
  o.order = 3;
  const Json r = run_command("invert", constant, o);
  CHECK(r["pole_order"] == 0);
  CHECK(r["inverse"]["coefficients"][0]["matrix"] == Json::parse(R"([["1","-1"],["-1","2"]])"));
  CHECK(r["inverse"]["coefficients"][1]["matrix"] == Json::parse(R"([["0","0"],["0","0"]])"));

  // M(eps) = eps^{-1} I, so M^{-1} = eps I: the pole order folds back to -1.
  const FamilySpec pole = parse_family(family_text(R"({"-1": [["1","0"],["0","1"]]})", R"("pole": 1, )"));
  const Json p = run_command("invert", pole, o);
  CHECK(p["pole_order"] == -1);
  CHECK(p["inverse"]["coefficients"][0]["power"] == 1);
}

TEST_CASE("verify command on example 1") {
  const Json r = run_command("verify", parse_family(kExample1));
  CHECK(r["toeplitz_nullities"] == Json::parse("[2,3,4,4]"));
  CHECK(r["all_passed"] == true);
  CHECK(report_exit_code(r) == 0);
  bool saw_oracle = false, saw_lemma2 = false;
  for (const auto& c : r["checks"]) {
    if (c["name"] == "oracle_inverse") saw_oracle = c["passed"].get<bool>();
    if (c["name"] == "lemma2") saw_lemma2 = c["passed"].get<bool>();
  }
  CHECK(saw_oracle);
  CHECK(saw_lemma2);
}

TEST_CASE("other commands") {
  const FamilySpec spec = parse_family(kExample1);
  const Json a = run_command("analyze", spec);
  CHECK(a["k"] == 3);
  CHECK(a["generic_rank"] == 3);
  CHECK(a["stages"].size() == 4);
  CHECK(a["stages"][2]["dim_range"] == 0);

  const Json s = run_command("smith", spec);
  CHECK(s["exponents"] == Json::parse("[0,1,3]"));

  CommandOptions j;
  j.jordan_length = 3;
  const Json jc = run_command("jordan", spec, j);
  CHECK(jc["chain_space_dim"] == 4);
  CHECK(jc["toeplitz_nullity"] == 4);
  CHECK(jc["chains"].size() == 4);

  const Json lin = run_command("linearize", spec);
  CHECK(lin["kbar"] == 1);
  CHECK(lin["bound_holds"] == true);

  CHECK_THROWS_AS(run_command("jordan", spec), Error);
  CHECK_THROWS_AS(run_command("bogus", spec), Error);
}

TEST_CASE("reports are deterministic and exact") {
  const FamilySpec spec = parse_family(kExample1);
  const std::string a = run_command("verify", spec).dump();
  const std::string b = run_command("verify", spec).dump();
  CHECK(a == b);
  CHECK(a.find("0.") == std::string::npos);  // no floating point anywhere
  CHECK(a.find("e+") == std::string::npos);
}

TEST_CASE("given complements reproduce the pivot result on example 1") {
  const FamilySpec spec = parse_family(kExample1);
  CommandOptions o;
  o.complements = parse_complements(R"({
    "kernel_complements": {"1": [["1"],["0"],["0"]], "2": [["0"],["0"],["1"]], "3": [], "4": [["0"],["1"],["0"]]},
    "range_complements": {"1": [["0","0"],["1","0"],["0","1"]], "2": [["0"],["0"],["1"]], "3": [["0"],["0"],["1"]], "4": []}
  })", 3, 3);
  o.given_complements = true;
  const Json given = run_command("diagonalize", spec, o);
  Json pivot = run_command("diagonalize", spec);
  CHECK(given["complement_strategy"] == "given");
  pivot["complement_strategy"] = "given";
  CHECK(given == pivot);

  CHECK_THROWS_AS(parse_complements(R"({"nope": {}})", 3, 3), Error);
  CHECK_THROWS_AS(parse_complements(R"({"kernel_complements": {"0": []}})", 3, 3), Error);
}

TEST_CASE("text rendering prints eps polynomials") {
  const Json r = run_command("diagonalize", parse_family(kExample1));
  const std::string text = render_text(r);
  CHECK(text.find("-eps^3") != std::string::npos);
  CHECK(text.find("O(eps^13)") != std::string::npos);
  CHECK(text.find("k: 3") != std::string::npos);
}
