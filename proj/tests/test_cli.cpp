#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilcs/catalog.hpp"
#include "nilcs/cli.hpp"
#include "report_schema.hpp"

using namespace nilcs;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NILCS_DATA_DIR) + "/" + name; }

Json parsed(const Outcome& o) { return Json::parse(o.out); }

void check_schema(const Json& doc) {
  const auto problems = schema::report_problems(doc);
  for (const auto& p : problems) INFO(p);
  CHECK(problems.empty());
}

}  // namespace

TEST_CASE("validate on kt4 exits 0") {
  const Outcome o = cli({"-i", "kt4", "--cmd", "validate"});
  CHECK(o.code == exit_ok);
  const Json doc = parsed(o);
  check_schema(doc);
  CHECK(doc["status"] == "pass");
  CHECK(doc["source"] == "builtin");
  CHECK(doc["algebra"]["step"] == 2);
  CHECK(doc["structures"][0]["integrable"] == true);
  CHECK_FALSE(doc["structures"][0].contains("series"));
}

TEST_CASE("suite on ch6 exits 0 with agreeing routes") {
  const Outcome o = cli({"-i", "ch6", "--cmd", "suite"});
  CHECK(o.code == exit_ok);
  const Json doc = parsed(o);
  check_schema(doc);
  CHECK(doc["failures"].empty());
  REQUIRE(doc["structures"][0].contains("suite"));
  CHECK_FALSE(doc["structures"][0].contains("series"));

  const Json series = parsed(cli({"-i", "ch6", "--cmd", "series"}));
  CHECK(series["structures"][0]["series"]["route_agreement"] == true);
  CHECK(series["structures"][0]["series"]["j0"] == 2);
}

TEST_CASE("report on every builtin is schema-valid and deterministic") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const Outcome a = cli({"-i", name});
    const Outcome b = cli({"-i", name});
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.err.empty());
    const Json doc = parsed(a);
    check_schema(doc);
    CHECK(doc["command"] == "report");
    CHECK(doc["structures"].size() == builtin(name).complex_structures.size());
  }
}

TEST_CASE("kt4 report values") {
  const Json doc = parsed(cli({"-i", "kt4"}));
  const Json& s = doc["structures"][0];
  CHECK(s["series"]["j0"] == 2);
  CHECK(s["series"]["d_asc"]["dims"] == Json{0, 2, 4});
  CHECK(s["classification"]["case"] == "k_zero");
  CHECK(s["classification"]["center_preserving"] == true);
  CHECK(doc["stratification"]["verdicts"][0]["status"] == "pass");
}

TEST_CASE("nn3 has no complex structures but still reports") {
  const Outcome o = cli({"-i", "nn3"});
  CHECK(o.code == exit_ok);
  const Json doc = parsed(o);
  check_schema(doc);
  CHECK(doc["structures"].empty());
  const Outcome s = cli({"-i", "nn3", "--cmd", "search"});
  CHECK(s.code == exit_ok);
  CHECK(parsed(s)["search"]["verdicts"][0]["status"] == "hypothesis-not-met");
}

TEST_CASE("search command") {
  const Outcome o = cli({"-i", "kt4", "--cmd", "search", "--seed", "5"});
  CHECK(o.code == exit_ok);
  const Json doc = parsed(o);
  check_schema(doc);
  CHECK(doc["search"]["found"] == true);
  CHECK(doc["search"]["seed"] == 5);
  CHECK(cli({"-i", "kt4", "--cmd", "search", "--seed", "5"}).out == o.out);

  const Outcome none = cli({"-i", "fil4", "--cmd", "search", "--restarts", "2"});
  CHECK(none.code == exit_failure);
  CHECK(parsed(none)["failures"] == Json{"search:search_found"});
}

TEST_CASE("invalid input files exit 1 with a structured error") {
  const Outcome jac = cli({"-i", data("jacobi_violation.json")});
  CHECK(jac.code == exit_failure);
  const Json doc = parsed(jac);
  check_schema(doc);
  CHECK(doc["status"] == "invalid-input");
  CHECK(doc["error"]["kind"] == "semantic");
  CHECK(doc["error"]["jacobi_triple"] == Json{1, 2, 3});
  CHECK_THAT(jac.err, Catch::Matchers::ContainsSubstring("(1, 2, 3)"));

  const Json syn = parsed(cli({"-i", data("syntax_error.json")}));
  CHECK(syn["error"]["kind"] == "syntax");
  CHECK(syn["error"]["line"] == 6);

  const Outcome missing = cli({"-i", data("no_such_file.json")});
  CHECK(missing.code == exit_failure);
  CHECK(parsed(missing)["error"]["kind"] == "input");

  CHECK(cli({"-i", data("zero_denominator.json")}).code == exit_failure);
  CHECK(cli({"-i", data("not_almost_complex.json")}).code == exit_failure);
}

TEST_CASE("a file input with J and strata is analysed like the builtin") {
  const Outcome o = cli({"-i", data("kt4.json")});
  CHECK(o.code == exit_ok);
  const Json file = parsed(o);
  const Json built = parsed(cli({"-i", "kt4"}));
  CHECK(file["source"] == "file");
  CHECK(file["algebra"] == built["algebra"]);
  CHECK(file["structures"][0]["series"] == built["structures"][0]["series"]);
  CHECK(file["structures"][0]["suite"] == built["structures"][0]["suite"]);
}

TEST_CASE("a failing statement gives exit 1 and names it") {
  const Outcome o = cli({"-i", data("k_proper_center_invariant.json")});
  CHECK(o.code == exit_failure);
  const Json doc = parsed(o);
  check_schema(doc);
  CHECK(doc["status"] == "fail");
  const auto& f = doc["failures"];
  CHECK(std::find(f.begin(), f.end(), Json("structure J:step2_k_case_predicts_j0")) != f.end());
  CHECK(std::find(f.begin(), f.end(), Json("structure J:step2_prediction")) != f.end());
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == exit_usage);
  CHECK(cli({"-i", "kt4", "--cmd", "frobnicate"}).code == exit_usage);
  CHECK(cli({"-i", "kt4", "--format", "xml"}).code == exit_usage);
  CHECK(cli({"-i", "kt4", "--restarts", "0"}).code == exit_usage);
  CHECK(cli({"-i", "kt4", "--bogus"}).code == exit_usage);
  const Outcome s = cli({"-i", "kt4", "--structure", "nope"});
  CHECK(s.code == exit_usage);
  CHECK(s.out.empty());
  CHECK_THAT(s.err, Catch::Matchers::ContainsSubstring("nope"));
}

TEST_CASE("--help exits 0") {
  const Outcome o = cli({"--help"});
  CHECK(o.code == exit_ok);
  CHECK_THAT(o.out, Catch::Matchers::ContainsSubstring("--input"));
}

TEST_CASE("--structure selects one complex structure") {
  const Json doc = parsed(cli({"-i", "hh6", "--structure", "swapped"}));
  REQUIRE(doc["structures"].size() == 1);
  CHECK(doc["structures"][0]["name"] == "swapped");
  CHECK(doc["structures"][0]["integrable"] == false);
  CHECK(doc["structures"][0]["nijenhuis_witnesses"][0]["pair"] == Json{1, 2});
}

TEST_CASE("markdown output carries the five series tables") {
  const Outcome o = cli({"-i", "kt4", "--format", "markdown"});
  CHECK(o.code == exit_ok);
  for (const char* heading : {"#### c_j (lower central)", "#### c^j (upper central)", "#### d^j (J-ascending)",
                              "#### d_j (J-descending)", "#### p_j"})
    CHECK_THAT(o.out, Catch::Matchers::ContainsSubstring(heading));
  CHECK_THAT(o.out, Catch::Matchers::ContainsSubstring("- j0: 2"));
  CHECK(cli({"-i", "kt4", "--format", "markdown"}).out == o.out);
  const Outcome bad = cli({"-i", data("jacobi_violation.json"), "--format", "markdown"});
  CHECK(bad.code == exit_failure);
  CHECK_THAT(bad.out, Catch::Matchers::ContainsSubstring("Error (semantic)"));
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "nilcs_cli_test_report.json";
  std::filesystem::remove(path);
  const Outcome o = cli({"-i", "ch6", "--out", path.string()});
  CHECK(o.code == exit_ok);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  CHECK(s.str() == cli({"-i", "ch6"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("the schema check rejects damaged reports") {
  const Json good = parsed(cli({"-i", "kt4"}));
  CHECK(schema::report_problems(good).empty());
  Json missing = good;
  missing["structures"][0]["series"].erase("p_desc");
  CHECK_FALSE(schema::report_problems(missing).empty());
  Json wrong = good;
  wrong["structures"][0]["suite"][0]["status"] = "maybe";
  CHECK_FALSE(schema::report_problems(wrong).empty());
  Json inconsistent = good;
  inconsistent["status"] = "fail";
  CHECK_FALSE(schema::report_problems(inconsistent).empty());
  Json numeric = good;
  numeric["structures"][0]["J"][0][0] = 0;
  CHECK_FALSE(schema::report_problems(numeric).empty());
}
