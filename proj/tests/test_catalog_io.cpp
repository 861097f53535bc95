#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "nilcs/catalog.hpp"
#include "nilcs/io.hpp"
#include "nilcs/j_series.hpp"
#include "oracles.hpp"

using namespace nilcs;
using catalog_detail::span_of;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(NILCS_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string algebra_text(std::size_t dim, const std::string& brackets) {
  return "{\"dim\": " + std::to_string(dim) + ", \"brackets\": [" + brackets + "]}";
}

template <class Error>
Error expect_error(const std::string& text) {
  try {
    parse_algebra_file(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised for " << text);
  throw;
}

}  // namespace

TEST_CASE("kt4.json parses to the builtin kt4") {
  const AlgebraFile f = parse_algebra_file(read("kt4.json"));
  const CatalogEntry kt4 = builtin("kt4");
  CHECK(f.algebra == kt4.algebra);
  REQUIRE(f.j.has_value());
  CHECK(*f.j == kt4.complex_structures[0].j);
  REQUIRE(f.strata.has_value());
  CHECK(*f.strata == kt4.stratifications[0].strata);
}

TEST_CASE("rational forms accepted in files") {
  const std::string text = algebra_text(3, R"({"i": 1, "j": 2, "out": {"3": {"num": -6, "den": 4}}})");
  const AlgebraFile f = parse_algebra_file(text);
  CHECK(f.algebra.basis_bracket(0, 1) == Vector{0, 0, Rational(-3, 2)});
  const AlgebraFile g = parse_algebra_file(algebra_text(3, R"({"i": 1, "j": 2, "out": {"3": "−3/2"}})"));
  CHECK(g.algebra == f.algebra);
  const AlgebraFile h = parse_algebra_file(algebra_text(3, R"({"i": 1, "j": 2, "out": {"3": 7}})"));
  CHECK(h.algebra.basis_bracket(0, 1) == Vector{0, 0, 7});
}

TEST_CASE("a zero denominator is a semantic error") {
  const SemanticError e = expect_error<SemanticError>(read("zero_denominator.json"));
  CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("brackets[0].out.3"));
  CHECK_FALSE(e.jacobi_triple().has_value());
  CHECK_THROWS_AS(
      parse_algebra_file(algebra_text(3, R"({"i": 1, "j": 2, "out": {"3": {"num": 1, "den": -2}}})")),
      SemanticError);
}

TEST_CASE("malformed JSON reports line and column") {
  const SyntaxError e = expect_error<SyntaxError>(read("syntax_error.json"));
  CHECK(e.line() == 6);
  CHECK(e.column() == 1);
  const SyntaxError first = expect_error<SyntaxError>("{\"dim\": 4,, }");
  CHECK(first.line() == 1);
  CHECK(first.column() == 11);
}

TEST_CASE("a Jacobi violation names the failing triple") {
  const SemanticError e = expect_error<SemanticError>(read("jacobi_violation.json"));
  REQUIRE(e.jacobi_triple().has_value());
  CHECK(*e.jacobi_triple() == std::array<std::size_t, 3>{1, 2, 3});
  CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("(1, 2, 3)"));
}

TEST_CASE("J must square to minus the identity") {
  const SemanticError e = expect_error<SemanticError>(read("not_almost_complex.json"));
  CHECK_THAT(e.what(), Catch::Matchers::StartsWith("J: "));
  const SemanticError odd = expect_error<SemanticError>(R"({"dim": 1, "J": [["0"]]})");
  CHECK_THAT(odd.what(), Catch::Matchers::ContainsSubstring("odd dimension"));
}

TEST_CASE("structural errors in the bracket list") {
  CHECK_THAT(expect_error<SemanticError>(algebra_text(3, R"({"i": 2, "j": 1, "out": {"3": "1"}})")).what(),
             Catch::Matchers::ContainsSubstring("i < j"));
  CHECK_THAT(expect_error<SemanticError>(algebra_text(3, R"({"i": 1, "j": 1, "out": {}})")).what(),
             Catch::Matchers::ContainsSubstring("i < j"));
  CHECK_THAT(expect_error<SemanticError>(algebra_text(3, R"({"i": 1, "j": 4, "out": {}})")).what(),
             Catch::Matchers::ContainsSubstring("outside 1..3"));
  CHECK_THAT(expect_error<SemanticError>(algebra_text(3, R"({"i": 1, "j": 2, "out": {"4": "1"}})")).what(),
             Catch::Matchers::ContainsSubstring("out of range"));
  CHECK_THAT(expect_error<SemanticError>(algebra_text(3, R"({"i": 1, "j": 2, "out": {"x": "1"}})")).what(),
             Catch::Matchers::ContainsSubstring("not an index"));
  CHECK_THAT(expect_error<SemanticError>(algebra_text(3, R"({"i": 1, "j": 2, "out": {"3": "1/2/3"}})")).what(),
             Catch::Matchers::ContainsSubstring("brackets[0].out.3"));
  CHECK_THROWS_AS(parse_algebra_file(R"({"brackets": []})"), SemanticError);
  CHECK_THROWS_AS(parse_algebra_file(R"([1, 2])"), SemanticError);
  CHECK_THROWS_AS(parse_algebra_file(R"({"dim": 2, "J": [["0", "-1"]]})"), SemanticError);
  CHECK_THROWS_AS(parse_algebra_file(R"({"dim": 2, "strata": [[["1"]]]})"), SemanticError);
}

TEST_CASE("property: write then parse is the identity on catalog files and their conjugates") {
  std::mt19937_64 rng(71);
  for (const auto& name : catalog_names()) {
    const CatalogEntry entry = builtin(name);
    for (const auto& s : entry.complex_structures) {
      AlgebraFile f{entry.algebra, s.j, std::nullopt};
      if (!entry.stratifications.empty()) f.strata = entry.stratifications.front().strata;
      for (int trial = 0; trial < 6; ++trial) {
        INFO(name << "/" << s.name << " trial " << trial);
        const std::string text = write_algebra_file(f);
        const AlgebraFile back = parse_algebra_file(text);
        CHECK(back.algebra == f.algebra);
        CHECK(back.j == f.j);
        CHECK(back.strata == f.strata);
        CHECK(write_algebra_file(back) == text);
        const Matrix p = oracle::random_invertible(rng, entry.algebra.dim());
        const Matrix p_inv = inverse(p);
        f.algebra = change_of_basis(f.algebra, p);
        f.j = conjugate(*f.j, p);
        if (f.strata)
          for (auto& l : f.strata->layers) l = l.image(p_inv);
      }
    }
  }
}

TEST_CASE("series reports survive a JSON round trip") {
  for (const auto& name : catalog_names()) {
    const CatalogEntry entry = builtin(name);
    for (const auto& s : entry.complex_structures) {
      INFO(name << "/" << s.name);
      const SeriesReport r = nilpotent_step(entry.algebra, s.j);
      const Json doc = to_json(r);
      const SeriesReport back = series_report_from_json(Json::parse(doc.dump()), entry.algebra.dim());
      CHECK(back == r);
      CHECK(to_json(back).dump() == doc.dump());
    }
  }
}

TEST_CASE("kt4 series report keys and values") {
  const CatalogEntry kt4 = builtin("kt4");
  const Json doc = to_json(nilpotent_step(kt4.algebra, kt4.complex_structures[0].j));
  CHECK(doc.at("j0") == 2);
  CHECK(doc.at("step") == 2);
  CHECK(doc.at("routes") == Json{{"d_asc", 2}, {"p_desc", 2}, {"d_desc", 2}});
  CHECK(doc.at("route_agreement") == true);
  CHECK(doc.at("d_asc").at("dims") == Json{0, 2, 4});
  CHECK(doc.at("p_desc").at("terms").at(1) == Json{{"dim", 1}, {"basis", {{"0", "0", "1", "0"}}}});
}

TEST_CASE("catalog entries validate and carry consistent expectations") {
  for (const auto& name : catalog_names()) {
    const CatalogEntry entry = builtin(name);
    INFO(name);
    CHECK(entry.name == name);
    CHECK(is_builtin(name));
    CHECK(validate(entry.algebra).valid());
    CHECK_FALSE(oracle::jacobi_witness(oracle::tensor_of(entry.algebra)).has_value());
    CHECK(nilpotency_step(entry.algebra) == entry.expected_step);
    for (const auto& s : entry.complex_structures) {
      INFO(s.name);
      const oracle::Routes ref = oracle::series(entry.algebra, s.j);
      CHECK(ref.j0_d_asc == s.expected.j0);
      CHECK(!oracle::nijenhuis_witness(entry.algebra, s.j.matrix()).has_value() == s.expected.integrable);
    }
  }
  CHECK_FALSE(is_builtin("kt5"));
  CHECK_THROWS_AS(builtin("kt5"), UnknownEntry);
}

TEST_CASE("catalog bracket tables") {
  const CatalogEntry kt4 = builtin("kt4");
  CHECK(kt4.algebra.structure_constants().size() == 1);
  CHECK(kt4.algebra.basis_bracket(0, 1) == unit_vector(4, 2));
  const CatalogEntry nn3 = builtin("nn3");
  CHECK(nn3.algebra.dim() == 3);
  CHECK(nn3.complex_structures.empty());
  const CatalogEntry ch6 = builtin("ch6");
  CHECK(center(ch6.algebra) == span_of(6, {5, 6}));
}
