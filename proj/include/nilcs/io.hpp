#pragma once

// JSON interchange for algebras and series reports.
//
// Algebra file schema (indices 1-based, i < j):
//   {"dim": n,
//    "brackets": [{"i": 1, "j": 2, "out": {"3": "1"}}, ...],
//    "J": [["0", "-1", ...], ...],              optional, row-major
//    "strata": [[[v11...], [v12...]], ...]}     optional, layer = list of vectors
// Rationals are written as "p" or "p/q"; reading also accepts integers and
// {"num": p, "den": q} objects.

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilcs/stratification.hpp"

namespace nilcs {

using Json = nlohmann::json;

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SemanticError : public ParseError {
 public:
  explicit SemanticError(const std::string& what, std::optional<std::array<std::size_t, 3>> triple = std::nullopt)
      : ParseError(what), triple_(triple) {}
  const std::optional<std::array<std::size_t, 3>>& jacobi_triple() const { return triple_; }

 private:
  std::optional<std::array<std::size_t, 3>> triple_;
};

struct AlgebraFile {
  LieAlgebra algebra;
  std::optional<ComplexStructure> j;
  std::optional<Stratification> strata;
};

namespace io_detail {

inline Rational rational_from_json(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return parse_rational(std::to_string(v.get<long long>()));
    if (v.is_object() && v.contains("num") && v.contains("den")) {
      auto part = [](const Json& x) {
        if (x.is_number_integer()) return std::to_string(x.get<long long>());
        if (x.is_string()) return x.get<std::string>();
        throw ParseError("num/den must be integers");
      };
      std::string den = part(v.at("den"));
      if (den.starts_with('-')) throw ParseError("negative denominator");
      return parse_rational(part(v.at("num")) + "/" + den);
    }
  } catch (const ParseError& e) {
    throw SemanticError(where + ": " + e.what());
  }
  throw SemanticError(where + ": expected a rational");
}

inline Vector vector_from_json(const Json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) throw SemanticError(where + ": expected an array of " + std::to_string(n) + " rationals");
  Vector out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline std::size_t index_from_json(const Json& v, std::size_t n, const std::string& where) {
  if (!v.is_number_integer()) throw SemanticError(where + ": expected an integer index");
  const auto i = v.get<long long>();
  if (i < 1 || static_cast<std::size_t>(i) > n)
    throw SemanticError(where + ": index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  return static_cast<std::size_t>(i);
}

}  // namespace io_detail

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row_span(r)));
  return out;
}

inline Json to_json(const Subspace& s) { return Json{{"dim", s.dim()}, {"basis", to_json(s.basis())}}; }

/// Parses and validates an algebra file: Jacobi identity, J^2 = -I, and the
/// ambient dimension of each layer.
inline AlgebraFile parse_algebra_file(std::string_view text) {
  using namespace io_detail;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw SyntaxError(line, col, e.what());
  }
  if (!doc.is_object()) throw SemanticError("top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 0)
    throw SemanticError("\"dim\" must be a non-negative integer");
  const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());

  std::vector<BracketEntry> brackets;
  if (doc.contains("brackets")) {
    const Json& bs = doc["brackets"];
    if (!bs.is_array()) throw SemanticError("\"brackets\" must be an array");
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const std::string where = "brackets[" + std::to_string(b) + "]";
      const Json& entry = bs[b];
      if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") || !entry.contains("out"))
        throw SemanticError(where + ": expected {\"i\", \"j\", \"out\"}");
      const std::size_t i = index_from_json(entry["i"], n, where + ".i");
      const std::size_t j = index_from_json(entry["j"], n, where + ".j");
      if (i >= j) throw SemanticError(where + ": requires i < j");
      if (!entry["out"].is_object()) throw SemanticError(where + ".out: expected an object");
      Vector out = zero_vector(n);
      for (const auto& [key, value] : entry["out"].items()) {
        std::size_t k = 0;
        try {
          std::size_t used = 0;
          k = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw SemanticError(where + ".out: key \"" + key + "\" is not an index");
        }
        if (k < 1 || k > n) throw SemanticError(where + ".out: index " + key + " out of range");
        out[k - 1] = rational_from_json(value, where + ".out." + key);
      }
      brackets.push_back({i - 1, j - 1, std::move(out)});
    }
  }

  AlgebraFile file;
  try {
    file.algebra = LieAlgebra(n, brackets);
  } catch (const std::invalid_argument& e) {
    throw SemanticError(std::string("brackets: ") + e.what());
  }
  if (auto bad = validate(file.algebra).violation) {
    const auto& t = bad->triple;
    throw SemanticError("Jacobi identity fails at triple (" + std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " +
                            std::to_string(t[2]) + ")",
                        t);
  }

  if (doc.contains("J") && !doc["J"].is_null()) {
    const Json& jj = doc["J"];
    if (!jj.is_array() || jj.size() != n) throw SemanticError("\"J\" must have " + std::to_string(n) + " rows");
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < n; ++r) rows.push_back(vector_from_json(jj[r], n, "J[" + std::to_string(r) + "]"));
    try {
      file.j = validate_almost_complex(n, Matrix::from_rows(rows, n));
    } catch (const InvalidStructure& e) {
      throw SemanticError(std::string("J: ") + e.what());
    }
  }

  if (doc.contains("strata") && !doc["strata"].is_null()) {
    const Json& st = doc["strata"];
    if (!st.is_array()) throw SemanticError("\"strata\" must be an array of layers");
    Stratification s;
    for (std::size_t l = 0; l < st.size(); ++l) {
      const std::string where = "strata[" + std::to_string(l) + "]";
      if (!st[l].is_array()) throw SemanticError(where + ": a layer is an array of vectors");
      std::vector<Vector> vs;
      for (std::size_t v = 0; v < st[l].size(); ++v)
        vs.push_back(vector_from_json(st[l][v], n, where + "[" + std::to_string(v) + "]"));
      s.layers.push_back(Subspace::span(n, vs));
    }
    file.strata = std::move(s);
  }
  return file;
}

/// Inverse of parse_algebra_file up to canonical forms (layers are written
/// as their RREF bases).
inline std::string write_algebra_file(const AlgebraFile& file) {
  const std::size_t n = file.algebra.dim();
  Json doc;
  doc["dim"] = n;
  Json brackets = Json::array();
  for (const auto& [key, value] : file.algebra.structure_constants()) {
    Json out = Json::object();
    for (std::size_t k = 0; k < n; ++k)
      if (value[k] != 0) out[std::to_string(k + 1)] = to_string(value[k]);
    brackets.push_back(Json{{"i", key.first + 1}, {"j", key.second + 1}, {"out", out}});
  }
  doc["brackets"] = brackets;
  if (file.j) doc["J"] = to_json(file.j->matrix());
  if (file.strata) {
    Json layers = Json::array();
    for (const auto& layer : file.strata->layers) layers.push_back(to_json(layer.basis()));
    doc["strata"] = layers;
  }
  return doc.dump(2) + "\n";
}

inline Json optional_count(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const Series& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) terms.push_back(to_json(t));
  return Json{{"kind", s.kind == SeriesKind::descending ? "descending" : "ascending"},
              {"dims", s.dims()},
              {"stabilized_at", s.stabilized_at},
              {"terms", terms}};
}

inline Json to_json(const SeriesReport& r) {
  return Json{{"c_desc", to_json(r.c_desc)},
              {"c_asc", to_json(r.c_asc)},
              {"d_asc", to_json(r.d_asc)},
              {"d_desc", to_json(r.d_desc)},
              {"p_desc", to_json(r.p_desc)},
              {"step", optional_count(r.step)},
              {"j0", optional_count(r.j0)},
              {"routes",
               {{"d_asc", optional_count(r.j0_from_d_asc)},
                {"p_desc", optional_count(r.j0_from_p)},
                {"d_desc", optional_count(r.j0_from_d_desc)}}},
              {"route_agreement", r.route_agreement}};
}

inline Json to_json(const Verdict& v) {
  return Json{{"name", v.name}, {"status", std::string(to_string(v.status))}, {"detail", v.detail}};
}

inline Json to_json(const std::vector<Verdict>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

namespace io_detail {

inline std::optional<std::size_t> optional_count_from_json(const Json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<std::size_t>();
}

inline Subspace subspace_from_json(const Json& v, std::size_t n) {
  std::vector<Vector> rows;
  for (const auto& r : v.at("basis")) rows.push_back(vector_from_json(r, n, "basis"));
  return Subspace::span(n, rows);
}

inline Series series_from_json(const Json& v, std::size_t n) {
  Series s;
  s.kind = v.at("kind").get<std::string>() == "descending" ? SeriesKind::descending : SeriesKind::ascending;
  s.stabilized_at = v.at("stabilized_at").get<std::size_t>();
  for (const auto& t : v.at("terms")) s.terms.push_back(subspace_from_json(t, n));
  return s;
}

}  // namespace io_detail

/// Reads back the output of to_json(SeriesReport) for an algebra of dimension n.
inline SeriesReport series_report_from_json(const Json& v, std::size_t n) {
  using namespace io_detail;
  SeriesReport r;
  r.c_desc = series_from_json(v.at("c_desc"), n);
  r.c_asc = series_from_json(v.at("c_asc"), n);
  r.d_asc = series_from_json(v.at("d_asc"), n);
  r.d_desc = series_from_json(v.at("d_desc"), n);
  r.p_desc = series_from_json(v.at("p_desc"), n);
  r.step = optional_count_from_json(v.at("step"));
  r.j0 = optional_count_from_json(v.at("j0"));
  r.j0_from_d_asc = optional_count_from_json(v.at("routes").at("d_asc"));
  r.j0_from_p = optional_count_from_json(v.at("routes").at("p_desc"));
  r.j0_from_d_desc = optional_count_from_json(v.at("routes").at("d_desc"));
  r.route_agreement = v.at("route_agreement").get<bool>();
  return r;
}

inline bool operator==(const Series& a, const Series& b) {
  return a.kind == b.kind && a.stabilized_at == b.stabilized_at && a.terms == b.terms;
}

inline bool operator==(const SeriesReport& a, const SeriesReport& b) {
  return a.c_desc == b.c_desc && a.c_asc == b.c_asc && a.d_asc == b.d_asc && a.d_desc == b.d_desc &&
         a.p_desc == b.p_desc && a.step == b.step && a.j0 == b.j0 && a.j0_from_d_asc == b.j0_from_d_asc &&
         a.j0_from_p == b.j0_from_p && a.j0_from_d_desc == b.j0_from_d_desc && a.route_agreement == b.route_agreement;
}

}  // namespace nilcs
