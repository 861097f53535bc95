#pragma once

// Hand-written structural check of CLI report documents. Returns the list of
// problems found; an empty list means the document matches the schema.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace schema {

using Json = nlohmann::json;

struct Checker {
  std::vector<std::string> problems;

  bool has(const Json& obj, const std::string& path, const std::string& key, bool (Json::*kind)() const noexcept) {
    if (!obj.is_object() || !obj.contains(key)) {
      problems.push_back(path + "." + key + " missing");
      return false;
    }
    if (!(obj.at(key).*kind)()) {
      problems.push_back(path + "." + key + " has the wrong type");
      return false;
    }
    return true;
  }

  void count_or_null(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) {
      problems.push_back(path + "." + key + " missing");
    } else if (!obj[key].is_null() && !obj[key].is_number_unsigned()) {
      problems.push_back(path + "." + key + " must be a count or null");
    }
  }

  void rational_rows(const Json& rows, const std::string& path) {
    for (const auto& row : rows) {
      if (!row.is_array()) problems.push_back(path + " row is not an array");
      for (const auto& x : row)
        if (!x.is_string()) problems.push_back(path + " entry is not a rational string");
    }
  }

  void subspace(const Json& s, const std::string& path) {
    if (has(s, path, "dim", &Json::is_number_unsigned) && has(s, path, "basis", &Json::is_array)) {
      if (s["basis"].size() != s["dim"].get<std::size_t>()) problems.push_back(path + " basis size differs from dim");
      rational_rows(s["basis"], path + ".basis");
    }
  }

  void series(const Json& s, const std::string& path) {
    has(s, path, "kind", &Json::is_string);
    has(s, path, "stabilized_at", &Json::is_number_unsigned);
    if (has(s, path, "dims", &Json::is_array) && has(s, path, "terms", &Json::is_array)) {
      if (s["dims"].size() != s["terms"].size()) problems.push_back(path + " dims and terms differ in length");
      for (std::size_t i = 0; i < s["terms"].size(); ++i) subspace(s["terms"][i], path + ".terms");
    }
  }

  void verdicts(const Json& vs, const std::string& path) {
    if (!vs.is_array()) {
      problems.push_back(path + " is not an array");
      return;
    }
    for (const auto& v : vs) {
      has(v, path, "name", &Json::is_string);
      has(v, path, "detail", &Json::is_string);
      if (has(v, path, "status", &Json::is_string)) {
        const auto s = v["status"].get<std::string>();
        if (s != "pass" && s != "fail" && s != "hypothesis-not-met") problems.push_back(path + " bad status " + s);
      }
    }
  }

  void structure(const Json& s, const std::string& path) {
    has(s, path, "name", &Json::is_string);
    if (has(s, path, "J", &Json::is_array)) rational_rows(s["J"], path + ".J");
    has(s, path, "integrable", &Json::is_boolean);
    has(s, path, "nijenhuis_witnesses", &Json::is_array);
    has(s, path, "abelian", &Json::is_boolean);
    has(s, path, "bi_invariant", &Json::is_boolean);
    if (s.contains("series") && !s["series"].is_null()) {
      const Json& r = s["series"];
      for (const char* k : {"c_desc", "c_asc", "d_asc", "d_desc", "p_desc"})
        if (has(r, path + ".series", k, &Json::is_object)) series(r[k], path + ".series." + k);
      count_or_null(r, path + ".series", "step");
      count_or_null(r, path + ".series", "j0");
      if (has(r, path + ".series", "routes", &Json::is_object))
        for (const char* k : {"d_asc", "p_desc", "d_desc"}) count_or_null(r["routes"], path + ".series.routes", k);
      has(r, path + ".series", "route_agreement", &Json::is_boolean);
    }
    for (const char* k : {"series_verdicts", "classification_verdicts", "suite"})
      if (s.contains(k)) verdicts(s[k], path + "." + k);
    if (s.contains("classification") && !s["classification"].is_null()) {
      const Json& c = s["classification"];
      const std::string p = path + ".classification";
      if (has(c, p, "case", &Json::is_string)) {
        const auto k = c["case"].get<std::string>();
        if (k != "k_zero" && k != "k_proper" && k != "k_full") problems.push_back(p + " bad case " + k);
      }
      if (has(c, p, "k", &Json::is_object)) subspace(c["k"], p + ".k");
      has(c, p, "predicted_j0", &Json::is_number_unsigned);
      count_or_null(c, p, "computed_j0");
      for (const char* k : {"strata_preserving", "center_preserving", "integrable"}) has(c, p, k, &Json::is_boolean);
    }
  }

  void report(const Json& doc) {
    has(doc, "$", "command", &Json::is_string);
    has(doc, "$", "input", &Json::is_string);
    if (!has(doc, "$", "status", &Json::is_string)) return;
    const auto status = doc["status"].get<std::string>();
    if (status == "invalid-input") {
      if (has(doc, "$", "error", &Json::is_object)) {
        has(doc["error"], "$.error", "kind", &Json::is_string);
        has(doc["error"], "$.error", "message", &Json::is_string);
      }
      return;
    }
    if (status != "pass" && status != "fail") problems.push_back("$.status bad value " + status);
    has(doc, "$", "source", &Json::is_string);
    if (has(doc, "$", "failures", &Json::is_array) && (doc["failures"].empty() != (status == "pass")))
      problems.push_back("$.failures disagrees with $.status");
    if (has(doc, "$", "algebra", &Json::is_object)) {
      const Json& a = doc["algebra"];
      has(a, "$.algebra", "dim", &Json::is_number_unsigned);
      has(a, "$.algebra", "abelian", &Json::is_boolean);
      count_or_null(a, "$.algebra", "step");
      if (has(a, "$.algebra", "center", &Json::is_object)) subspace(a["center"], "$.algebra.center");
      if (has(a, "$.algebra", "c_desc", &Json::is_object)) series(a["c_desc"], "$.algebra.c_desc");
      if (has(a, "$.algebra", "c_asc", &Json::is_object)) series(a["c_asc"], "$.algebra.c_asc");
    }
    if (doc.contains("search")) {
      const Json& s = doc["search"];
      has(s, "$.search", "found", &Json::is_boolean);
      if (has(s, "$.search", "verdicts", &Json::is_array)) verdicts(s["verdicts"], "$.search.verdicts");
      return;
    }
    if (!doc.contains("stratification")) {
      problems.push_back("$.stratification missing");
    } else if (!doc["stratification"].is_null()) {
      const Json& s = doc["stratification"];
      has(s, "$.stratification", "name", &Json::is_string);
      if (has(s, "$.stratification", "layers", &Json::is_array))
        for (const auto& l : s["layers"]) subspace(l, "$.stratification.layers");
      if (has(s, "$.stratification", "verdicts", &Json::is_array)) verdicts(s["verdicts"], "$.stratification.verdicts");
      if (has(s, "$.stratification", "obstructions", &Json::is_array))
        verdicts(s["obstructions"], "$.stratification.obstructions");
    }
    if (has(doc, "$", "structures", &Json::is_array))
      for (std::size_t i = 0; i < doc["structures"].size(); ++i)
        structure(doc["structures"][i], "$.structures[" + std::to_string(i) + "]");
  }
};

inline std::vector<std::string> report_problems(const Json& doc) {
  Checker c;
  c.report(doc);
  return c.problems;
}

}  // namespace schema
