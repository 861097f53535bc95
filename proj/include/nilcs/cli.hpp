#pragma once

// Command-line front end. run() is the whole program; tools/nilcs.cpp only
// forwards argv. Exit status: 0 all verdicts pass, 1 a verdict failed or the
// input is invalid, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nilcs/catalog.hpp"
#include "nilcs/io.hpp"
#include "nilcs/search.hpp"
#include "nilcs/theorem_suite.hpp"

namespace nilcs {

struct CliConfig {
  std::string input;
  std::string command = "report";
  std::string format = "json";
  std::string out;
  std::string structure;
  std::uint64_t seed = 0;
  std::size_t restarts = 100;
  double threshold = 1e-10;
  std::int64_t den_cap = 1'000'000;
};

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace cli_detail {

struct Loaded {
  std::string source;  // "builtin" or "file"
  LieAlgebra algebra;
  std::vector<NamedStructure> structures;
  std::optional<NamedStratification> strata;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Loaded load(const CliConfig& cfg) {
  Loaded out;
  if (is_builtin(cfg.input)) {
    CatalogEntry e = builtin(cfg.input);
    out.source = "builtin";
    out.algebra = e.algebra;
    out.structures = e.complex_structures;
    if (!e.stratifications.empty()) out.strata = e.stratifications.front();
  } else {
    AlgebraFile f = parse_algebra_file(read_file(cfg.input));
    out.source = "file";
    out.algebra = f.algebra;
    if (f.j) out.structures.push_back({"J", *f.j, {}});
    if (f.strata) out.strata = NamedStratification{"strata", *f.strata};
  }
  if (!cfg.structure.empty()) {
    std::vector<NamedStructure> kept;
    for (auto& s : out.structures)
      if (s.name == cfg.structure) kept.push_back(s);
    if (kept.empty()) throw UsageError("--structure: input has no complex structure named \"" + cfg.structure + "\"");
    out.structures = std::move(kept);
  }
  return out;
}

inline Json algebra_json(const LieAlgebra& alg) {
  const Series c = descending_central_series(alg);
  const Series u = ascending_central_series(alg);
  return Json{{"dim", alg.dim()},
              {"jacobi", "pass"},
              {"step", optional_count(nilpotency_step(c))},
              {"abelian", alg.is_abelian()},
              {"center", to_json(center(alg))},
              {"c_desc", to_json(c)},
              {"c_asc", to_json(u)}};
}

inline Json witnesses_json(const IntegrabilityReport& r) {
  Json out = Json::array();
  for (const auto& w : r.witnesses) out.push_back(Json{{"pair", {w.i, w.j}}, {"value", to_json(w.value)}});
  return out;
}

inline Json classification_json(const Step2Classification& c) {
  return Json{{"case", std::string(to_string(c.kind))},
              {"k", to_json(c.k_subspace)},
              {"predicted_j0", c.predicted_j0},
              {"computed_j0", optional_count(c.computed_j0)},
              {"strata_preserving", c.strata_preserving},
              {"center_preserving", c.center_preserving},
              {"integrable", c.integrable}};
}

struct Collector {
  std::vector<std::string> failures;

  Json add(const std::string& scope, const std::vector<Verdict>& vs) {
    for (const auto& v : vs)
      if (v.status == Status::fail) failures.push_back(scope + ":" + v.name);
    return to_json(vs);
  }
};

inline bool wants(const CliConfig& cfg, std::string_view section) {
  if (cfg.command == "report") return section != "search";
  return cfg.command == section;
}

inline Json structure_json(const CliConfig& cfg, const Loaded& in, const NamedStructure& s, Collector& col) {
  const LieAlgebra& alg = in.algebra;
  const std::string scope = "structure " + s.name;
  const IntegrabilityReport integ = is_integrable(alg, s.j);
  const SpecialFlags flags = classify_special(alg, s.j);
  Json out{{"name", s.name},
           {"J", to_json(s.j.matrix())},
           {"almost_complex", "pass"},
           {"integrable", integ.integrable()},
           {"nijenhuis_witnesses", witnesses_json(integ)},
           {"abelian", flags.abelian},
           {"bi_invariant", flags.bi_invariant}};

  if (wants(cfg, "series")) {
    try {
      const SeriesReport r = nilpotent_step(alg, s.j);
      out["series"] = to_json(r);
      std::vector<Verdict> vs = containment_audit(alg, s.j, r);
      vs.push_back(center_dim_bounds(alg, r));
      out["series_verdicts"] = col.add(scope, vs);
    } catch (const RouteDisagreement& e) {
      out["series"] = nullptr;
      out["series_verdicts"] = col.add(scope, {check("route_agreement", false, e.what())});
    }
  }
  if (wants(cfg, "classify")) {
    if (nilpotency_step(alg) != 2) {
      out["classification"] = nullptr;
      out["classification_verdicts"] = col.add(scope, {not_applicable("step2_classification", "step != 2")});
    } else {
      std::optional<Stratification> supplied;
      if (in.strata && !verify_stratification(alg, in.strata->strata)) supplied = in.strata->strata;
      const Step2Classification c = classify_step2(alg, s.j, supplied);
      out["classification"] = classification_json(c);
      std::vector<Verdict> vs;
      if (c.integrable)
        vs.push_back(check("step2_prediction", c.prediction_holds(),
                           "predicted j0 = " + std::to_string(c.predicted_j0) + ", computed " + detail::show(c.computed_j0)));
      else
        vs.push_back(not_applicable("step2_prediction", "J is not integrable"));
      out["classification_verdicts"] = col.add(scope, vs);
    }
  }
  if (wants(cfg, "suite")) {
    std::optional<Stratification> supplied;
    if (in.strata) supplied = in.strata->strata;
    out["suite"] = col.add(scope, theorem_suite(alg, s.j, supplied).verdicts);
  }
  return out;
}

inline Json stratification_json(const LieAlgebra& alg, const NamedStratification& s, Collector& col) {
  Json layers = Json::array();
  for (const auto& l : s.strata.layers) layers.push_back(to_json(l));
  const auto bad = verify_stratification(alg, s.strata);
  Json out{{"name", s.name}, {"layers", layers}};
  Verdict v = check("stratification_valid", !bad, bad ? std::string(to_string(bad->property)) + ": " + bad->message : "");
  if (bad) out["violation"] = Json{{"property", std::string(to_string(bad->property))}, {"layer", bad->layer}};
  out["verdicts"] = col.add("stratification " + s.name, {v});
  out["obstructions"] = col.add("stratification " + s.name, stratification_obstructions(alg, s.strata));
  return out;
}

inline Json search_json(const CliConfig& cfg, const LieAlgebra& alg, Collector& col) {
  Json out{{"seed", cfg.seed}, {"restarts", cfg.restarts}, {"threshold", cfg.threshold}, {"den_cap", cfg.den_cap}};
  if (alg.dim() % 2 != 0) {
    out["found"] = false;
    out["verdicts"] = col.add("search", {not_applicable("search_found", "odd dimension admits no almost-complex structure")});
    return out;
  }
  SearchOptions opts;
  opts.seed = cfg.seed;
  opts.restarts = cfg.restarts;
  opts.residual_threshold = cfg.threshold;
  opts.denominator_cap = cfg.den_cap;
  const SearchResult r = find_complex_structure(alg, opts);
  out["found"] = r.structure.has_value();
  out["J"] = r.structure ? to_json(r.structure->matrix()) : Json(nullptr);
  out["stats"] = Json{{"restarts_used", r.stats.restarts_used},
                      {"float_converged", r.stats.float_converged},
                      {"candidates_rejected", r.stats.candidates_rejected}};
  out["verdicts"] = col.add("search", {check("search_found", r.structure.has_value(), "no verified structure found")});
  return out;
}

inline Json build_report(const CliConfig& cfg) {
  Json doc{{"command", cfg.command}, {"input", cfg.input}};
  Collector col;
  Loaded in;
  try {
    in = load(cfg);
  } catch (const UsageError&) {
    throw;
  } catch (const SyntaxError& e) {
    doc["status"] = "invalid-input";
    doc["error"] = Json{{"kind", "syntax"}, {"line", e.line()}, {"column", e.column()}, {"message", e.what()}};
    return doc;
  } catch (const SemanticError& e) {
    doc["status"] = "invalid-input";
    doc["error"] = Json{{"kind", "semantic"}, {"message", e.what()}};
    if (e.jacobi_triple()) doc["error"]["jacobi_triple"] = *e.jacobi_triple();
    return doc;
  } catch (const std::exception& e) {
    doc["status"] = "invalid-input";
    doc["error"] = Json{{"kind", "input"}, {"message", e.what()}};
    return doc;
  }

  doc["source"] = in.source;
  doc["algebra"] = algebra_json(in.algebra);
  if (cfg.command != "search") {
    doc["stratification"] = in.strata ? stratification_json(in.algebra, *in.strata, col) : Json(nullptr);
    Json structures = Json::array();
    for (const auto& s : in.structures) structures.push_back(structure_json(cfg, in, s, col));
    doc["structures"] = structures;
  } else {
    doc["search"] = search_json(cfg, in.algebra, col);
  }
  doc["failures"] = col.failures;
  doc["status"] = col.failures.empty() ? "pass" : "fail";
  return doc;
}

inline void markdown_series_table(std::ostream& os, const std::string& title, const Json& series) {
  os << "\n#### " << title << "\n\n| j | dim |\n|---|---|\n";
  const Json& dims = series.at("dims");
  for (std::size_t j = 0; j < dims.size(); ++j) os << "| " << j << " | " << dims[j].get<std::size_t>() << " |\n";
}

inline std::string scalar(const Json& v) {
  if (v.is_null()) return "none";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void markdown_verdicts(std::ostream& os, const Json& vs) {
  if (vs.empty()) return;
  os << "\n| verdict | status | detail |\n|---|---|---|\n";
  for (const auto& v : vs)
    os << "| " << v.at("name").get<std::string>() << " | " << v.at("status").get<std::string>() << " | "
       << v.at("detail").get<std::string>() << " |\n";
}

inline std::string render_markdown(const Json& doc) {
  std::ostringstream os;
  os << "# nilcs " << doc.at("command").get<std::string>() << ": " << doc.at("input").get<std::string>() << "\n\n";
  os << "Status: **" << doc.at("status").get<std::string>() << "**\n";
  if (doc.contains("error")) {
    os << "\nError (" << doc["error"].at("kind").get<std::string>() << "): " << doc["error"].at("message").get<std::string>()
       << "\n";
    return os.str();
  }
  const Json& alg = doc.at("algebra");
  os << "\n## Algebra\n\n- dimension: " << scalar(alg.at("dim")) << "\n- step: " << scalar(alg.at("step"))
     << "\n- center dimension: " << scalar(alg.at("center").at("dim")) << "\n";
  if (doc.contains("stratification") && !doc["stratification"].is_null()) {
    const Json& s = doc["stratification"];
    os << "\n## Stratification `" << s.at("name").get<std::string>() << "`\n\nLayer dimensions:";
    for (const auto& l : s.at("layers")) os << " " << l.at("dim").get<std::size_t>();
    os << "\n";
    markdown_verdicts(os, s.at("verdicts"));
    markdown_verdicts(os, s.at("obstructions"));
  }
  if (doc.contains("structures")) {
    for (const auto& s : doc["structures"]) {
      os << "\n## Complex structure `" << s.at("name").get<std::string>() << "`\n\n- integrable: " << scalar(s.at("integrable"))
         << "\n- abelian: " << scalar(s.at("abelian")) << "\n- bi-invariant: " << scalar(s.at("bi_invariant")) << "\n";
      if (s.contains("series") && !s["series"].is_null()) {
        const Json& r = s["series"];
        os << "- j0: " << scalar(r.at("j0")) << "\n- route agreement: " << scalar(r.at("route_agreement")) << "\n";
        os << "\n### Series dimensions\n";
        markdown_series_table(os, "c_j (lower central)", r.at("c_desc"));
        markdown_series_table(os, "c^j (upper central)", r.at("c_asc"));
        markdown_series_table(os, "d^j (J-ascending)", r.at("d_asc"));
        markdown_series_table(os, "d_j (J-descending)", r.at("d_desc"));
        markdown_series_table(os, "p_j", r.at("p_desc"));
      }
      if (s.contains("series_verdicts")) {
        os << "\n### Series checks\n";
        markdown_verdicts(os, s["series_verdicts"]);
      }
      if (s.contains("classification") && !s["classification"].is_null()) {
        const Json& c = s["classification"];
        os << "\n### Step-2 classification\n\n- case: " << scalar(c.at("case")) << "\n- predicted j0: "
           << scalar(c.at("predicted_j0")) << "\n- computed j0: " << scalar(c.at("computed_j0"))
           << "\n- strata-preserving: " << scalar(c.at("strata_preserving"))
           << "\n- center-preserving: " << scalar(c.at("center_preserving")) << "\n";
      }
      if (s.contains("classification_verdicts")) markdown_verdicts(os, s["classification_verdicts"]);
      if (s.contains("suite")) {
        os << "\n### Structure theorems\n";
        markdown_verdicts(os, s["suite"]);
      }
    }
  }
  if (doc.contains("search")) {
    const Json& s = doc["search"];
    os << "\n## Search\n\n- found: " << scalar(s.at("found")) << "\n";
    if (s.contains("stats"))
      os << "- restarts used: " << scalar(s["stats"].at("restarts_used")) << "\n- float converged: "
         << scalar(s["stats"].at("float_converged")) << "\n- candidates rejected: "
         << scalar(s["stats"].at("candidates_rejected")) << "\n";
    markdown_verdicts(os, s.at("verdicts"));
  }
  return os.str();
}

}  // namespace cli_detail

/// Report document for a parsed configuration. Throws UsageError for
/// configuration problems that only show up after loading the input.
inline Json build_report(const CliConfig& cfg) { return cli_detail::build_report(cfg); }

inline std::string serialize_report(const Json& doc, const std::string& format) {
  if (format == "markdown") return cli_detail::render_markdown(doc);
  return doc.dump(2) + "\n";
}

inline int exit_status(const Json& doc) { return doc.at("status") == "pass" ? exit_ok : exit_failure; }

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Exact analysis of complex structures on nilpotent Lie algebras", "nilcs"};
  app.add_option("-i,--input", cfg.input, "builtin name or path to an algebra JSON file")->required();
  app.add_option("--cmd", cfg.command, "validate | series | classify | suite | search | report")
      ->check(CLI::IsMember({"validate", "series", "classify", "suite", "search", "report"}));
  app.add_option("--format", cfg.format, "json | markdown")->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--out", cfg.out, "write the report here instead of standard output");
  app.add_option("--structure", cfg.structure, "only analyse the complex structure with this name");
  app.add_option("--seed", cfg.seed, "search RNG seed");
  app.add_option("--restarts", cfg.restarts, "search restarts")->check(CLI::PositiveNumber);
  app.add_option("--threshold", cfg.threshold, "search residual threshold")->check(CLI::PositiveNumber);
  app.add_option("--den-cap", cfg.den_cap, "largest denominator tried when rounding")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return exit_usage;
  }

  Json doc;
  try {
    doc = build_report(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
  const std::string text = serialize_report(doc, cfg.format);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "cannot write \"" << cfg.out << "\"\n";
      return exit_failure;
    }
  }
  if (doc.contains("error")) err << doc["error"]["message"].get<std::string>() << "\n";
  return exit_status(doc);
}

}  // namespace nilcs
