#pragma once

// Built-in example algebras with complex structures and stratifications.
// Expected facts are recorded for tests to re-derive; nothing in the library
// reads them back.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcs/stratification.hpp"

namespace nilcs {

struct ExpectedStructureFacts {
  bool integrable = false;
  std::optional<std::size_t> j0;
  std::optional<Step2Case> step2_case;
  bool abelian = false;
  bool bi_invariant = false;
};

struct NamedStructure {
  std::string name;
  ComplexStructure j;
  ExpectedStructureFacts expected;
};

struct NamedStratification {
  std::string name;
  Stratification strata;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  LieAlgebra algebra;
  std::vector<NamedStructure> complex_structures;
  std::vector<NamedStratification> stratifications;
  std::optional<std::size_t> expected_step;
};

class UnknownEntry : public std::invalid_argument {
 public:
  explicit UnknownEntry(const std::string& name) : std::invalid_argument("unknown catalog entry \"" + name + "\"") {}
};

namespace catalog_detail {

/// [e_i, e_j] = sum of coeff * e_k, all 1-based.
struct Term {
  std::size_t k;
  Rational coeff;
};

inline BracketEntry br(std::size_t n, std::size_t i, std::size_t j, std::vector<Term> terms) {
  Vector out = zero_vector(n);
  for (const auto& t : terms) out.at(t.k - 1) += t.coeff;
  return {i - 1, j - 1, out};
}

inline Subspace span_of(std::size_t n, std::initializer_list<std::size_t> one_based) {
  std::vector<Vector> vs;
  for (auto k : one_based) vs.push_back(unit_vector(n, k - 1));
  return Subspace::span(n, vs);
}

inline NamedStructure structure(const std::string& name, std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                ExpectedStructureFacts facts) {
  return {name, validate_almost_complex(n, complex_matrix_from_pairs(n, pairs)), facts};
}

inline CatalogEntry a4() {
  const std::size_t n = 4;
  return {"a4",
          "abelian algebra of dimension 4",
          LieAlgebra::abelian(n),
          {structure("standard", n, {{1, 2}, {3, 4}}, {true, 1, std::nullopt, true, true})},
          {{"single_layer", Stratification{{Subspace::full(n)}}}},
          1};
}

inline CatalogEntry kt4() {
  const std::size_t n = 4;
  return {"kt4",
          "Kodaira-Thurston algebra h3 + R: [e1,e2]=e3",
          LieAlgebra(n, {br(n, 1, 2, {{3, 1}})}),
          {structure("standard", n, {{1, 2}, {3, 4}}, {true, 2, Step2Case::k_zero, true, false})},
          {{"canonical", Stratification{{span_of(n, {1, 2, 4}), span_of(n, {3})}}}},
          2};
}

inline CatalogEntry ch6() {
  const std::size_t n = 6;
  return {"ch6",
          "complex Heisenberg algebra as a real algebra",
          LieAlgebra(n, {br(n, 1, 3, {{5, 1}}), br(n, 1, 4, {{6, 1}}), br(n, 2, 3, {{6, 1}}), br(n, 2, 4, {{5, -1}})}),
          {structure("standard", n, {{1, 2}, {3, 4}, {5, 6}}, {true, 2, Step2Case::k_full, false, true})},
          {{"canonical", Stratification{{span_of(n, {1, 2, 3, 4}), span_of(n, {5, 6})}}}},
          2};
}

inline CatalogEntry hh6() {
  const std::size_t n = 6;
  return {"hh6",
          "h3 + h3: [e1,e2]=e5, [e3,e4]=e6",
          LieAlgebra(n, {br(n, 1, 2, {{5, 1}}), br(n, 3, 4, {{6, 1}})}),
          {structure("standard", n, {{1, 2}, {3, 4}, {5, 6}}, {true, 2, Step2Case::k_full, true, false}),
           structure("swapped", n, {{1, 3}, {2, 4}, {5, 6}}, {false, 2, Step2Case::k_full, false, false})},
          {{"canonical", Stratification{{span_of(n, {1, 2, 3, 4}), span_of(n, {5, 6})}}}},
          2};
}

inline CatalogEntry nn3() {
  const std::size_t n = 3;
  // [e1,e2]=e3, [e3,e1]=2e1, [e3,e2]=-2e2
  return {"nn3", "sl(2)-type algebra, not nilpotent",
          LieAlgebra(n, {br(n, 1, 2, {{3, 1}}), br(n, 1, 3, {{1, -2}}), br(n, 2, 3, {{2, 2}})}), {}, {}, std::nullopt};
}

inline CatalogEntry fil4() {
  const std::size_t n = 4;
  return {"fil4",
          "filiform algebra: [e1,e2]=e3, [e1,e3]=e4",
          LieAlgebra(n, {br(n, 1, 2, {{3, 1}}), br(n, 1, 3, {{4, 1}})}),
          {structure("block", n, {{1, 2}, {3, 4}}, {false, std::nullopt, std::nullopt, false, false})},
          {{"canonical", Stratification{{span_of(n, {1, 2}), span_of(n, {3}), span_of(n, {4})}}}},
          3};
}

inline CatalogEntry ut4() {
  const std::size_t n = 6;
  // Strictly upper triangular 4x4 matrices: e1=E12, e2=E23, e3=E34, e4=E13, e5=E24, e6=E14.
  return {"ut4",
          "strictly upper triangular 4x4 matrices",
          LieAlgebra(n, {br(n, 1, 2, {{4, 1}}), br(n, 2, 3, {{5, 1}}), br(n, 1, 5, {{6, 1}}), br(n, 3, 4, {{6, -1}})}),
          {structure("block", n, {{1, 2}, {3, 4}, {5, 6}}, {false, std::nullopt, std::nullopt, false, false})},
          {{"canonical", Stratification{{span_of(n, {1, 2, 3}), span_of(n, {4, 5}), span_of(n, {6})}}}},
          3};
}

inline CatalogEntry cf8() {
  const std::size_t n = 8;
  // Complex filiform [x1,x2]=x3, [x1,x3]=x4 with e_{2m-1} = x_m, e_{2m} = i x_m.
  return {"cf8",
          "complex 4-dimensional filiform algebra as a real algebra",
          LieAlgebra(n, {br(n, 1, 3, {{5, 1}}), br(n, 1, 4, {{6, 1}}), br(n, 2, 3, {{6, 1}}), br(n, 2, 4, {{5, -1}}),
                         br(n, 1, 5, {{7, 1}}), br(n, 1, 6, {{8, 1}}), br(n, 2, 5, {{8, 1}}), br(n, 2, 6, {{7, -1}})}),
          {structure("standard", n, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {true, 3, std::nullopt, false, true})},
          {{"canonical", Stratification{{span_of(n, {1, 2, 3, 4}), span_of(n, {5, 6}), span_of(n, {7, 8})}}}},
          3};
}

}  // namespace catalog_detail

inline std::vector<std::string> catalog_names() { return {"a4", "kt4", "ch6", "hh6", "nn3", "fil4", "ut4", "cf8"}; }

inline CatalogEntry builtin(const std::string& name) {
  using namespace catalog_detail;
  if (name == "a4") return a4();
  if (name == "kt4") return kt4();
  if (name == "ch6") return ch6();
  if (name == "hh6") return hh6();
  if (name == "nn3") return nn3();
  if (name == "fil4") return fil4();
  if (name == "ut4") return ut4();
  if (name == "cf8") return cf8();
  throw UnknownEntry(name);
}

inline bool is_builtin(const std::string& name) {
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

}  // namespace nilcs
