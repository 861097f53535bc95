#pragma once

// Stratifications n = n_1 ⊕ ... ⊕ n_k with [n_1, n_{j-1}] = n_j and
// [n_1, n_k] = 0, and the step-2 analysis of complex structures against them.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcs/j_series.hpp"

namespace nilcs {

struct Stratification {
  std::vector<Subspace> layers;

  std::size_t step() const { return layers.size(); }
  const Subspace& layer(std::size_t one_based) const { return layers.at(one_based - 1); }
  friend bool operator==(const Stratification&, const Stratification&) = default;
};

class HypothesisNotMet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class StratificationProperty {
  ambient,
  empty,
  top_layer_zero,
  direct_sum,
  generation,
  top_annihilation,
  lower_central_layers,
};

inline std::string_view to_string(StratificationProperty p) {
  switch (p) {
    case StratificationProperty::ambient: return "ambient";
    case StratificationProperty::empty: return "empty";
    case StratificationProperty::top_layer_zero: return "top_layer_zero";
    case StratificationProperty::direct_sum: return "direct_sum";
    case StratificationProperty::generation: return "generation";
    case StratificationProperty::top_annihilation: return "top_annihilation";
    case StratificationProperty::lower_central_layers: return "lower_central_layers";
  }
  return "unknown";
}

struct StratificationViolation {
  StratificationProperty property;
  std::size_t layer;  // 1-based, 0 when not tied to a layer
  std::string message;
};

/// nullopt when s is a stratification of alg.
inline std::optional<StratificationViolation> verify_stratification(const LieAlgebra& alg, const Stratification& s) {
  using P = StratificationProperty;
  const std::size_t n = alg.dim();
  if (s.layers.empty()) return StratificationViolation{P::empty, 0, "no layers"};
  for (std::size_t l = 0; l < s.layers.size(); ++l)
    if (s.layers[l].ambient_dim() != n)
      return StratificationViolation{P::ambient, l + 1, "layer ambient dimension differs from algebra dimension"};
  const std::size_t k = s.layers.size();
  if (s.layers.back().is_zero()) return StratificationViolation{P::top_layer_zero, k, "top layer is {0}"};

  Subspace partial = Subspace::zero(n);
  for (std::size_t l = 0; l < k; ++l) {
    const Subspace next = subspace_sum(partial, s.layers[l]);
    if (next.dim() != partial.dim() + s.layers[l].dim())
      return StratificationViolation{P::direct_sum, l + 1, "layer meets the sum of the previous layers"};
    partial = next;
  }
  if (!partial.is_full()) return StratificationViolation{P::direct_sum, 0, "layers do not span the algebra"};

  const Subspace& n1 = s.layers.front();
  for (std::size_t l = 1; l < k; ++l)
    if (bracket_subspaces(alg, n1, s.layers[l - 1]) != s.layers[l])
      return StratificationViolation{P::generation, l + 1, "[n_1, n_{j-1}] != n_j"};
  if (!bracket_subspaces(alg, n1, s.layers.back()).is_zero())
    return StratificationViolation{P::top_annihilation, k, "[n_1, n_k] != {0}"};

  // c_j = n_{j+1} ⊕ ... ⊕ n_k
  const Series c = descending_central_series(alg);
  for (std::size_t j = 0; j <= k; ++j) {
    Subspace tail = Subspace::zero(n);
    for (std::size_t l = j; l < k; ++l) tail = subspace_sum(tail, s.layers[l]);
    if (c.at(j) != tail)
      return StratificationViolation{P::lower_central_layers, j + 1,
                                     "c_" + std::to_string(j) + " differs from the sum of layers above it"};
  }
  return std::nullopt;
}

inline bool is_strata_preserving(const ComplexStructure& j, const Stratification& s) {
  for (const auto& layer : s.layers)
    if (!j.preserves(layer)) return false;
  return true;
}

/// n_2 = [n, n], n_1 its complement for psi = phi + J^T phi J. Both layers are
/// then J-invariant. Requires step 2 and J[n, n] = [n, n].
inline Stratification build_step2_j_stratification(const LieAlgebra& alg, const ComplexStructure& j, const Matrix& phi) {
  const Series c = descending_central_series(alg);
  if (nilpotency_step(c) != 2) throw HypothesisNotMet("algebra is not nilpotent of step 2");
  const Subspace& c1 = c.at(1);
  if (!j.preserves(c1)) throw HypothesisNotMet("[n, n] is not J-invariant");
  const Matrix psi = j_invariant_inner_product(j, phi);
  return Stratification{{orthogonal_complement(c1, psi), c1}};
}

enum class Step2Case { k_zero, k_proper, k_full };

inline std::string_view to_string(Step2Case c) {
  switch (c) {
    case Step2Case::k_zero: return "k_zero";
    case Step2Case::k_proper: return "k_proper";
    case Step2Case::k_full: return "k_full";
  }
  return "unknown";
}

struct Step2Classification {
  Step2Case kind = Step2Case::k_zero;
  Subspace k_subspace;  // n_2 ∩ J n_2
  std::size_t predicted_j0 = 0;
  std::optional<std::size_t> computed_j0;
  bool strata_preserving = false;
  bool center_preserving = false;
  bool integrable = false;
  Stratification stratification;

  bool prediction_holds() const { return computed_j0 == predicted_j0; }
};

/// Case split on k = n_2 ∩ J n_2 for a step-2 algebra. Without a supplied
/// stratification, n_1 is the complement of [n, n] under I + J^T J, which is
/// J-invariant whenever [n, n] is.
namespace detail {

// Classification given the lower central series, the J-ascending series, the
// center and integrability, all already computed for (alg, j).
inline Step2Classification classify_step2_from(const LieAlgebra& alg, const ComplexStructure& j,
                                               const std::optional<Stratification>& supplied, const Series& c,
                                               const Series& d_asc, const Subspace& z, bool integrable) {
  if (nilpotency_step(c) != 2) throw HypothesisNotMet("algebra is not nilpotent of step 2");

  Step2Classification out;
  if (supplied) {
    if (auto bad = verify_stratification(alg, *supplied))
      throw HypothesisNotMet("supplied stratification is invalid: " + bad->message);
    out.stratification = *supplied;
  } else {
    const Matrix psi = j_invariant_inner_product(j, Matrix::identity(alg.dim()));
    out.stratification = Stratification{{orthogonal_complement(c.at(1), psi), c.at(1)}};
  }
  const Subspace& n2 = out.stratification.layer(2);
  out.k_subspace = largest_j_invariant_subspace(j, n2);
  if (out.k_subspace.is_zero()) {
    out.kind = Step2Case::k_zero;
    out.predicted_j0 = 2;
  } else if (out.k_subspace == n2) {
    out.kind = Step2Case::k_full;
    out.predicted_j0 = 2;
  } else {
    out.kind = Step2Case::k_proper;
    out.predicted_j0 = 3;
  }
  out.computed_j0 = first_full(d_asc);
  out.strata_preserving = is_strata_preserving(j, out.stratification);
  out.center_preserving = j.preserves(z);
  out.integrable = integrable;
  return out;
}

}  // namespace detail

inline Step2Classification classify_step2(const LieAlgebra& alg, const ComplexStructure& j,
                                          const std::optional<Stratification>& supplied = std::nullopt) {
  const Series c = descending_central_series(alg);
  if (nilpotency_step(c) != 2) throw HypothesisNotMet("algebra is not nilpotent of step 2");
  return detail::classify_step2_from(alg, j, supplied, c, j_ascending_series(alg, j), center(alg),
                                     is_integrable(alg, j).integrable());
}

/// A 2n-dimensional step-n algebra with dim c_j = 2n - 2j for 1 <= j <= n
/// admits no stratification. Returns true when that profile matches.
inline bool central_profile_forbids_stratification(std::size_t dim, std::optional<std::size_t> step,
                                                   const std::vector<std::size_t>& c_dims) {
  if (dim % 2 != 0 || !step || 2 * *step != dim) return false;
  const std::size_t half = dim / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    const std::size_t have = j < c_dims.size() ? c_dims[j] : (c_dims.empty() ? 0 : c_dims.back());
    if (have != dim - 2 * j) return false;
  }
  return true;
}

/// Dimensional obstructions: the central-profile test above, and the fact that
/// a stratification with dim n_1 = 2 and k >= 2 has no J-invariant layering.
inline std::vector<Verdict> stratification_obstructions(const LieAlgebra& alg,
                                                        const std::optional<Stratification>& s = std::nullopt,
                                                        const ComplexStructure* j = nullptr) {
  std::vector<Verdict> out;
  const Series c = descending_central_series(alg);
  const bool forbidden = central_profile_forbids_stratification(alg.dim(), nilpotency_step(c), c.dims());
  const bool small_top = s && s->step() >= 2 && s->layer(1).dim() == 2;
  const bool valid = (forbidden || small_top) && s && !verify_stratification(alg, *s).has_value();
  if (!forbidden) {
    out.push_back(not_applicable("profile_forbids_stratification", "central series profile does not match"));
  } else {
    out.push_back(check("profile_forbids_stratification", !valid,
                        "a valid stratification exists despite the forbidding profile"));
  }

  const bool two_dim_generators = small_top && valid;
  if (!two_dim_generators) {
    out.push_back(not_applicable("two_dim_generators_forbid_strata_preserving",
                                 "no valid stratification with dim n_1 = 2 and step >= 2"));
  } else if (j == nullptr) {
    out.push_back(Verdict{"two_dim_generators_forbid_strata_preserving", Status::pass,
                          "no strata-preserving J exists (dim n_2 = 1)"});
  } else {
    out.push_back(check("two_dim_generators_forbid_strata_preserving", !is_strata_preserving(*j, *s),
                        "J preserves every layer despite dim n_1 = 2"));
  }
  return out;
}

}  // namespace nilcs
