#pragma once

// Evaluates the structural statements about nilpotent complex structures on a
// concrete (algebra, J, stratification) instance. Each statement has its
// hypotheses checked exactly: unmet hypotheses give hypothesis-not-met, met
// hypotheses give pass or fail on the conclusion.
//
// Statements whose arguments only use J as a linear map with J^2 = -I are
// evaluated for any almost-complex J. Statements that rely on the
// Newlander-Nirenberg condition additionally require integrability.

#include <optional>
#include <string>
#include <vector>

#include "nilcs/stratification.hpp"

namespace nilcs {

struct SuiteContext {
  const LieAlgebra& alg;
  const ComplexStructure& j;
  const SeriesReport& series;
  bool integrable;
  SpecialFlags flags;
  Subspace z;
  std::optional<Stratification> strat;  // valid stratification, if one is known
  // Step 2 with J[n, n] = [n, n]: the layering built with phi = I, and whether it
  // verifies as a J-invariant stratification.
  std::optional<Stratification> j_strat;
  bool j_strat_valid = false;
  std::optional<Step2Classification> step2;  // integrable step-2 instances only
};

namespace suite_detail {

inline bool all_lower_central_invariant(const SuiteContext& c) {
  for (const auto& t : c.series.c_desc.terms)
    if (!c.j.preserves(t)) return false;
  return true;
}

inline bool all_upper_central_invariant(const SuiteContext& c) {
  for (const auto& t : c.series.c_asc.terms)
    if (!c.j.preserves(t)) return false;
  return true;
}

inline std::string j0_text(const SeriesReport& r) { return detail::show(r.j0); }

inline Verdict invariant_lower_series(const SuiteContext& c) {
  const std::string name = "invariant_lower_series_gives_p_equal_c";
  if (!c.series.step) return not_applicable(name, "algebra is not nilpotent");
  if (!all_lower_central_invariant(c)) return not_applicable(name, "some c_j is not J-invariant");
  const std::size_t k = *c.series.step;
  for (std::size_t i = 0; i <= k; ++i)
    if (c.series.p_desc.at(i) != c.series.c_desc.at(i))
      return check(name, false, "p_" + std::to_string(i) + " != c_" + std::to_string(i));
  return check(name, c.series.j0 == k, "j0 = " + j0_text(c.series) + " but step = " + std::to_string(k));
}

inline Verdict step_k_iff_d_desc_below_d_asc(const SuiteContext& c) {
  const std::string name = "j_step_equals_k_iff_d_desc_below_d_asc";
  if (!c.series.step) return not_applicable(name, "algebra is not nilpotent");
  const std::size_t k = *c.series.step;
  bool chain = true;
  for (std::size_t i = 0; i <= k && chain; ++i)
    chain = contains(c.series.d_asc.at(k - i), c.series.d_desc.at(i));
  const bool step_k = c.series.j0 == k;
  return check(name, chain == step_k,
               std::string("J nilpotent of step k is ") + (step_k ? "true" : "false") + " but the chain test gives " +
                   (chain ? "true" : "false"));
}

inline Verdict center_invariant_when_top_is_center(const SuiteContext& c) {
  const std::string name = "center_invariant_when_last_lower_term_is_center";
  if (!c.series.step || *c.series.step == 0) return not_applicable(name, "algebra is not nilpotent");
  const std::size_t k = *c.series.step;
  if (c.series.j0 != k) return not_applicable(name, "J is not nilpotent of step k");
  if (c.series.c_desc.at(k - 1) != c.z) return not_applicable(name, "c_{k-1} != z");
  return check(name, c.j.preserves(c.z), "Jz != z");
}

inline Verdict one_dim_center(const SuiteContext& c) {
  const std::string name = "one_dim_center_forbids_nilpotent_j";
  if (c.z.dim() != 1) return not_applicable(name, "dim z != 1");
  return check(name, !c.series.j0.has_value(), "J is nilpotent although dim z = 1");
}

inline Verdict step2_j_stratification(const SuiteContext& c) {
  const std::string name = "step2_invariant_derived_algebra_gives_j_stratification";
  if (c.series.step != 2) return not_applicable(name, "step != 2");
  if (!c.j_strat) return not_applicable(name, "[n, n] is not J-invariant");
  if (auto bad = verify_stratification(c.alg, *c.j_strat))
    return check(name, false, "constructed layers invalid: " + bad->message);
  return check(name, is_strata_preserving(c.j, *c.j_strat), "constructed layers are not J-invariant");
}

inline Verdict bi_invariant_preserves_series(const SuiteContext& c) {
  const std::string name = "bi_invariant_j_preserves_central_series";
  if (!c.flags.bi_invariant) return not_applicable(name, "J is not bi-invariant");
  return check(name, all_lower_central_invariant(c) && all_upper_central_invariant(c),
               "some central series term is not J-invariant");
}

inline Verdict abelian_preserves_upper_series(const SuiteContext& c) {
  const std::string name = "abelian_j_preserves_upper_central_series";
  if (!c.flags.abelian) return not_applicable(name, "J is not abelian");
  return check(name, all_upper_central_invariant(c), "some c^j is not J-invariant");
}

inline Verdict bi_invariant_layers_even(const SuiteContext& c) {
  const std::string name = "bi_invariant_j_gives_even_layers";
  if (!c.flags.bi_invariant) return not_applicable(name, "J is not bi-invariant");
  if (!c.strat) return not_applicable(name, "no stratification known");
  for (std::size_t l = 1; l <= c.strat->step(); ++l)
    if (c.strat->layer(l).dim() % 2 != 0) return check(name, false, "layer " + std::to_string(l) + " is odd");
  return check(name, true);
}

inline Verdict strata_preserving_lower_series(const SuiteContext& c) {
  const std::string name = "strata_preserving_j_has_step_k";
  if (!c.strat) return not_applicable(name, "no stratification known");
  if (!is_strata_preserving(c.j, *c.strat)) return not_applicable(name, "J is not strata-preserving");
  if (!all_lower_central_invariant(c)) return check(name, false, "some c_j is not J-invariant");
  return check(name, c.series.j0 == c.strat->step(),
               "j0 = " + j0_text(c.series) + " but step = " + std::to_string(c.strat->step()));
}

inline Verdict step2_case_predicts(const SuiteContext& c) {
  const std::string name = "step2_k_case_predicts_j0";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.series.step != 2) return not_applicable(name, "step != 2");
  const Step2Classification& cls = *c.step2;
  if (!cls.prediction_holds())
    return check(name, false, "predicted j0 = " + std::to_string(cls.predicted_j0) + ", computed " + j0_text(c.series));
  if (c.series.j0 != 2 && c.series.j0 != 3) return check(name, false, "j0 not in {2, 3}");
  if (cls.kind == Step2Case::k_full)
    return check(name, c.j_strat && is_strata_preserving(c.j, *c.j_strat),
                 "k = n_2 but the constructed layers are not J-invariant");
  return check(name, true);
}

inline Verdict step2_table(const SuiteContext& c) {
  const std::string name = "step2_center_strata_table";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.series.step != 2) return not_applicable(name, "step != 2");
  const bool cp = c.j.preserves(c.z);
  const bool sp = c.j.preserves(c.series.c_desc.at(1));
  if (c.series.j0 == 2) return check(name, cp || sp, "j0 = 2 but J preserves neither the center nor the strata");
  if (c.series.j0 == 3) return check(name, !cp && !sp, "j0 = 3 with J preserving the center or the strata");
  return check(name, false, "j0 = " + j0_text(c.series) + " for a step-2 algebra");
}

inline Verdict two_dim_top_step2(const SuiteContext& c) {
  const std::string name = "step2_two_dim_derived_algebra";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.series.step != 2) return not_applicable(name, "step != 2");
  const Subspace& n2 = c.series.c_desc.at(1);
  if (n2.dim() != 2) return not_applicable(name, "dim n_2 != 2");
  if (c.series.j0 != 2) return check(name, false, "j0 = " + j0_text(c.series) + ", expected 2");
  if (c.series.d_asc.at(1).dim() == 2 && !c.j.preserves(n2))
    return check(name, false, "dim d^1 = 2 but J n_2 != n_2");
  return check(name, true);
}

inline Verdict large_top_step2(const SuiteContext& c) {
  const std::string name = "step2_large_derived_algebra_gives_step3";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.series.step != 2) return not_applicable(name, "step != 2");
  const Subspace& n2 = c.series.c_desc.at(1);
  if (n2.dim() % 2 != 0 || n2.dim() < 4) return not_applicable(name, "dim n_2 is not 2l with l >= 2");
  const std::size_t l = n2.dim() / 2;
  if (c.series.d_asc.at(1).dim() > 4 * l - 2) return not_applicable(name, "dim d^1 > 4l - 2");
  if (c.j.preserves(n2)) return not_applicable(name, "J n_2 = n_2");
  return check(name, c.series.j0 == 3, "j0 = " + j0_text(c.series) + ", expected 3");
}

inline Verdict two_dim_top_layer(const SuiteContext& c) {
  const std::string name = "two_dim_top_layer_is_j_invariant";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (!c.strat) return not_applicable(name, "no stratification known");
  const std::size_t k = c.strat->step();
  if (c.series.j0 != k) return not_applicable(name, "J is not nilpotent of step k");
  const Subspace& top = c.strat->layer(k);
  if (top.dim() != 2 || c.series.d_asc.at(1).dim() != 2) return not_applicable(name, "dim n_k != 2 or dim d^1 != 2");
  return check(name, c.j.preserves(top), "J n_k != n_k");
}

inline Verdict center_or_strata_preserving(const SuiteContext& c) {
  const std::string name = "step2_two_dim_derived_center_or_strata";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.series.step != 2) return not_applicable(name, "step != 2");
  const Subspace& n2 = c.series.c_desc.at(1);
  if (n2.dim() != 2) return not_applicable(name, "dim n_2 != 2");
  const bool cp = c.j.preserves(c.z);
  const bool sp = c.j.preserves(n2);
  if (!cp && !sp) return check(name, false, "J preserves neither the center nor the strata");
  const std::size_t dz = c.z.dim();
  if ((dz >= 2 && dz <= 3) || (dz == 4 && !cp)) {
    if (!sp) return check(name, false, "expected a J-invariant stratification (J n_2 != n_2)");
    return check(name, c.j_strat_valid, "constructed J-invariant stratification failed verification");
  }
  return check(name, true);
}

inline Verdict six_dim_step2(const SuiteContext& c) {
  const std::string name = "six_dim_step2_admits_j_stratification";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.alg.dim() != 6 || c.series.step != 2 || c.series.c_desc.at(1).dim() != 2)
    return not_applicable(name, "not a 6-dimensional step-2 algebra with dim [n, n] = 2");
  if (!c.j.preserves(c.series.c_desc.at(1))) return check(name, false, "J [n, n] != [n, n]");
  return check(name, c.j_strat_valid, "constructed J-invariant stratification failed verification");
}

inline Verdict invariant_top_step3(const SuiteContext& c) {
  const std::string name = "step3_invariant_top_layer_gives_step3";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (!c.strat || c.strat->step() != 3) return not_applicable(name, "no step-3 stratification known");
  if (!c.j.preserves(c.strat->layer(3))) return not_applicable(name, "J n_3 != n_3");
  return check(name, c.series.j0 == 3, "j0 = " + j0_text(c.series) + ", expected 3");
}

inline Verdict eight_dim_step3(const SuiteContext& c) {
  const std::string name = "eight_dim_step3_noninvariant_top_gives_step4";
  if (!c.integrable) return not_applicable(name, "J is not integrable");
  if (c.alg.dim() != 8 || !c.strat || c.strat->step() != 3)
    return not_applicable(name, "not an 8-dimensional step-3 stratified algebra");
  const Subspace& n3 = c.strat->layer(3);
  if (n3.dim() != 2 || c.series.c_desc.at(1).dim() != 4) return not_applicable(name, "2 dim n_3 = dim c_1 = 4 fails");
  if (c.j.preserves(n3)) return not_applicable(name, "J n_3 = n_3");
  if (c.z.dim() > 3) return not_applicable(name, "dim z > 3");
  if (c.series.j0 != 4) return check(name, false, "j0 = " + j0_text(c.series) + ", expected 4");
  return check(name, c.series.d_desc.at(2) == subspace_sum(n3, c.j.image(n3)), "d_2 != n_3 ⊕ J n_3");
}

}  // namespace suite_detail

struct SuiteReport {
  std::vector<Verdict> verdicts;
  std::optional<Step2Classification> step2;  // integrable step-2 instances only
  bool passed() const { return no_failures(verdicts); }
};

/// Runs every statement against an already computed series report for (alg, j).
/// A supplied stratification is checked first; for step-2 algebras without
/// one, the canonical layering ([n, n] and a complement) is used.
inline SuiteReport theorem_suite(const LieAlgebra& alg, const ComplexStructure& j, const SeriesReport& series,
                                 const std::optional<Stratification>& supplied = std::nullopt) {
  SuiteReport out;
  std::optional<Stratification> strat;
  if (supplied) {
    if (auto bad = verify_stratification(alg, *supplied)) {
      out.verdicts.push_back(check("supplied_stratification_valid", false,
                                   std::string(to_string(bad->property)) + ": " + bad->message));
    } else {
      out.verdicts.push_back(check("supplied_stratification_valid", true));
      strat = supplied;
    }
  }
  if (!strat && series.step == 2) {
    const Matrix psi = Matrix::identity(alg.dim());
    strat = Stratification{{orthogonal_complement(series.c_desc.at(1), psi), series.c_desc.at(1)}};
  }

  SuiteContext ctx{alg, j, series, is_integrable(alg, j).integrable(), classify_special(alg, j),
                   series.c_asc.at(1), strat, std::nullopt, false, std::nullopt};
  if (series.step == 2 && j.preserves(series.c_desc.at(1))) {
    ctx.j_strat = build_step2_j_stratification(alg, j, Matrix::identity(alg.dim()));
    ctx.j_strat_valid = !verify_stratification(alg, *ctx.j_strat) && is_strata_preserving(j, *ctx.j_strat);
  }
  if (ctx.integrable && series.step == 2)
    ctx.step2 = detail::classify_step2_from(alg, j, std::nullopt, series.c_desc, series.d_asc, ctx.z, true);
  using namespace suite_detail;
  out.verdicts.push_back(check("route_agreement", series.route_agreement));
  out.verdicts.push_back(invariant_lower_series(ctx));
  out.verdicts.push_back(step_k_iff_d_desc_below_d_asc(ctx));
  out.verdicts.push_back(center_invariant_when_top_is_center(ctx));
  out.verdicts.push_back(center_dim_bounds(alg, series));
  out.verdicts.push_back(one_dim_center(ctx));
  for (auto& v : stratification_obstructions(alg, strat, &j)) out.verdicts.push_back(std::move(v));
  out.verdicts.push_back(step2_j_stratification(ctx));
  out.verdicts.push_back(bi_invariant_preserves_series(ctx));
  out.verdicts.push_back(abelian_preserves_upper_series(ctx));
  out.verdicts.push_back(bi_invariant_layers_even(ctx));
  out.verdicts.push_back(strata_preserving_lower_series(ctx));
  out.verdicts.push_back(step2_case_predicts(ctx));
  out.verdicts.push_back(step2_table(ctx));
  out.verdicts.push_back(two_dim_top_step2(ctx));
  out.verdicts.push_back(large_top_step2(ctx));
  out.verdicts.push_back(two_dim_top_layer(ctx));
  out.verdicts.push_back(center_or_strata_preserving(ctx));
  out.verdicts.push_back(six_dim_step2(ctx));
  out.verdicts.push_back(invariant_top_step3(ctx));
  out.verdicts.push_back(eight_dim_step3(ctx));
  out.step2 = std::move(ctx.step2);
  return out;
}

inline SuiteReport theorem_suite(const LieAlgebra& alg, const ComplexStructure& j,
                                 const std::optional<Stratification>& supplied = std::nullopt) {
  return theorem_suite(alg, j, nilpotent_step(alg, j), supplied);
}

}  // namespace nilcs
