#pragma once

// J-invariant central series and the nilpotent step of J.
//
//   d^0 = {0},  d^j = {X : [X, n] ⊆ d^{j-1}, [JX, n] ⊆ d^{j-1}}
//   d_0 = n,    d_j = [d_{j-1}, n] + J[d_{j-1}, n]
//   p_0 = n,    p_j = [p_{j-1}, n] + [J p_{j-1}, n]
//
// J is nilpotent of step j0 when d^{j0} = n and d^{j0-1} ≠ n; equivalently
// p_{j0} = {0} ≠ p_{j0-1}, equivalently d_{j0} = {0} ≠ d_{j0-1}. None of this
// needs integrability, so every function here accepts any almost-complex J.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcs/complex_structure.hpp"
#include "nilcs/verdict.hpp"

namespace nilcs {

inline Series j_ascending_series(const LieAlgebra& alg, const ComplexStructure& j) {
  return iterate_until_stable(SeriesKind::ascending, Subspace::zero(alg.dim()), alg.dim(),
                              [&](const Subspace& prev) { return bracket_preimage(alg, prev, &j.matrix()); });
}

inline Series j_descending_series(const LieAlgebra& alg, const ComplexStructure& j) {
  const Subspace full = Subspace::full(alg.dim());
  return iterate_until_stable(SeriesKind::descending, full, alg.dim(), [&](const Subspace& prev) {
    const Subspace br = bracket_subspaces(alg, prev, full);
    return subspace_sum(br, j.image(br));
  });
}

inline Series p_series(const LieAlgebra& alg, const ComplexStructure& j) {
  const Subspace full = Subspace::full(alg.dim());
  return iterate_until_stable(SeriesKind::descending, full, alg.dim(), [&](const Subspace& prev) {
    return subspace_sum(bracket_subspaces(alg, prev, full), bracket_subspaces(alg, j.image(prev), full));
  });
}

struct SeriesReport {
  Series c_desc;
  Series c_asc;
  Series d_asc;
  Series d_desc;
  Series p_desc;
  std::optional<std::size_t> step;  // nilpotency step k of the algebra
  std::optional<std::size_t> j0;
  std::optional<std::size_t> j0_from_d_asc;
  std::optional<std::size_t> j0_from_p;
  std::optional<std::size_t> j0_from_d_desc;
  bool route_agreement = false;
};

class RouteDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline std::optional<std::size_t> first_full(const Series& s) {
  if (!s.terms.back().is_full()) return std::nullopt;
  return s.stabilized_at;
}

inline std::optional<std::size_t> first_zero(const Series& s) {
  if (!s.terms.back().is_zero()) return std::nullopt;
  return s.stabilized_at;
}

inline std::string show(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

}  // namespace detail

/// Computes all five series and j0 along the three equivalent routes. A
/// disagreement between routes is an implementation bug and throws.
inline SeriesReport nilpotent_step(const LieAlgebra& alg, const ComplexStructure& j) {
  SeriesReport r;
  r.c_desc = descending_central_series(alg);
  r.c_asc = ascending_central_series(alg);
  r.d_asc = j_ascending_series(alg, j);
  r.d_desc = j_descending_series(alg, j);
  r.p_desc = p_series(alg, j);
  r.step = nilpotency_step(r.c_desc);
  r.j0_from_d_asc = detail::first_full(r.d_asc);
  r.j0_from_p = detail::first_zero(r.p_desc);
  r.j0_from_d_desc = detail::first_zero(r.d_desc);
  r.route_agreement = r.j0_from_d_asc == r.j0_from_p && r.j0_from_p == r.j0_from_d_desc;
  if (!r.route_agreement)
    throw RouteDisagreement("j0 routes disagree: d^j gives " + detail::show(r.j0_from_d_asc) + ", p_j gives " +
                            detail::show(r.j0_from_p) + ", d_j gives " + detail::show(r.j0_from_d_desc));
  r.j0 = r.j0_from_d_asc;
  return r;
}

inline bool is_ideal(const LieAlgebra& alg, const Subspace& s) {
  return contains(s, bracket_subspaces(alg, s, Subspace::full(alg.dim())));
}

/// Containment lattice among the five series. Index-dependent checks run over
/// every index up to the longest stabilization point (plus one).
inline std::vector<Verdict> containment_audit(const LieAlgebra& alg, const ComplexStructure& j,
                                              const SeriesReport& r) {
  std::vector<Verdict> out;
  const Subspace full = Subspace::full(alg.dim());
  const std::size_t last = std::max({r.c_desc.stabilized_at, r.c_asc.stabilized_at, r.d_asc.stabilized_at,
                                     r.d_desc.stabilized_at, r.p_desc.stabilized_at}) + 1;

  auto for_all_j = [&](std::string name, auto&& pred) {
    for (std::size_t idx = 0; idx <= last; ++idx)
      if (!pred(idx)) {
        out.push_back(check(std::move(name), false, "fails at j = " + std::to_string(idx)));
        return;
      }
    out.push_back(check(std::move(name), true));
  };

  for_all_j("lower_central_in_p", [&](std::size_t i) { return contains(r.p_desc.at(i), r.c_desc.at(i)); });
  for_all_j("p_in_d_desc", [&](std::size_t i) { return contains(r.d_desc.at(i), r.p_desc.at(i)); });
  for_all_j("j_p_in_d_desc", [&](std::size_t i) { return contains(r.d_desc.at(i), j.image(r.p_desc.at(i))); });
  for_all_j("p_bracket_descends",
            [&](std::size_t i) { return contains(r.p_desc.at(i + 1), bracket_subspaces(alg, r.p_desc.at(i), full)); });
  for_all_j("p_plus_jp_is_ideal",
            [&](std::size_t i) { return is_ideal(alg, subspace_sum(r.p_desc.at(i), j.image(r.p_desc.at(i)))); });
  for_all_j("series_terms_are_ideals", [&](std::size_t i) {
    return is_ideal(alg, r.d_asc.at(i)) && is_ideal(alg, r.d_desc.at(i)) && is_ideal(alg, r.p_desc.at(i));
  });
  for_all_j("d_series_j_invariant",
            [&](std::size_t i) { return j.preserves(r.d_asc.at(i)) && j.preserves(r.d_desc.at(i)); });
  for_all_j("series_monotone", [&](std::size_t i) {
    return contains(r.d_asc.at(i + 1), r.d_asc.at(i)) && contains(r.d_desc.at(i), r.d_desc.at(i + 1)) &&
           contains(r.p_desc.at(i), r.p_desc.at(i + 1)) && contains(r.c_desc.at(i), r.c_desc.at(i + 1)) &&
           contains(r.c_asc.at(i + 1), r.c_asc.at(i));
  });

  const Subspace z = r.c_asc.at(1);
  out.push_back(check("d1_is_largest_j_invariant_in_center", r.d_asc.at(1) == largest_j_invariant_subspace(j, z),
                      "d^1 != z ∩ Jz"));

  if (!r.j0) {
    out.push_back(not_applicable("saturated_containment_chain", "J is not nilpotent"));
    out.push_back(not_applicable("derived_algebra_in_penultimate_d_asc", "J is not nilpotent"));
    out.push_back(not_applicable("last_d_desc_central_abelian", "J is not nilpotent"));
    out.push_back(not_applicable("d_desc_not_in_d_asc", "J is not nilpotent"));
    return out;
  }
  const std::size_t j0 = *r.j0;
  if (j0 == 0) return out;

  // c_j + Jc_j ⊆ p_j + Jp_j ⊆ d_j ⊆ d^{j0-j}
  {
    std::string failure;
    for (std::size_t i = 0; i <= j0 && failure.empty(); ++i) {
      const Subspace cj = subspace_sum(r.c_desc.at(i), j.image(r.c_desc.at(i)));
      const Subspace pj = subspace_sum(r.p_desc.at(i), j.image(r.p_desc.at(i)));
      if (!contains(pj, cj)) failure = "c_j + Jc_j ⊄ p_j + Jp_j at j = " + std::to_string(i);
      else if (!contains(r.d_desc.at(i), pj)) failure = "p_j + Jp_j ⊄ d_j at j = " + std::to_string(i);
      else if (!contains(r.d_asc.at(j0 - i), r.d_desc.at(i))) failure = "d_j ⊄ d^{j0-j} at j = " + std::to_string(i);
    }
    out.push_back(check("saturated_containment_chain", failure.empty(), failure));
  }

  out.push_back(check("derived_algebra_in_penultimate_d_asc", contains(r.d_asc.at(j0 - 1), r.c_desc.at(1)),
                      "[n, n] ⊄ d^{j0-1}"));

  {
    const Subspace& last_d = r.d_desc.at(j0 - 1);
    const bool ok = contains(r.d_asc.at(1), last_d) && contains(z, r.d_asc.at(1)) &&
                    bracket_subspaces(alg, last_d, last_d).is_zero();
    out.push_back(check("last_d_desc_central_abelian", ok, "d_{j0-1} ⊆ d^1 ⊆ z with d_{j0-1} abelian fails"));
  }

  {
    std::string failure;
    for (std::size_t i = 1; i <= j0 && failure.empty(); ++i)
      if (contains(r.d_asc.at(i - 1), r.d_desc.at(j0 - i)))
        failure = "d_{j0-j} ⊆ d^{j-1} at j = " + std::to_string(i);
    out.push_back(check("d_desc_not_in_d_asc", failure.empty(), failure));
  }
  return out;
}

/// Center dimension bounds for non-abelian algebras with nilpotent J, plus
/// k ≤ j0 ≤ dim / 2.
inline Verdict center_dim_bounds(const LieAlgebra& alg, const SeriesReport& r) {
  const std::string name = "center_dimension_bounds";
  if (!r.j0) return not_applicable(name, "J is not nilpotent");
  if (alg.is_abelian()) return not_applicable(name, "algebra is abelian");
  const std::size_t n = alg.dim();
  const std::size_t dz = r.c_asc.at(1).dim();
  const std::size_t dd1 = r.d_asc.at(1).dim();
  std::string failure;
  if (dz < 2 || dz + 2 > n) failure = "dim z = " + std::to_string(dz) + " outside [2, " + std::to_string(n - 2) + "]";
  else if (dd1 < 2 || dd1 % 2 != 0) failure = "dim d^1 = " + std::to_string(dd1) + " is not even and >= 2";
  else if (!r.step || *r.step > *r.j0 || 2 * *r.j0 > n)
    failure = "k <= j0 <= dim/2 fails (k = " + detail::show(r.step) + ", j0 = " + std::to_string(*r.j0) + ")";
  return check(name, failure.empty(), failure);
}

}  // namespace nilcs
