#pragma once

// Finite-dimensional real Lie algebras given by rational structure constants,
// with the classical central series.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcs/linalg.hpp"

namespace nilcs {

/// [e_i, e_j] = out for 0-based i != j.
struct BracketEntry {
  std::size_t i;
  std::size_t j;
  Vector out;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Builds from basis brackets. Entries with i > j are stored negated; a
  /// pair given twice (in either order) must agree.
  LieAlgebra(std::size_t dim, const std::vector<BracketEntry>& brackets) : dim_(dim) {
    for (const auto& b : brackets) {
      if (b.i >= dim || b.j >= dim) throw std::out_of_range("bracket index out of range");
      if (b.out.size() != dim) throw DimensionMismatch("bracket output has wrong length");
      if (b.i == b.j) {
        if (!is_zero(b.out)) throw std::invalid_argument("[e_i, e_i] must vanish");
        continue;
      }
      const bool flip = b.i > b.j;
      const auto key = flip ? std::make_pair(b.j, b.i) : std::make_pair(b.i, b.j);
      Vector value = flip ? -b.out : b.out;
      if (auto it = constants_.find(key); it != constants_.end()) {
        if (it->second != value) throw std::invalid_argument("conflicting brackets for the same pair");
        continue;
      }
      if (!is_zero(value)) constants_.emplace(key, std::move(value));
    }
    mpz_class scale = 1;
    for (const auto& [key, value] : constants_)
      for (const auto& x : value) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& [key, value] : constants_) {
      detail::IntRow row(dim_);
      for (std::size_t k = 0; k < dim_; ++k)
        if (value[k] != 0) row[k] = value[k].get_num() * (scale / value[k].get_den());
      scaled_.push_back({key.first, key.second, std::move(row)});
    }
  }

  static LieAlgebra abelian(std::size_t dim) { return LieAlgebra(dim, {}); }

  std::size_t dim() const { return dim_; }

  /// Nonzero structure constants, keyed by (i, j) with i < j.
  const std::map<std::pair<std::size_t, std::size_t>, Vector>& structure_constants() const { return constants_; }

  Vector basis_bracket(std::size_t i, std::size_t j) const {
    if (i == j) return zero_vector(dim_);
    const bool flip = i > j;
    auto it = constants_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == constants_.end()) return zero_vector(dim_);
    return flip ? -it->second : it->second;
  }

  Vector bracket(std::span<const Rational> x, std::span<const Rational> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("bracket: vector length != dim");
    Vector out = zero_vector(dim_);
    for (const auto& [key, value] : constants_) {
      const auto [i, j] = key;
      const bool a = x[i] != 0 && y[j] != 0, b = x[j] != 0 && y[i] != 0;
      if (!a && !b) continue;
      Rational coeff = a ? Rational(x[i] * y[j]) : Rational(0);
      if (b) coeff -= x[j] * y[i];
      axpy(coeff, value, out);
    }
    return out;
  }

  /// Matrix of ad x = [x, .]; column k is [x, e_k]. One pass over the constants.
  Matrix adjoint(std::span<const Rational> x) const {
    if (x.size() != dim_) throw DimensionMismatch("adjoint: vector length != dim");
    Matrix out(dim_, dim_);
    for (const auto& [key, value] : constants_) {
      const auto [i, j] = key;
      // [x, e_j] gets x_i c_ij and [x, e_i] gets -x_j c_ij.
      if (x[i] != 0)
        for (std::size_t k = 0; k < dim_; ++k)
          if (value[k] != 0) out(k, j) += x[i] * value[k];
      if (x[j] != 0)
        for (std::size_t k = 0; k < dim_; ++k)
          if (value[k] != 0) out(k, i) -= x[j] * value[k];
    }
    return out;
  }

  /// Matrix of X -> [X, y]; column k is [e_k, y].
  Matrix right_bracket_matrix(std::span<const Rational> y) const { return Rational(-1) * adjoint(y); }

  bool is_abelian() const { return constants_.empty(); }

  /// The structure constants times one common positive integer.
  struct ScaledConstant {
    std::size_t i;
    std::size_t j;
    detail::IntRow out;
  };
  const std::vector<ScaledConstant>& scaled_constants() const { return scaled_; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.constants_ == b.constants_;
  }

 private:
  std::size_t dim_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Vector> constants_;
  std::vector<ScaledConstant> scaled_;
};

namespace detail {

/// s [u, v] for integer vectors, where s is the common scale of the scaled constants.
inline IntRow scaled_bracket(const LieAlgebra& alg, const IntRow& u, const IntRow& v) {
  const std::size_t n = alg.dim();
  IntRow w(n);
  mpz_class coeff;
  for (const auto& c : alg.scaled_constants()) {
    coeff = u[c.i] * v[c.j] - u[c.j] * v[c.i];
    if (coeff == 0) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (c.out[k] != 0) w[k] += coeff * c.out[k];
  }
  return w;
}

}  // namespace detail

/// Span of [u, v] over basis pairs of a and b. Computed over the integers:
/// basis rows and constants are rescaled, which leaves the span unchanged.
inline Subspace bracket_subspaces(const LieAlgebra& alg, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != alg.dim() || b.ambient_dim() != alg.dim())
    throw DimensionMismatch("bracket_subspaces: ambient dimension != algebra dimension");
  const std::size_t n = alg.dim();
  if (a.is_zero() || b.is_zero() || alg.is_abelian()) return Subspace::zero(n);
  const bool b_full = b.is_full();
  const Subspace& left = !b_full && a.is_full() ? b : a;
  const Subspace& right = !b_full && a.is_full() ? a : b;
  std::vector<detail::IntRow> out;
  for (std::size_t r = 0; r < left.dim(); ++r) {
    const detail::IntRow x = detail::primitive_row(left.basis().row_span(r));
    if (right.is_full()) {
      // [x, e_j] gets x_i c_ij and [x, e_i] gets -x_j c_ij.
      std::vector<detail::IntRow> cols(n, detail::IntRow(n));
      for (const auto& c : alg.scaled_constants())
        for (std::size_t k = 0; k < n; ++k) {
          if (c.out[k] == 0) continue;
          if (x[c.i] != 0) cols[c.j][k] += x[c.i] * c.out[k];
          if (x[c.j] != 0) cols[c.i][k] -= x[c.j] * c.out[k];
        }
      for (auto& col : cols) out.push_back(std::move(col));
      continue;
    }
    for (std::size_t s = 0; s < right.dim(); ++s)
      out.push_back(detail::scaled_bracket(alg, x, detail::primitive_row(right.basis().row_span(s))));
  }
  return Subspace::from_int_rows(std::move(out), n);
}

/// First failing Jacobi triple, with 1-based labels as printed to users.
struct JacobiViolation {
  std::array<std::size_t, 3> triple;
  Vector residual;
};

struct ValidationReport {
  std::optional<JacobiViolation> violation;
  bool valid() const { return !violation.has_value(); }
};

inline Vector jacobi_residual(const LieAlgebra& alg, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = alg.dim();
  const Vector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
  return alg.bracket(alg.basis_bracket(i, j), ek) + alg.bracket(alg.basis_bracket(j, k), ei) +
         alg.bracket(alg.basis_bracket(k, i), ej);
}

/// Checks the Jacobi identity on every basis triple i < j < k. Antisymmetry
/// holds by construction of LieAlgebra.
inline ValidationReport validate(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector res = jacobi_residual(alg, i, j, k);
        if (!is_zero(res)) return {JacobiViolation{{i + 1, j + 1, k + 1}, std::move(res)}};
      }
  return {};
}

enum class SeriesKind { descending, ascending };

/// Terms 0..stabilized_at; every later term equals the last one.
struct Series {
  SeriesKind kind = SeriesKind::descending;
  std::vector<Subspace> terms;
  std::size_t stabilized_at = 0;

  const Subspace& at(std::size_t j) const { return terms.at(std::min(j, terms.size() - 1)); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& t : terms) d.push_back(t.dim());
    return d;
  }
};

class StabilizationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterates next() from first until two consecutive terms agree. A monotone
/// chain in dimension n stabilizes within n + 1 steps; beyond that is a bug.
inline Series iterate_until_stable(SeriesKind kind, Subspace first, std::size_t ambient_dim,
                                   const std::function<Subspace(const Subspace&)>& next) {
  Series s{kind, {std::move(first)}, 0};
  for (std::size_t iter = 0; iter <= ambient_dim + 1; ++iter) {
    Subspace following = next(s.terms.back());
    if (following == s.terms.back()) {
      s.stabilized_at = s.terms.size() - 1;
      return s;
    }
    s.terms.push_back(std::move(following));
  }
  throw StabilizationFailure("series did not stabilize within dim + 1 iterations");
}

inline Series descending_central_series(const LieAlgebra& alg) {
  const Subspace full = Subspace::full(alg.dim());
  return iterate_until_stable(SeriesKind::descending, full, alg.dim(),
                              [&](const Subspace& prev) { return bracket_subspaces(alg, full, prev); });
}

/// {X : [X, e_i] ∈ target for all i}, optionally also requiring [J X, e_i] ∈ target.
inline Subspace bracket_preimage(const LieAlgebra& alg, const Subspace& target, const Matrix* also_through = nullptr) {
  const std::size_t n = alg.dim();
  const Matrix ann = annihilator(target).basis();
  const Matrix jt = also_through != nullptr ? also_through->transpose() : Matrix();
  std::vector<Vector> rows;
  rows.reserve(ann.rows() * n * (also_through ? 2 : 1));
  for (std::size_t a = 0; a < ann.rows(); ++a) {
    // y([X, e_i]) = sum_k X_k y([e_k, e_i]); column i of pairing holds y([e_k, e_i]).
    const auto y = ann.row_span(a);
    Matrix pairing(n, n);
    for (const auto& [key, value] : alg.structure_constants()) {
      Rational v = 0;
      for (std::size_t m = 0; m < n; ++m)
        if (value[m] != 0 && y[m] != 0) v += y[m] * value[m];
      if (v == 0) continue;
      pairing(key.first, key.second) = v;
      pairing(key.second, key.first) = -v;
    }
    const Matrix t = pairing.transpose();
    for (std::size_t i = 0; i < n; ++i) {
      Vector row = t.row(i);
      if (is_zero(row)) continue;
      // [J X, e_i] ∈ target adds the row J^T row.
      if (also_through != nullptr) rows.push_back(jt.apply(row));
      rows.push_back(std::move(row));
    }
  }
  return solve_membership_kernel(Matrix::from_rows(rows, n));
}

inline Series ascending_central_series(const LieAlgebra& alg) {
  return iterate_until_stable(SeriesKind::ascending, Subspace::zero(alg.dim()), alg.dim(),
                              [&](const Subspace& prev) { return bracket_preimage(alg, prev); });
}

inline Subspace center(const LieAlgebra& alg) { return bracket_preimage(alg, Subspace::zero(alg.dim())); }

/// Least k with c_k = {0}; empty when the lower central series stalls at a
/// nonzero ideal.
inline std::optional<std::size_t> nilpotency_step(const Series& descending) {
  if (!descending.terms.back().is_zero()) return std::nullopt;
  return descending.stabilized_at;
}

inline std::optional<std::size_t> nilpotency_step(const LieAlgebra& alg) {
  return nilpotency_step(descending_central_series(alg));
}

/// Structure constants of the same bracket in the basis f_a = sum_i p(i, a) e_i.
inline LieAlgebra change_of_basis(const LieAlgebra& alg, const Matrix& p) {
  const std::size_t n = alg.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionMismatch("change_of_basis: matrix size != dim");
  const Matrix p_inv = inverse(p);
  std::vector<BracketEntry> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector w = alg.bracket(p.column(a), p.column(b));
      if (!is_zero(w)) out.push_back({a, b, p_inv.apply(w)});
    }
  return LieAlgebra(n, out);
}

}  // namespace nilcs
