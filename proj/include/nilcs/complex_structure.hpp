#pragma once

// Almost-complex structures on a Lie algebra and the Newlander-Nirenberg
// (Nijenhuis) integrability condition.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcs/lie_algebra.hpp"

namespace nilcs {

class InvalidStructure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddDimension : public InvalidStructure {
 public:
  explicit OddDimension(std::size_t dim)
      : InvalidStructure("odd dimension " + std::to_string(dim) + " admits no almost-complex structure") {}
};

/// J^2 + I has a nonzero entry at (row, col), 1-based.
class NotAlmostComplex : public InvalidStructure {
 public:
  NotAlmostComplex(std::size_t row, std::size_t col, Rational value)
      : InvalidStructure("J^2 + I is nonzero at entry (" + std::to_string(row) + ", " + std::to_string(col) +
                         "): " + to_string(value)),
        row_(row),
        col_(col),
        value_(std::move(value)) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  const Rational& value() const { return value_; }

 private:
  std::size_t row_;
  std::size_t col_;
  Rational value_;
};

/// A rational matrix J with J^2 = -I. Only validate_almost_complex makes one.
class ComplexStructure {
 public:
  const Matrix& matrix() const { return j_; }
  std::size_t dim() const { return j_.rows(); }
  Vector apply(std::span<const Rational> v) const { return j_.apply(v); }
  Subspace image(const Subspace& s) const { return s.image(j_); }
  // J is invertible, so J s ⊆ s already forces J s = s.
  bool preserves(const Subspace& s) const {
    for (std::size_t r = 0; r < s.dim(); ++r)
      if (!s.contains_vector(j_.apply(s.basis().row_span(r)))) return false;
    return true;
  }

  friend bool operator==(const ComplexStructure& a, const ComplexStructure& b) { return a.j_ == b.j_; }

 private:
  explicit ComplexStructure(Matrix j) : j_(std::move(j)) {}
  friend ComplexStructure validate_almost_complex(std::size_t dim, const Matrix& j);

  Matrix j_;
};

inline ComplexStructure validate_almost_complex(std::size_t dim, const Matrix& j) {
  if (dim % 2 != 0) throw OddDimension(dim);
  if (j.rows() != dim || j.cols() != dim)
    throw DimensionMismatch("J must be " + std::to_string(dim) + "x" + std::to_string(dim));
  const Matrix sq = j * j + Matrix::identity(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (sq(r, c) != 0) throw NotAlmostComplex(r + 1, c + 1, sq(r, c));
  return ComplexStructure(j);
}

inline ComplexStructure validate_almost_complex(const LieAlgebra& alg, const Matrix& j) {
  return validate_almost_complex(alg.dim(), j);
}

/// Block-diagonal J0 with J0 e_{2k-1} = e_{2k}.
inline Matrix standard_complex_matrix(std::size_t dim) {
  if (dim % 2 != 0) throw OddDimension(dim);
  Matrix j(dim, dim);
  for (std::size_t k = 0; k < dim; k += 2) {
    j(k + 1, k) = 1;
    j(k, k + 1) = -1;
  }
  return j;
}

/// Matrix sending e_{a_k} -> e_{b_k} and e_{b_k} -> -e_{a_k} for 1-based pairs.
inline Matrix complex_matrix_from_pairs(std::size_t dim, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Matrix j(dim, dim);
  for (auto [a, b] : pairs) {
    j(b - 1, a - 1) = 1;
    j(a - 1, b - 1) = -1;
  }
  return j;
}

/// [JX, JY] - [X, Y] - J([JX, Y] + [X, JY])
inline Vector nijenhuis(const LieAlgebra& alg, const ComplexStructure& j, std::span<const Rational> x,
                        std::span<const Rational> y) {
  const Vector jx = j.apply(x);
  const Vector jy = j.apply(y);
  const Vector mixed = alg.bracket(jx, y) + alg.bracket(x, jy);
  return alg.bracket(jx, jy) - alg.bracket(x, y) - j.apply(mixed);
}

/// Basis pair (1-based) where the Nijenhuis tensor does not vanish.
struct NijenhuisWitness {
  std::size_t i;
  std::size_t j;
  Vector value;
};

struct IntegrabilityReport {
  std::vector<NijenhuisWitness> witnesses;
  bool integrable() const { return witnesses.empty(); }
};

namespace detail {

// J = m / d with m an integer matrix, stored by columns, and d > 0.
struct ScaledMatrix {
  std::vector<IntRow> columns;
  mpz_class d = 1;

  explicit ScaledMatrix(const Matrix& j) {
    const std::size_t n = j.rows();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), j(r, c).get_den_mpz_t());
    columns.assign(n, IntRow(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (j(r, c) != 0) columns[c][r] = j(r, c).get_num() * (d / j(r, c).get_den());
  }

  IntRow apply(const IntRow& v) const {
    IntRow out(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (v[c] == 0) continue;
      for (std::size_t r = 0; r < out.size(); ++r)
        if (columns[c][r] != 0) out[r] += columns[c][r] * v[c];
    }
    return out;
  }
};

inline IntRow int_unit(std::size_t n, std::size_t k) {
  IntRow e(n);
  e[k] = 1;
  return e;
}

inline bool is_zero(const IntRow& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace detail

/// The tensor is bilinear and antisymmetric, so basis pairs i < j suffice.
/// With J = m / d the test runs over the integers on
/// d^2 N(x, y) = [mx, my] - d^2 [x, y] - m([mx, y] + [x, my]).
inline IntegrabilityReport is_integrable(const LieAlgebra& alg, const ComplexStructure& j) {
  const std::size_t n = alg.dim();
  const detail::ScaledMatrix m(j.matrix());
  const mpz_class d2 = m.d * m.d;
  IntegrabilityReport report;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const detail::IntRow ea = detail::int_unit(n, a);
    const detail::IntRow& ma = m.columns[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      const detail::IntRow eb = detail::int_unit(n, b);
      const detail::IntRow& mb = m.columns[b];
      detail::IntRow v = detail::scaled_bracket(alg, ma, mb);
      const detail::IntRow xy = detail::scaled_bracket(alg, ea, eb);
      detail::IntRow mixed = detail::scaled_bracket(alg, ma, eb);
      const detail::IntRow other = detail::scaled_bracket(alg, ea, mb);
      for (std::size_t k = 0; k < n; ++k) mixed[k] += other[k];
      const detail::IntRow jm = m.apply(mixed);
      for (std::size_t k = 0; k < n; ++k) v[k] -= d2 * xy[k] + jm[k];
      if (!detail::is_zero(v))
        report.witnesses.push_back({a + 1, b + 1, nijenhuis(alg, j, unit_vector(n, a), unit_vector(n, b))});
    }
  }
  return report;
}

struct SpecialFlags {
  bool abelian = false;       // [JX, JY] = [X, Y]
  bool bi_invariant = false;  // J[X, Y] = [JX, Y]
};

// Over the integers with J = m / d: abelian is [mx, my] = d^2 [x, y] and
// bi-invariant is m[x, y] = [mx, y], on basis pairs.
inline SpecialFlags classify_special(const LieAlgebra& alg, const ComplexStructure& j) {
  const std::size_t n = alg.dim();
  const detail::ScaledMatrix m(j.matrix());
  const mpz_class d2 = m.d * m.d;
  SpecialFlags flags{true, true};
  for (std::size_t a = 0; a < n && (flags.abelian || flags.bi_invariant); ++a) {
    const detail::IntRow ea = detail::int_unit(n, a);
    for (std::size_t b = 0; b < n && (flags.abelian || flags.bi_invariant); ++b) {
      const detail::IntRow eb = detail::int_unit(n, b);
      const detail::IntRow xy = detail::scaled_bracket(alg, ea, eb);
      if (flags.abelian && b > a) {
        const detail::IntRow lhs = detail::scaled_bracket(alg, m.columns[a], m.columns[b]);
        for (std::size_t k = 0; k < n && flags.abelian; ++k)
          if (lhs[k] != d2 * xy[k]) flags.abelian = false;
      }
      if (flags.bi_invariant && m.apply(xy) != detail::scaled_bracket(alg, m.columns[a], eb)) flags.bi_invariant = false;
    }
  }
  return flags;
}

/// psi = phi + J^T phi J, the J-invariant symmetrisation of phi.
inline Matrix j_invariant_inner_product(const ComplexStructure& j, const Matrix& phi) {
  if (phi.rows() != j.dim() || phi.cols() != j.dim()) throw DimensionMismatch("phi size != dim");
  if (!is_symmetric_positive_definite(phi)) throw NotPositiveDefinite("phi is not symmetric positive definite");
  return phi + j.matrix().transpose() * phi * j.matrix();
}

/// w ∩ Jw: the largest J-invariant subspace of w.
inline Subspace largest_j_invariant_subspace(const ComplexStructure& j, const Subspace& w) {
  return subspace_intersection(w, j.image(w));
}

/// J expressed in the basis given by the columns of p: p^-1 J p.
inline ComplexStructure conjugate(const ComplexStructure& j, const Matrix& p) {
  return validate_almost_complex(j.dim(), inverse(p) * j.matrix() * p);
}

}  // namespace nilcs
