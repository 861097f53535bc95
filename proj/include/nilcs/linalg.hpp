#pragma once

// Exact linear algebra over Q: dense matrices, reduced row echelon form, and
// subspaces held in canonical (RREF) form so that equality is syntactic.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcs/rational.hpp"

namespace nilcs {

using Vector = std::vector<Rational>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPositiveDefinite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

/// Standard basis vector e_k with 0-based k.
inline Vector unit_vector(std::size_t n, std::size_t k) {
  Vector v = zero_vector(n);
  v.at(k) = 1;
  return v;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector operator*(const Rational& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

inline Vector operator-(const Vector& v) { return Rational(-1) * v; }

/// Adds s*src into dst.
inline void axpy(const Rational& s, std::span<const Rational> src, std::span<Rational> dst) {
  if (s == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (src[i] != 0) dst[i] += s * src[i];
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Rows may be empty only when cols is given explicitly.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionMismatch("row length mismatch");
      std::copy(rows[r].begin(), rows[r].end(), m.row_span(r).begin());
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw DimensionMismatch("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row_span(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row_span(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector row(std::size_t r) const {
    auto s = row_span(r);
    return Vector(s.begin(), s.end());
  }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::vector<Vector> row_vectors() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Vector apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product: length mismatch");
    Vector out = zero_vector(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (v[c] != 0 && (*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend Matrix operator*(const Rational& s, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x *= s;
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Pivot-column indices of a matrix already in RREF.
inline std::vector<std::size_t> pivot_columns(const Matrix& r) {
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    auto row = r.row_span(i);
    auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
    if (it != row.end()) pivots.push_back(static_cast<std::size_t>(it - row.begin()));
  }
  return pivots;
}

namespace detail {

using IntRow = std::vector<mpz_class>;

/// Row scaled to coprime integers; zero rows stay zero.
inline IntRow primitive_row(std::span<const Rational> row) {
  mpz_class l = 1;
  for (const auto& x : row)
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRow out(row.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0) continue;
    out[i] = row[i].get_num() * (l / row[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& x : row)
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// RREF of the row space of integer rows, each already primitive.
inline Matrix rref_of_primitive(std::vector<IntRow> rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  mpz_class a, b;
  for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
    // Smallest nonzero entry as pivot keeps intermediate integers short.
    std::size_t pivot = rows.size();
    for (std::size_t r = lead; r < rows.size(); ++r)
      if (rows[r][col] != 0 && (pivot == rows.size() || mpz_cmpabs(rows[r][col].get_mpz_t(), rows[pivot][col].get_mpz_t()) < 0)) pivot = r;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[lead]);
    const IntRow& p = rows[lead];
    for (std::size_t r = lead + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      // row := (p[col]/g) * row - (row[col]/g) * p, which clears column col.
      mpz_gcd(b.get_mpz_t(), p[col].get_mpz_t(), rows[r][col].get_mpz_t());
      a = p[col] / b;
      b = rows[r][col] / b;
      for (std::size_t c = col; c < cols; ++c) {
        rows[r][c] *= a;
        if (p[c] != 0) rows[r][c] -= b * p[c];
      }
      make_primitive(rows[r]);
    }
    pivots.push_back(col);
    ++lead;
  }

  Matrix out(lead, cols);
  for (std::size_t r = lead; r-- > 0;) {
    Rational inv(mpz_class(1), rows[r][pivots[r]]);
    inv.canonicalize();
    auto row = out.row_span(r);
    for (std::size_t c = pivots[r]; c < cols; ++c)
      if (rows[r][c] != 0) row[c] = Rational(rows[r][c]) * inv;
    for (std::size_t below = r + 1; below < lead; ++below) {
      const Rational factor = row[pivots[below]];
      if (factor != 0) axpy(-factor, out.row_span(below), row);
    }
  }
  return out;
}

}  // namespace detail

/// Reduced row echelon form with zero rows removed. The result is unique for
/// a given row space.
///
/// Forward elimination runs fraction-free on primitive integer rows; only the
/// surviving pivot rows are back-substituted over Q.
inline Matrix rref(const Matrix& m) {
  std::vector<detail::IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(detail::primitive_row(m.row_span(r)));
  return detail::rref_of_primitive(std::move(rows), m.cols());
}

inline std::size_t rank(const Matrix& m) { return rref(m).rows(); }

/// Gauss-Jordan inverse. Throws SingularMatrix.
inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  Matrix red = rref(aug);
  if (red.rows() != n) throw SingularMatrix("matrix is singular");
  for (std::size_t r = 0; r < n; ++r)
    if (red(r, r) != 1) throw SingularMatrix("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
  return inv;
}

/// True iff every leading principal minor is positive (Sylvester). Computed
/// by elimination without pivoting: the minors are the running products of
/// the pivots, so all pivots must be positive.
inline bool is_symmetric_positive_definite(const Matrix& gram) {
  if (!gram.is_symmetric()) return false;
  Matrix a = gram;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      Rational factor = -a(r, k) / a(k, k);
      axpy(factor, a.row_span(k), a.row_span(r));
    }
  }
  return true;
}

/// A linear subspace of Q^n stored as the RREF of a spanning set. The zero
/// subspace has a basis with no rows.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n) { return from_matrix(Matrix::identity(n)); }

  static Subspace from_matrix(const Matrix& spanning_rows) {
    Subspace s;
    s.basis_ = rref(spanning_rows);
    return s;
  }

  /// Span of integer rows, which need not be primitive.
  static Subspace from_int_rows(std::vector<detail::IntRow> rows, std::size_t ambient_dim) {
    for (auto& r : rows) detail::make_primitive(r);
    Subspace s;
    s.basis_ = detail::rref_of_primitive(std::move(rows), ambient_dim);
    return s;
  }

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    return from_matrix(Matrix::from_rows(vectors, ambient_dim));
  }

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  const Matrix& basis() const { return basis_; }
  std::vector<Vector> basis_vectors() const { return basis_.row_vectors(); }

  bool contains_vector(std::span<const Rational> v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("membership test: length mismatch");
    Vector rem(v.begin(), v.end());
    const auto pivots = pivot_columns(basis_);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Rational coeff = rem[pivots[r]];
      if (coeff != 0) axpy(-coeff, basis_.row_span(r), rem);
    }
    return nilcs::is_zero(rem);
  }

  /// {m v : v in this}. m must have ambient_dim columns.
  Subspace image(const Matrix& m) const {
    if (m.cols() != ambient_dim()) throw DimensionMismatch("image: matrix width != ambient dimension");
    std::vector<Vector> images;
    images.reserve(dim());
    for (std::size_t r = 0; r < dim(); ++r) images.push_back(m.apply(basis_.row_span(r)));
    return span(m.rows(), images);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix basis_;
};

namespace detail {

inline void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch(std::string(op) + ": ambient dimensions " + std::to_string(a.ambient_dim()) +
                            " and " + std::to_string(b.ambient_dim()) + " differ");
}

}  // namespace detail

/// {x : conditions * x = 0}.
inline Subspace solve_membership_kernel(const Matrix& conditions) {
  const std::size_t n = conditions.cols();
  const Matrix red = rref(conditions);
  const auto pivots = pivot_columns(red);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector x = unit_vector(n, free);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -red(r, free);
    basis.push_back(std::move(x));
  }
  return Subspace::span(n, basis);
}

/// Annihilator under the standard pairing: rows y with <y, a> = 0. Membership
/// in a is then "annihilator(a) * v == 0".
inline Subspace annihilator(const Subspace& a) { return solve_membership_kernel(a.basis()); }

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b, "subspace_sum");
  if (b.is_zero() || a.is_full()) return a;
  if (a.is_zero() || b.is_full()) return b;
  auto rows = a.basis_vectors();
  auto more = b.basis_vectors();
  rows.insert(rows.end(), more.begin(), more.end());
  return Subspace::span(a.ambient_dim(), rows);
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b, "subspace_intersection");
  // a ∩ b = ann(ann(a) + ann(b))
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

/// b ⊆ a
inline bool contains(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b, "contains");
  // Bases are in RREF, so equal dimensions leave only equality.
  if (b.dim() >= a.dim()) return b.dim() == a.dim() && a == b;
  if (b.is_zero() || a.is_full()) return true;
  for (std::size_t r = 0; r < b.dim(); ++r)
    if (!a.contains_vector(b.basis().row_span(r))) return false;
  return true;
}

/// Complement of a with respect to the inner product given by gram.
inline Subspace orthogonal_complement(const Subspace& a, const Matrix& gram) {
  if (gram.rows() != a.ambient_dim() || gram.cols() != a.ambient_dim())
    throw DimensionMismatch("orthogonal_complement: gram size != ambient dimension");
  if (!is_symmetric_positive_definite(gram))
    throw NotPositiveDefinite("orthogonal_complement: gram matrix is not symmetric positive definite");
  return solve_membership_kernel(a.basis() * gram);
}

}  // namespace nilcs
