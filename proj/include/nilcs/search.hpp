#pragma once

// Randomised search for integrable complex structures.
//
// J is parametrised as P J0 P^-1 with P = [v_1 w_1 v_2 w_2 ...], so that
// J v_k = w_k and J w_k = -v_k. The v_k are fixed rational vectors per restart
// and the w_k are the unknowns. A Levenberg-Marquardt loop drives the Nijenhuis
// residual to zero in floating point. The unknowns are then rounded one at a
// time to continued-fraction convergents, re-solving the remaining free
// entries after each rounding. Once every entry is rational, J is rebuilt
// exactly and must pass validate_almost_complex and is_integrable; nothing
// else is ever returned.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "nilcs/complex_structure.hpp"

namespace nilcs {

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 100;
  double residual_threshold = 1e-10;
  std::int64_t denominator_cap = 1'000'000;
  std::size_t max_iterations = 200;
  // Called with every exact candidate and whether it was promoted.
  std::function<void(const Matrix&, bool)> on_candidate;
};

struct SearchStats {
  std::size_t restarts_used = 0;
  std::size_t float_converged = 0;
  std::size_t candidates_rejected = 0;
};

struct SearchResult {
  std::optional<ComplexStructure> structure;
  SearchStats stats;
};

/// The only way a search candidate becomes a result: exact J^2 = -I and exact
/// vanishing of the Nijenhuis tensor.
inline std::optional<ComplexStructure> promote_candidate(const LieAlgebra& alg, const Matrix& candidate) {
  try {
    ComplexStructure j = validate_almost_complex(alg, candidate);
    if (!is_integrable(alg, j).integrable()) return std::nullopt;
    return j;
  } catch (const InvalidStructure&) {
    return std::nullopt;
  } catch (const DimensionMismatch&) {
    return std::nullopt;
  }
}

/// Convergents p/q of x with q <= cap, in order of increasing denominator.
inline std::vector<Rational> continued_fraction_convergents(double x, std::int64_t cap) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  mpz_class p_prev = 1, p = static_cast<long>(std::floor(x));
  mpz_class q_prev = 0, q = 1;
  double rem = x - std::floor(x);
  out.emplace_back(p, q);
  for (int iter = 0; iter < 64 && rem > 1e-15; ++iter) {
    const double inv = 1.0 / rem;
    const double a_d = std::floor(inv);
    if (a_d > 1e15) break;
    const mpz_class a = static_cast<long>(a_d);
    mpz_class p_next = a * p + p_prev;
    mpz_class q_next = a * q + q_prev;
    if (q_next > cap) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    Rational r(p, q);
    r.canonicalize();
    out.push_back(r);
    rem = inv - a_d;
  }
  return out;
}

namespace search_detail {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct FloatAlgebra {
  std::size_t n;
  std::vector<double> c;  // c[(i*n + j)*n + k] = coefficient of e_k in [e_i, e_j]

  explicit FloatAlgebra(const LieAlgebra& alg) : n(alg.dim()), c(n * n * n, 0.0) {
    for (const auto& [key, value] : alg.structure_constants())
      for (std::size_t k = 0; k < n; ++k) {
        const double v = value[k].get_d();
        c[(key.first * n + key.second) * n + k] = v;
        c[(key.second * n + key.first) * n + k] = -v;
      }
  }

  VectorXd bracket(const VectorXd& x, const VectorXd& y) const {
    VectorXd out = VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double s = x[i] * y[j];
        if (s == 0.0) continue;
        const double* row = &c[(i * n + j) * n];
        for (std::size_t k = 0; k < n; ++k) out[k] += s * row[k];
      }
    }
    return out;
  }
};

/// Column layout of P: [v_1 w_1 v_2 w_2 ...]; the w block is n x (n/2),
/// flattened column-major into the parameter vector.
struct Chart {
  std::size_t n;
  MatrixXd v;  // n x n/2

  MatrixXd frame(const VectorXd& w) const {
    MatrixXd p(n, n);
    for (std::size_t k = 0; k < n / 2; ++k) {
      p.col(2 * k) = v.col(k);
      p.col(2 * k + 1) = w.segment(static_cast<Eigen::Index>(k * n), static_cast<Eigen::Index>(n));
    }
    return p;
  }
};

inline MatrixXd standard_j0(std::size_t n) {
  MatrixXd j0 = MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n; k += 2) {
    j0(k + 1, k) = 1.0;
    j0(k, k + 1) = -1.0;
  }
  return j0;
}

/// Stacked Nijenhuis values on basis pairs; empty when the frame is degenerate.
inline std::optional<VectorXd> residual(const FloatAlgebra& alg, const Chart& chart, const VectorXd& w) {
  const std::size_t n = alg.n;
  const MatrixXd p = chart.frame(w);
  Eigen::FullPivLU<MatrixXd> lu(p);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-9) return std::nullopt;
  const MatrixXd j = p * standard_j0(n) * lu.inverse();
  VectorXd out(static_cast<Eigen::Index>(n * (n * (n - 1) / 2)));
  Eigen::Index at = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      VectorXd ea = VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(a));
      VectorXd eb = VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(b));
      const VectorXd ja = j.col(static_cast<Eigen::Index>(a));
      const VectorXd jb = j.col(static_cast<Eigen::Index>(b));
      const VectorXd val = alg.bracket(ja, jb) - alg.bracket(ea, eb) - j * (alg.bracket(ja, eb) + alg.bracket(ea, jb));
      out.segment(at, static_cast<Eigen::Index>(n)) = val;
      at += static_cast<Eigen::Index>(n);
    }
  return out;
}

/// Levenberg-Marquardt over the entries not marked fixed. Returns the final
/// squared residual (infinity on a degenerate frame).
inline double minimise(const FloatAlgebra& alg, const Chart& chart, VectorXd& w, const std::vector<bool>& fixed,
                       std::size_t max_iterations) {
  auto r = residual(alg, chart, w);
  if (!r) return std::numeric_limits<double>::infinity();
  double cost = r->squaredNorm();
  std::vector<Eigen::Index> free;
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (!fixed[i]) free.push_back(static_cast<Eigen::Index>(i));
  if (free.empty()) return cost;

  double lambda = 1e-3;
  for (std::size_t iter = 0; iter < max_iterations && cost > 1e-28; ++iter) {
    MatrixXd jac(r->size(), static_cast<Eigen::Index>(free.size()));
    bool degenerate = false;
    for (std::size_t f = 0; f < free.size(); ++f) {
      const Eigen::Index idx = free[f];
      const double h = 1e-7 * std::max(1.0, std::abs(w[idx]));
      VectorXd wp = w;
      wp[idx] += h;
      auto rp = residual(alg, chart, wp);
      if (!rp) {
        degenerate = true;
        break;
      }
      jac.col(static_cast<Eigen::Index>(f)) = (*rp - *r) / h;
    }
    if (degenerate) break;

    const MatrixXd jtj = jac.transpose() * jac;
    const VectorXd grad = jac.transpose() * *r;
    bool improved = false;
    for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
      MatrixXd lhs = jtj;
      lhs.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const VectorXd step = lhs.ldlt().solve(-grad);
      VectorXd trial = w;
      for (std::size_t f = 0; f < free.size(); ++f) trial[free[f]] += step[static_cast<Eigen::Index>(f)];
      auto rt = residual(alg, chart, trial);
      if (rt && rt->squaredNorm() < cost) {
        w = trial;
        r = rt;
        cost = rt->squaredNorm();
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return cost;
}

inline Matrix exact_structure(std::size_t n, const Matrix& v, const std::vector<Rational>& w) {
  Matrix p(n, n);
  for (std::size_t k = 0; k < n / 2; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      p(i, 2 * k) = v(i, k);
      p(i, 2 * k + 1) = w[k * n + i];
    }
  return p * standard_complex_matrix(n) * inverse(p);
}

}  // namespace search_detail

/// Restarts are independent and deterministic given the seed; the first one
/// that yields an exactly verified structure wins.
inline SearchResult find_complex_structure(const LieAlgebra& alg, const SearchOptions& options = {}) {
  using namespace search_detail;
  const std::size_t n = alg.dim();
  if (n % 2 != 0) throw OddDimension(n);
  SearchResult result;
  if (n == 0) return result;

  const FloatAlgebra falg(alg);
  const std::size_t half = n / 2;
  const std::size_t m = n * half;

  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    ++result.stats.restarts_used;
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + restart);
    std::uniform_int_distribution<int> small(-2, 2);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Restart 0 uses odd basis vectors for v_k; later ones use random integer vectors.
    Matrix v_exact(n, half);
    for (std::size_t k = 0; k < half; ++k)
      for (std::size_t i = 0; i < n; ++i) v_exact(i, k) = restart == 0 ? (i == 2 * k ? 1 : 0) : small(rng);
    Chart chart{n, MatrixXd(n, half)};
    for (std::size_t k = 0; k < half; ++k)
      for (std::size_t i = 0; i < n; ++i) chart.v(i, k) = v_exact(i, k).get_d();

    VectorXd w(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) w[static_cast<Eigen::Index>(i)] = gauss(rng);

    std::vector<bool> fixed(m, false);
    if (minimise(falg, chart, w, fixed, options.max_iterations) > options.residual_threshold) continue;
    ++result.stats.float_converged;

    std::vector<Rational> exact(m);
    bool rounded_all = true;
    for (std::size_t idx = 0; idx < m && rounded_all; ++idx) {
      bool accepted = false;
      const VectorXd before = w;
      for (const Rational& cand : continued_fraction_convergents(w[static_cast<Eigen::Index>(idx)], options.denominator_cap)) {
        VectorXd trial = before;
        trial[static_cast<Eigen::Index>(idx)] = cand.get_d();
        fixed[idx] = true;
        if (minimise(falg, chart, trial, fixed, options.max_iterations) <= options.residual_threshold) {
          w = trial;
          exact[idx] = cand;
          accepted = true;
          break;
        }
      }
      rounded_all = accepted;
    }
    if (!rounded_all) continue;

    Matrix candidate;
    try {
      candidate = exact_structure(n, v_exact, exact);
    } catch (const SingularMatrix&) {
      ++result.stats.candidates_rejected;
      continue;
    }
    auto j = promote_candidate(alg, candidate);
    if (options.on_candidate) options.on_candidate(candidate, j.has_value());
    if (j) {
      result.structure = std::move(j);
      return result;
    }
    ++result.stats.candidates_rejected;
  }
  return result;
}

}  // namespace nilcs
