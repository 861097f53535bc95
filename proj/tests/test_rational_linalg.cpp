#include <catch_amalgamated.hpp>

#include <random>

#include "nilcs/linalg.hpp"
#include "oracles.hpp"

using namespace nilcs;

namespace {

Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

Subspace span3(std::initializer_list<std::initializer_list<int>> vs) {
  std::vector<Vector> rows;
  for (auto v : vs) rows.push_back(vec(v));
  return Subspace::span(3, rows);
}

Subspace random_subspace(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> count(0, n);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::vector<Vector> vs(count(rng), zero_vector(n));
  for (auto& v : vs)
    for (auto& x : v) x = entry(rng);
  return Subspace::span(n, vs);
}

}  // namespace

TEST_CASE("parse_rational accepts integers, fractions and both minus signs") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("−2/4") == Rational(-1, 2));
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
}

TEST_CASE("parse_rational rejects malformed input and zero denominators") {
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(parse_rational("--1"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("rref examples") {
  CHECK(rref(Matrix{{0, 0}, {0, 0}}).rows() == 0);
  CHECK(rref(Matrix{{2, 0}, {0, 3}}) == Matrix{{1, 0}, {0, 1}});
  CHECK(rref(Matrix{{1, 2}, {2, 4}}) == Matrix{{1, 2}});
  CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("subspace sum examples") {
  CHECK(subspace_sum(span3({{1, 0, 0}}), span3({{0, 1, 0}})) == span3({{1, 0, 0}, {0, 1, 0}}));
  CHECK(subspace_sum(span3({{1, 0, 0}}), span3({{1, 0, 0}})) == span3({{1, 0, 0}}));
  CHECK(subspace_sum(span3({{1, 1, 0}}), span3({{1, -1, 0}})) == span3({{1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("subspace intersection examples") {
  const Subspace a = span3({{1, 0, 0}, {0, 1, 0}});
  CHECK(subspace_intersection(a, span3({{0, 1, 0}, {0, 0, 1}})) == span3({{0, 1, 0}}));
  CHECK(subspace_intersection(a, a) == a);
  CHECK(subspace_intersection(span3({{1, 0, 0}}), span3({{0, 1, 0}})).is_zero());
}

TEST_CASE("containment examples") {
  CHECK(contains(span3({{1, 0, 0}}), Subspace::zero(3)));
  CHECK(contains(span3({{1, 0, 0}, {0, 1, 0}}), span3({{1, 0, 0}})));
  CHECK_FALSE(contains(span3({{1, 0, 0}}), span3({{1, 1, 0}})));
}

TEST_CASE("membership kernel examples") {
  CHECK(solve_membership_kernel(Matrix(0, 3)).is_full());
  CHECK(solve_membership_kernel(Matrix::identity(3)).is_zero());
  CHECK(solve_membership_kernel(Matrix{{1, 1, 0}}) == span3({{1, -1, 0}, {0, 0, 1}}));
}

TEST_CASE("orthogonal complement examples") {
  CHECK(orthogonal_complement(Subspace::zero(3), Matrix::identity(3)).is_full());
  CHECK(orthogonal_complement(span3({{1, 0, 0}}), Matrix::identity(3)) == span3({{0, 1, 0}, {0, 0, 1}}));
  const Subspace line = Subspace::span(2, {vec({1, 1})});
  CHECK(orthogonal_complement(line, Matrix{{1, 0}, {0, 2}}) == Subspace::span(2, {vec({2, -1})}));
}

TEST_CASE("orthogonal complement requires a positive definite gram") {
  CHECK_THROWS_AS(orthogonal_complement(span3({{1, 0, 0}}), Matrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(orthogonal_complement(span3({{1, 0, 0}}), Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                  NotPositiveDefinite);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(subspace_sum(Subspace::zero(2), Subspace::zero(3)), DimensionMismatch);
  CHECK_THROWS_AS(Matrix::identity(2) * Matrix::identity(3), DimensionMismatch);
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST_CASE("inverse round-trips") {
  const Matrix m{{2, 1}, {7, 4}};
  CHECK(m * inverse(m) == Matrix::identity(2));
}

TEST_CASE("property: rref is idempotent and preserves the row space") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix m(4, 5);
    oracle::Mat rows(4, oracle::Vec(5));
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 5; ++c) rows[r][c] = m(r, c) = entry(rng);
    const Matrix once = rref(m);
    CHECK(rref(once) == once);
    CHECK(once.rows() == oracle::rank_of(rows));
    const oracle::Span original{5, rows};
    CHECK(original.same(oracle::from(Subspace::from_matrix(m))));
  }
}

TEST_CASE("property: Grassmann identity and lattice laws") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Subspace a = random_subspace(rng, 5);
    const Subspace b = random_subspace(rng, 5);
    const Subspace s = subspace_sum(a, b);
    const Subspace i = subspace_intersection(a, b);
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());
    CHECK(contains(s, a));
    CHECK(contains(a, i));
    CHECK(contains(b, i));
    CHECK(oracle::intersect(oracle::from(a), oracle::from(b)).same(oracle::from(i)));
    CHECK(subspace_intersection(a, s) == a);
    CHECK(subspace_sum(a, i) == a);
  }
}

TEST_CASE("property: orthogonal complement is a gram-orthogonal direct complement") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4;
    const Subspace a = random_subspace(rng, n);
    const Matrix gram = oracle::random_spd(rng, n);
    const Subspace perp = orthogonal_complement(a, gram);
    CHECK(perp.dim() + a.dim() == n);
    CHECK(subspace_intersection(a, perp).is_zero());
    for (const auto& x : a.basis_vectors())
      for (const auto& y : perp.basis_vectors()) {
        Rational ip = 0;
        const Vector gy = gram.apply(y);
        for (std::size_t k = 0; k < n; ++k) ip += x[k] * gy[k];
        CHECK(ip == 0);
      }
  }
}
