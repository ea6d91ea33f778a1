#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cifc/error.hpp"
#include "cifc/gf2/bit_matrix.hpp"
#include "gf2_oracle.hpp"

using namespace cifc::gf2;
using cifc::test::brute_rank;

TEST_CASE("shift_matrix: identity, nilpotency and the bit-level convention") {
  CHECK(shift_matrix(3, 0) == BitMatrix::identity(3));
  CHECK(shift_matrix(3, 3).is_zero());
  CHECK(shift_matrix(3, 7).is_zero());
  CHECK(shift_matrix(0, 0).rows() == 0);

  // (1,0) -> (0,1): the top level moves down one position.
  BitVector x(2);
  x.set(0);
  const BitVector y = shift_matrix(2, 1).apply(x);
  CHECK_FALSE(y.get(0));
  CHECK(y.get(1));
}

TEST_CASE("matmul: identity and exponent additivity") {
  std::mt19937_64 rng(7);
  const BitMatrix m = BitMatrix::random(5, 4, rng);
  CHECK(matmul(BitMatrix::identity(5), m) == m);
  CHECK(matmul(m, BitMatrix::identity(4)) == m);
  CHECK(matmul(shift_matrix(3, 1), shift_matrix(3, 2)).is_zero());
  CHECK_THROWS_AS(matmul(m, m), cifc::DimensionMismatch);

  for (std::size_t dim = 0; dim <= 8; ++dim) {
    for (std::size_t j = 0; j <= dim + 1; ++j) {
      for (std::size_t k = 0; k <= dim + 1; ++k) {
        CHECK(shift_matrix(dim, j) * shift_matrix(dim, k) == shift_matrix(dim, j + k));
      }
    }
  }
}

TEST_CASE("rank: examples against the enumeration oracle") {
  CHECK(rank(BitMatrix::zero(4, 6)) == 0);
  CHECK(rank(shift_matrix(4, 1)) == 3);
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t k = 1; k < m; ++k) {
      const BitMatrix u = BitMatrix::identity(m) + shift_matrix(m, k);
      CHECK(rank(u) == m);
      CHECK(brute_rank(u) == m);
    }
  }
}

TEST_CASE("rank: random matrices agree with the oracle, the transpose and permutations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = rng() % 9;
    const std::size_t c = rng() % 11;
    BitMatrix m = BitMatrix::random(r, c, rng);
    // Sparse-ish matrices hit more rank-deficient cases.
    if (trial % 3 == 0) m = BitMatrix(r, c);
    if (trial % 3 == 0) {
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          if (rng() % 5 == 0) m.set(i, j);
        }
      }
    }
    const std::size_t rk = rank(m);
    CHECK(rk <= std::min(r, c));
    CHECK(rk == brute_rank(m));
    CHECK(rk == rank(m.transpose()));

    std::vector<std::size_t> perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    BitMatrix p = m.select_columns(perm).transpose();
    std::vector<std::size_t> rperm(r);
    std::iota(rperm.begin(), rperm.end(), 0);
    std::shuffle(rperm.begin(), rperm.end(), rng);
    CHECK(rank(p.select_columns(rperm)) == rk);
  }
}

TEST_CASE("invert: examples and round trips") {
  CHECK(invert(BitMatrix::identity(4)) == BitMatrix::identity(4));

  const BitMatrix u = BitMatrix::identity(3) + shift_matrix(3, 1);
  const BitMatrix geometric = BitMatrix::identity(3) + shift_matrix(3, 1) + shift_matrix(3, 2);
  CHECK(invert(u) == geometric);
  CHECK((u * geometric).is_identity());

  CHECK_THROWS_AS(invert(shift_matrix(3, 1)), cifc::SingularMatrix);
  CHECK_THROWS_AS(invert(BitMatrix::zero(2, 3)), cifc::DimensionMismatch);

  std::mt19937_64 rng(3);
  int inverted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const BitMatrix m = BitMatrix::random(n, n, rng);
    if (rank(m) < n) {
      CHECK_THROWS_AS(invert(m), cifc::SingularMatrix);
      continue;
    }
    const BitMatrix inv = invert(m);
    CHECK((inv * m).is_identity());
    CHECK((m * inv).is_identity());
    ++inverted;
  }
  CHECK(inverted > 50);
}

TEST_CASE("aggregate-interference matrix S^(m-a) + S^(m-b) is full rank for a != b") {
  for (std::size_t a = 0; a <= 10; ++a) {
    for (std::size_t b = 0; b <= 10; ++b) {
      if (a == b) continue;
      const std::size_t m = std::max(a, b);
      const BitMatrix sum = shift_matrix(m, m - a) + shift_matrix(m, m - b);
      CHECK(brute_rank(sum) == m);
      CHECK(rank(sum) == m);
    }
  }
}

TEST_CASE("basis_complete: examples") {
  CHECK(basis_complete(BitMatrix::identity(3), BitMatrix::identity(3)).empty());
  CHECK(basis_complete(BitMatrix::zero(3, 1), BitMatrix::identity(3)) ==
        std::vector<std::size_t>{0, 1, 2});
  const auto picked = basis_complete(shift_matrix(3, 1), BitMatrix::identity(3));
  REQUIRE(picked.size() == 1);
  // S^1 spans the bottom two levels; only e_0 extends it.
  CHECK(picked[0] == 0);
  CHECK_THROWS_AS(basis_complete(BitMatrix::zero(2, 1), BitMatrix::zero(3, 1)),
                  cifc::DimensionMismatch);
}

TEST_CASE("basis_complete: count equals the rank jump on random instances") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 8;
    const BitMatrix span = BitMatrix::random(rows, rng() % 5, rng);
    const BitMatrix cand = BitMatrix::random(rows, rng() % 7, rng);
    const auto picked = basis_complete(span, cand);
    const std::size_t jump = brute_rank(hstack(span, cand)) - brute_rank(span);
    CHECK(picked.size() == jump);
    CHECK(rank(hstack(span, cand.select_columns(picked))) == rank(span) + picked.size());
  }
}

TEST_CASE("null_space and solve_left") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rng() % 7;
    const std::size_t c = 1 + rng() % 9;
    const BitMatrix m = BitMatrix::random(r, c, rng);
    const BitMatrix n = null_space(m);
    CHECK(n.cols() == c - rank(m));
    CHECK((m * n).is_zero());
    CHECK(rank(n) == n.cols());

    // x a = b has a solution iff rows of b lie in the row space of a.
    const BitMatrix a = BitMatrix::random(1 + rng() % 6, c, rng);
    const BitMatrix coeffs = BitMatrix::random(3, a.rows(), rng);
    const BitMatrix b = coeffs * a;
    BitMatrix x;
    REQUIRE(solve_left(a, b, x));
    CHECK(x * a == b);
  }
  BitMatrix x;
  CHECK_FALSE(solve_left(BitMatrix::zero(2, 2), BitMatrix::identity(2), x));
}

TEST_CASE("BitVector basics") {
  BitVector v = BitVector::from_word(0b1011, 4);
  CHECK(v.get(0));
  CHECK(v.get(1));
  CHECK_FALSE(v.get(2));
  CHECK(v.count() == 3);
  CHECK(v.to_string() == "1101");
  v.flip(0);
  CHECK(v.to_word() == 0b1010);
  CHECK_THROWS_AS(v ^= BitVector(3), cifc::DimensionMismatch);
  BitVector big(130);
  big.set(129);
  CHECK(big.any());
  CHECK_THROWS_AS((void)big.to_word(), cifc::DimensionMismatch);
}
