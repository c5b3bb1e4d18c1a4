#include <gtest/gtest.h>

#include <random>

#include "mcluster/linalg.hpp"

using namespace mcluster;

namespace {

Matrix make(std::vector<std::vector<int>> rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = Rational(rows[r][c]);
  }
  return m;
}

}  // namespace

TEST(Linalg, RankOfSmallMatrices) {
  EXPECT_EQ(rank(make({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(make({{1, 0}, {0, 1}})), 2u);
  EXPECT_EQ(rank(make({{0, 0}, {0, 0}})), 0u);
  EXPECT_EQ(rank(make({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 2u);
}

TEST(Linalg, ExactRationalElimination) {
  // Over the rationals the determinant is 1/3, so the matrix is invertible.
  Matrix m(2, 2);
  m(0, 0) = Rational(1, 3);
  m(0, 1) = Rational(1, 2);
  m(1, 0) = Rational(2, 3);
  m(1, 1) = Rational(3, 2);
  EXPECT_EQ(rank(m), 2u);
  const RowEchelon e = row_echelon(m);
  EXPECT_TRUE(e.reduced == Matrix::identity(2));
}

TEST(Linalg, NullityComplementsRank) {
  const Matrix m = make({{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 2, 1, 0}});
  EXPECT_EQ(rank(m) + nullity(m), m.cols());
  EXPECT_EQ(nullity(m), 2u);
}

TEST(Linalg, SpanRankIgnoresDuplicates) {
  const std::vector<Vector> vs = {{Rational(1), Rational(0)}, {Rational(2), Rational(0)}, {Rational(0), Rational(0)}};
  EXPECT_EQ(span_rank(vs, 2), 1u);
  EXPECT_EQ(span_rank({}, 3), 0u);
}

TEST(Linalg, ProductsAndIdentity) {
  const Matrix a = make({{1, 2}, {3, 4}});
  EXPECT_TRUE(a * Matrix::identity(2) == a);
  const Matrix sq = a * a;
  EXPECT_EQ(sq(0, 0), Rational(7));
  EXPECT_EQ(sq(1, 1), Rational(22));
  const Vector v = a * Vector{Rational(1), Rational(-1)};
  EXPECT_EQ(v[0], Rational(-1));
  EXPECT_EQ(v[1], Rational(-1));
}

TEST(Linalg, RandomRankIsTransposeInvariant) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m(4, 5), t(5, 4);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 5; ++c) {
        m(r, c) = Rational(entry(rng));
        t(c, r) = m(r, c);
      }
    }
    EXPECT_EQ(rank(m), rank(t));
  }
}
