#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rjcf/errors.hpp"
#include "rjcf/matrix.hpp"
#include "support/oracles.hpp"

using namespace rjcf;
using rjcf::testing::naive_matmul;
using rjcf::testing::random_matrix;

TEST(Matrix, ConstructionChecksShape) {
  EXPECT_THROW(Matrix(2, 2, std::vector<double>{1.0, 2.0, 3.0}), InputError);
  EXPECT_THROW((Matrix{{1.0, 2.0}, {3.0}}), InputError);
  const Matrix a{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  EXPECT_EQ(a.rows(), 2u);
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_EQ(a(1, 2), 6.0);
  EXPECT_EQ(a.transpose()(2, 1), 6.0);
}

TEST(Matrix, AllFinite) {
  Matrix a = Matrix::identity(3);
  EXPECT_TRUE(a.all_finite());
  a(1, 2) = std::nan("");
  EXPECT_FALSE(a.all_finite());
  a(1, 2) = INFINITY;
  EXPECT_FALSE(a.all_finite());
}

TEST(Matmul, IdentityIsNeutral) {
  const Matrix a = random_matrix(3, 3, 1);
  EXPECT_EQ(matmul(Matrix::identity(3), a), a);
}

TEST(Matmul, RotationSquaredIsMinusIdentity) {
  const Matrix r{{0.0, 1.0}, {-1.0, 0.0}};
  EXPECT_EQ(matmul(r, r), (Matrix{{-1.0, 0.0}, {0.0, -1.0}}));
}

TEST(Matmul, MatchesTripleLoopExactly) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = random_matrix(4, 4, seed, 0);
    const Matrix b = random_matrix(4, 4, seed, 1);
    EXPECT_EQ(matmul(a, b), naive_matmul(a, b)) << "seed " << seed;
  }
  const Matrix a = random_matrix(3, 7, 99, 0);
  const Matrix b = random_matrix(7, 2, 99, 1);
  EXPECT_EQ(matmul(a, b), naive_matmul(a, b));
}

TEST(Matmul, RejectsShapeMismatch) {
  EXPECT_THROW(matmul(Matrix(2, 3), Matrix(2, 3)), InputError);
}

TEST(Kron, IdentityGivesBlockDiagonal) {
  const Matrix m{{1.0, 2.0}, {3.0, 4.0}};
  const Matrix k = kron(Matrix::identity(2), m);
  const Matrix blocks[] = {m, m};
  EXPECT_EQ(k, direct_sum(blocks));
}

TEST(Kron, ScalarScales) {
  const Matrix m = random_matrix(3, 2, 5);
  EXPECT_EQ(kron(Matrix{{2.0}}, m), 2.0 * m);
}

TEST(Kron, VecIdentity) {
  const Matrix a = random_matrix(3, 3, 11, 0);
  const Matrix x = random_matrix(3, 3, 11, 1);
  const Matrix b = random_matrix(3, 3, 11, 2);
  const Matrix lhs = matmul(kron(Matrix::identity(3), a), vec(x));
  EXPECT_LE(frobenius_norm(lhs - vec(matmul(a, x))), 1e-14);
  // vec(A X B) = (B^T kron A) vec(X)
  const Matrix lhs2 = matmul(kron(b.transpose(), a), vec(x));
  EXPECT_LE(frobenius_norm(lhs2 - vec(matmul(matmul(a, x), b))), 1e-13);
}

TEST(Vec, RoundTripsAndStacksColumns) {
  const Matrix a{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
  const Matrix v = vec(a);
  ASSERT_EQ(v.rows(), 6u);
  EXPECT_EQ(v(1, 0), 3.0);
  EXPECT_EQ(v(3, 0), 2.0);
  EXPECT_EQ(unvec(v, 3, 2), a);
}

TEST(FrobeniusNorm, Examples) {
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix::identity(3)), std::sqrt(3.0));
  EXPECT_EQ(frobenius_norm(Matrix(4, 4)), 0.0);
  EXPECT_EQ(frobenius_norm(Matrix{{3.0, 4.0}, {0.0, 0.0}}), 5.0);
}

TEST(FrobeniusNorm, NoOverflowOrUnderflow) {
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix{{3e200, 4e200}}), 5e200);
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix{{3e-200, 4e-200}}), 5e-200);
}

TEST(DirectSum, PlacesBlocksOnDiagonal) {
  const Matrix blocks[] = {Matrix{{1.0}}, Matrix{{2.0, 3.0}, {4.0, 5.0}}};
  const Matrix d = direct_sum(blocks);
  EXPECT_EQ(d, (Matrix{{1.0, 0.0, 0.0}, {0.0, 2.0, 3.0}, {0.0, 4.0, 5.0}}));
  EXPECT_EQ(trace(d), 8.0);
}

TEST(Matrix, BlockAccess) {
  Matrix a(3, 3);
  a.set_block(1, 1, Matrix{{1.0, 2.0}, {3.0, 4.0}});
  EXPECT_EQ(a.block(1, 1, 2, 2), (Matrix{{1.0, 2.0}, {3.0, 4.0}}));
  EXPECT_THROW(a.block(2, 2, 2, 2), InputError);
  EXPECT_THROW(a.set_block(2, 0, Matrix(2, 2)), InputError);
}
