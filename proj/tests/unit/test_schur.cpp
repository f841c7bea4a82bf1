#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "rjcf/errors.hpp"
#include "rjcf/schur.hpp"
#include "support/oracles.hpp"

using namespace rjcf;
using rjcf::testing::random_matrix;
using C = std::complex<double>;

namespace {

void expect_valid_form(const Matrix& a, const RealSchurForm& f) {
  const std::size_t n = a.rows();
  const double nn = static_cast<double>(n);
  EXPECT_LE(orthogonality_residual(f.q), 1e-12 * nn);
  EXPECT_LE(reconstruction_residual(a, f.q, f.t), 1e-12 * nn * std::max(1.0, frobenius_norm(a)));

  std::size_t total = 0;
  std::vector<bool> interior(n, false);  // interior[i]: (i, i-1) lies inside a 2x2 block
  for (std::size_t s : f.block_sizes) {
    ASSERT_TRUE(s == 1 || s == 2);
    if (s == 2) interior[total + 1] = true;
    total += s;
  }
  ASSERT_EQ(total, n);
  ASSERT_EQ(f.eigenvalues.size(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) ASSERT_EQ(f.t(i, j), 0.0) << i << "," << j;
  for (std::size_t i = 1; i < n; ++i)
    if (!interior[i]) ASSERT_EQ(f.t(i, i - 1), 0.0) << i;

  std::size_t pos = 0;
  for (std::size_t s : f.block_sizes) {
    if (s == 1) {
      EXPECT_EQ(f.eigenvalues[pos], C(f.t(pos, pos), 0.0));
    } else {
      const double p = f.t(pos, pos), q = f.t(pos, pos + 1), r = f.t(pos + 1, pos),
                   w = f.t(pos + 1, pos + 1);
      // standardized: equal diagonal, off-diagonals of opposite sign
      EXPECT_EQ(p, w);
      EXPECT_LT(q * r, 0.0);
      const double disc = (p - w) * (p - w) + 4.0 * q * r;
      EXPECT_LT(disc, 0.0);
      EXPECT_GT(f.eigenvalues[pos].imag(), 0.0);
      EXPECT_EQ(f.eigenvalues[pos + 1], std::conj(f.eigenvalues[pos]));
    }
    pos += s;
  }
}

double max_match_error(std::vector<C> got, std::vector<C> want) {
  // greedy nearest matching; both lists are small
  double worst = 0.0;
  for (const C& w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](const C& x, const C& y) {
      return std::abs(x - w) < std::abs(y - w);
    });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

}  // namespace

TEST(Hessenberg, AlreadyHessenbergIsUntouched) {
  Matrix a = random_matrix(5, 5, 1);
  for (std::size_t i = 2; i < 5; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
  const auto h = hessenberg(a);
  EXPECT_EQ(h.q, Matrix::identity(5));
  EXPECT_EQ(h.h, a);
}

TEST(Hessenberg, SymmetricGivesTridiagonal) {
  const Matrix g = random_matrix(4, 4, 2);
  const Matrix a = g + g.transpose();
  const auto h = hessenberg(a);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 2; j < 4; ++j) EXPECT_LE(std::abs(h.h(i, j)), 1e-13);
}

TEST(Hessenberg, Reconstruction) {
  const Matrix a = random_matrix(6, 6, 3);
  const auto h = hessenberg(a);
  EXPECT_LE(frobenius_norm(matmul(matmul(h.q.transpose(), a), h.q) - h.h), 1e-12 * frobenius_norm(a));
  for (std::size_t i = 2; i < 6; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) EXPECT_EQ(h.h(i, j), 0.0);
}

TEST(RealSchur, DiagonalInput) {
  const double d[] = {3.0, 1.0, 2.0};
  const auto f = real_schur(Matrix::diagonal(d));
  EXPECT_EQ(f.block_sizes, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(f.eigenvalues, (std::vector<C>{3.0, 1.0, 2.0}));
  EXPECT_EQ(f.real_block_count(), 3u);
}

TEST(RealSchur, Rotation) {
  const Matrix r{{0.0, 1.0}, {-1.0, 0.0}};
  const auto f = real_schur(r);
  EXPECT_EQ(f.block_sizes, (std::vector<std::size_t>{2}));
  EXPECT_EQ(f.pair_block_count(), 1u);
  EXPECT_NEAR(std::abs(f.eigenvalues[0] - C(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.eigenvalues[1] - C(0.0, -1.0)), 0.0, 1e-15);
  expect_valid_form(r, f);
}

TEST(RealSchur, CompanionOfKnownRoots) {
  // (x^2 + 1)(x - 2)(x + 3)
  const Matrix a = rjcf::testing::companion(rjcf::testing::poly_from_roots({C(0, 1), C(0, -1), 2.0, -3.0}));
  const auto f = real_schur(a);
  expect_valid_form(a, f);
  EXPECT_EQ(f.pair_block_count(), 1u);
  EXPECT_EQ(f.real_block_count(), 2u);
  EXPECT_LE(max_match_error(f.eigenvalues, {C(0, 1), C(0, -1), 2.0, -3.0}), 1e-10);
}

TEST(RealSchur, OneByOneAndEmpty) {
  const auto f = real_schur(Matrix{{-4.5}});
  EXPECT_EQ(f.eigenvalues, std::vector<C>{-4.5});
  EXPECT_EQ(f.q, Matrix::identity(1));
  EXPECT_THROW(real_schur(Matrix()), InputError);
  EXPECT_THROW(real_schur(Matrix(2, 3)), InputError);
  Matrix bad = Matrix::identity(2);
  bad(0, 0) = INFINITY;
  EXPECT_THROW(real_schur(bad), InputError);
}

TEST(RealSchur, InvariantsOnGaussianMatrices) {
  for (std::size_t n = 1; n <= 40; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Matrix a = random_matrix(n, n, 1000 + seed, n);
      SCOPED_TRACE("n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      const auto f = real_schur(a);
      expect_valid_form(a, f);
      C sum = 0.0;
      for (const C& z : f.eigenvalues) sum += z;
      EXPECT_NEAR(sum.real(), trace(a), 1e-12 * n * frobenius_norm(a));
      EXPECT_NEAR(sum.imag(), 0.0, 1e-12 * n * frobenius_norm(a));
    }
  }
}

TEST(RealSchur, AggressiveDeflationDoesNotChangeTheSpectrum) {
  SchurOptions plain;
  plain.aggressive_deflation = false;
  for (std::size_t n : {12u, 30u, 90u}) {
    const Matrix a = random_matrix(n, n, 5, n);
    const auto reference = eigenvalues(a, plain);
    for (std::size_t window : {0u, 2u, 3u, 6u}) {
      SchurOptions aed;
      aed.aed_min_size = 4;
      aed.aed_window = window;
      SCOPED_TRACE("n=" + std::to_string(n) + " window=" + std::to_string(window));
      const auto f = real_schur(a, aed);
      expect_valid_form(a, f);
      auto e = f.eigenvalues;
      canonical_sort(e);
      EXPECT_LE(max_match_error(e, reference), 1e-9 * n);
    }
    expect_valid_form(a, real_schur(a));
  }
}

TEST(RealSchur, StructuredHardCases) {
  // cyclic permutation: standard shifts stall without the exceptional ones
  Matrix p(6, 6);
  for (std::size_t i = 0; i < 6; ++i) p((i + 1) % 6, i) = 1.0;
  const auto f = real_schur(p);
  expect_valid_form(p, f);
  std::vector<C> roots;
  for (int k = 0; k < 6; ++k) roots.push_back(std::polar(1.0, 2.0 * M_PI * k / 6.0));
  EXPECT_LE(max_match_error(f.eigenvalues, roots), 1e-12);

  // zero, nilpotent, and graded matrices
  expect_valid_form(Matrix(5, 5), real_schur(Matrix(5, 5)));
  Matrix j(5, 5);
  for (std::size_t i = 0; i + 1 < 5; ++i) j(i, i + 1) = 1.0;
  expect_valid_form(j, real_schur(j));
  Matrix g = random_matrix(8, 8, 17);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t k = 0; k < 8; ++k) g(i, k) *= std::pow(10.0, -static_cast<double>(i + k));
  expect_valid_form(g, real_schur(g));
}

TEST(RealSchur, ReportsNonConvergence) {
  Matrix p(3, 3);
  for (std::size_t i = 0; i < 3; ++i) p((i + 1) % 3, i) = 1.0;
  SchurOptions tight;
  tight.max_sweeps = 1;
  try {
    real_schur(p, tight);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_LT(e.window_begin(), e.window_end());
    EXPECT_LE(e.window_end(), 3u);
    EXPECT_GT(e.iterations(), 0u);
  }
  tight.max_sweeps = 0;
  EXPECT_THROW(real_schur(p, tight), InputError);
}

TEST(Eigenvalues, IdentityAndNilpotent) {
  EXPECT_EQ(eigenvalues(Matrix::identity(4)), std::vector<C>(4, 1.0));
  EXPECT_EQ(eigenvalues(Matrix{{0.0, 1.0}, {0.0, 0.0}}), std::vector<C>(2, 0.0));
}

TEST(Eigenvalues, CanonicalOrder) {
  std::vector<C> v{C(1, -1), C(-2, 0), C(1, 1), C(0.5, 0)};
  canonical_sort(v);
  EXPECT_EQ(v, (std::vector<C>{C(-2, 0), C(0.5, 0), C(1, -1), C(1, 1)}));
}

TEST(Eigenvalues, MatchIndependentInverseIterationOracle) {
  const Matrix a = random_matrix(8, 8, 2024);
  const auto got = eigenvalues(a);
  const auto oracle = rjcf::testing::inverse_iteration_eigenvalues(a);
  ASSERT_EQ(oracle.size(), 8u);
  EXPECT_LE(max_match_error(got, oracle), 1e-8);
}

TEST(Eigenvalues, SatisfyCharacteristicChecks) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix a = random_matrix(7, 7, 300 + seed);
    const auto e = eigenvalues(a);
    C prod = 1.0, sq = 0.0;
    for (const C& z : e) {
      prod *= z;
      sq += z * z;
      EXPECT_LE(rjcf::testing::sigma_min_shifted(a, z), 1e-12 * frobenius_norm(a));
    }
    EXPECT_NEAR(prod.real(), rjcf::testing::determinant(a), 1e-10 * std::max(1.0, std::abs(prod)));
    EXPECT_NEAR(sq.real(), trace(matmul(a, a)), 1e-11 * frobenius_norm(a) * frobenius_norm(a));
  }
}

TEST(Eigenvalues, CompanionRootsToTolerance) {
  CounterStream s(77, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t degree = 2 + trial % 11;
    std::vector<C> roots;
    while (roots.size() < degree) {
      // separated roots of modulus up to 10
      if (roots.size() + 2 <= degree && s.next_uniform() < 0.5) {
        const C z = std::polar(1.0 + 9.0 * s.next_uniform(), 0.2 + 2.7 * s.next_uniform());
        roots.push_back(z);
        roots.push_back(std::conj(z));
      } else {
        roots.push_back(-10.0 + 20.0 * s.next_uniform());
      }
    }
    const Matrix a = rjcf::testing::companion(rjcf::testing::poly_from_roots(roots));
    EXPECT_LE(max_match_error(eigenvalues(a), roots), 1e-8) << "trial " << trial;
  }
}
