#pragma once
// Small reference computations used to check the library independently.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "rjcf/linalg.hpp"
#include "rjcf/matrix.hpp"
#include "rjcf/rng.hpp"

namespace rjcf::testing {

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, std::uint64_t stream = 0) {
  CounterStream s(seed, stream);
  Matrix m(r, c);
  for (double& x : m.entries()) x = s.next_normal();
  return m;
}

// Monic polynomial coefficients (highest degree first, leading 1 omitted) from roots.
inline std::vector<double> poly_from_roots(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(c[i].real());
  return out;
}

// Frobenius companion matrix: first row holds -c, ones on the subdiagonal.
inline Matrix companion(const std::vector<double>& coeffs) {
  const std::size_t n = coeffs.size();
  Matrix a(n, n);
  for (std::size_t j = 0; j < n; ++j) a(0, j) = -coeffs[j];
  for (std::size_t i = 1; i < n; ++i) a(i, i - 1) = 1.0;
  return a;
}

// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

// Smallest singular value of A - z I through the real 2n x 2n embedding
// [[A - xI, yI], [-yI, A - xI]], whose singular values are those of A - zI twice.
inline double sigma_min_shifted(const Matrix& a, std::complex<double> z) {
  const std::size_t n = a.rows();
  Matrix e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e(i, j) = a(i, j);
      e(n + i, n + j) = a(i, j);
    }
    e(i, i) -= z.real();
    e(n + i, n + i) -= z.real();
    e(i, n + i) = z.imag();
    e(n + i, i) = -z.imag();
  }
  return singular_values(e).back();
}

// Complex Gaussian elimination solve, used by the inverse-iteration oracle.
inline std::vector<std::complex<double>> complex_solve(std::vector<std::complex<double>> m,
                                                      std::vector<std::complex<double>> b,
                                                      std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i * n + k]) > std::abs(m[p * n + k])) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      std::swap(b[k], b[p]);
    }
    if (std::abs(m[k * n + k]) < 1e-300) m[k * n + k] = 1e-300;
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto f = m[i * n + k] / m[k * n + k];
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<std::complex<double>> x(n);
  for (std::size_t i = n; i-- > 0;) {
    auto s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i * n + j] * x[j];
    x[i] = s / m[i * n + i];
  }
  return x;
}

// Eigenvalues by shifted inverse iteration with Rayleigh quotient refinement,
// deflating found eigenvalues out of the starting guesses: each search starts
// from a grid of complex shifts and keeps the first converged value that is
// not already in the list. Quadratic in cost, fine for n <= 10.
inline std::vector<std::complex<double>> inverse_iteration_eigenvalues(const Matrix& a) {
  using C = std::complex<double>;
  const std::size_t n = a.rows();
  const double scale = std::max(1.0, frobenius_norm(a));
  std::vector<C> found;
  CounterStream rng(0xE16E, 0);
  auto already = [&](C z) {
    for (const C& f : found)
      if (std::abs(f - z) < 1e-6 * scale) return true;
    return false;
  };
  for (int attempt = 0; attempt < 4000 && found.size() < n; ++attempt) {
    C mu(scale * (2.0 * rng.next_uniform() - 1.0), scale * (2.0 * rng.next_uniform() - 1.0));
    if (attempt % 3 == 0) mu.imag(0.0);
    std::vector<C> v(n);
    for (auto& x : v) x = C(rng.next_normal(), rng.next_normal());
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      std::vector<C> m(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j) - (i == j ? mu : C(0.0));
      auto w = complex_solve(m, v, n);
      double norm = 0.0;
      for (const auto& x : w) norm += std::norm(x);
      norm = std::sqrt(norm);
      for (auto& x : w) x /= norm;
      // Rayleigh quotient w^H A w
      C rq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        C s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a(i, j) * w[j];
        rq += std::conj(w[i]) * s;
      }
      // residual ||A w - rq w||
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        C s = -rq * w[i];
        for (std::size_t j = 0; j < n; ++j) s += a(i, j) * w[j];
        res += std::norm(s);
      }
      v = std::move(w);
      if (it > 2) mu = rq;
      if (std::sqrt(res) < 1e-13 * scale) {
        converged = true;
        break;
      }
    }
    if (!converged || already(mu)) continue;
    found.push_back(mu);
    if (std::abs(mu.imag()) > 1e-9 * scale) {
      const C conj = std::conj(mu);
      if (!already(conj)) found.push_back(conj);
    } else {
      found.back().imag(0.0);
    }
  }
  return found;
}

}  // namespace rjcf::testing
