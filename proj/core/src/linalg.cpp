#include "rjcf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "rjcf/errors.hpp"

namespace rjcf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

std::vector<double> singular_values(const Matrix& input, const SvdOptions& opts) {
  const Matrix a = input.rows() >= input.cols() ? input : input.transpose();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double tol = opts.orthogonality_tol > 0.0
                         ? opts.orthogonality_tol
                         : static_cast<double>(std::max<std::size_t>(m, 1)) * kEps;

  // Column-major working copy; rotations act on column pairs.
  std::vector<std::vector<double>> cols(n, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = a(i, j);

  std::vector<double> norms2(n);
  for (std::size_t j = 0; j < n; ++j) norms2[j] = dot(cols[j], cols[j]);

  auto column_norms = [&] {
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = std::sqrt(dot(cols[j], cols[j]));
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
  };

  bool converged = n < 2;
  std::size_t sweep = 0;
  for (; !converged && sweep < opts.max_sweeps; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = norms2[p];
        const double beta = norms2[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = dot(cols[p], cols[q]);
        if (std::fabs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        auto& up = cols[p];
        auto& uq = cols[q];
        for (std::size_t i = 0; i < m; ++i) {
          const double x = up[i];
          const double y = uq[i];
          up[i] = c * x - s * y;
          uq[i] = s * x + c * y;
        }
        // Recomputing (rather than updating) the squared norms keeps the
        // relative accuracy of small singular values.
        norms2[p] = dot(up, up);
        norms2[q] = dot(uq, uq);
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("singular_values: Jacobi sweeps did not converge after " +
                               std::to_string(opts.max_sweeps) + " sweeps",
                           0, n, sweep, column_norms());
  }
  return column_norms();
}

double RankDecision::gap() const {
  if (rank == 0 || rank >= singular_values.size()) return std::numeric_limits<double>::infinity();
  const double rejected = singular_values[rank];
  if (rejected == 0.0) return std::numeric_limits<double>::infinity();
  return singular_values[rank - 1] / rejected;
}

RankDecision rank_decision(const Matrix& a, RankTolerance tol) {
  for (double x : a.entries()) {
    if (!std::isfinite(x)) throw InputError("numerical_rank: non-finite entry");
  }
  RankDecision d;
  d.singular_values = singular_values(a);
  const double smax = d.singular_values.empty() ? 0.0 : d.singular_values.front();
  if (tol) {
    if (*tol < 0.0) throw InputError("numerical_rank: negative tolerance");
    d.tolerance = *tol;
  } else {
    d.tolerance = static_cast<double>(std::max(a.rows(), a.cols())) * kEps * smax;
  }
  d.rank = static_cast<std::size_t>(
      std::count_if(d.singular_values.begin(), d.singular_values.end(),
                    [&](double s) { return s > d.tolerance; }));
  return d;
}

std::size_t numerical_rank(const Matrix& a, RankTolerance tol) {
  return rank_decision(a, tol).rank;
}

double condition_number(const Matrix& a) {
  if (!a.is_square()) throw InputError("condition_number: matrix not square");
  const auto s = singular_values(a);
  if (s.empty()) throw InputError("condition_number: empty matrix");
  if (s.back() == 0.0 || s.back() <= static_cast<double>(a.rows()) * kEps * s.front()) {
    throw NumericalError("condition_number: matrix is numerically singular");
  }
  return s.front() / s.back();
}

Matrix inverse(const Matrix& input) {
  if (!input.is_square()) throw InputError("inverse: matrix not square");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix inv = Matrix::identity(n);
  std::vector<std::size_t> col_perm(n);
  std::iota(col_perm.begin(), col_perm.end(), std::size_t{0});

  // Complete pivoting: rows are swapped in both a and inv; column swaps in a
  // permute the unknowns, which is undone on the rows of the result.
  const double scale = frobenius_norm(input);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::fabs(a(i, j)) > best) {
          best = std::fabs(a(i, j));
          pr = i;
          pc = j;
        }
    if (best == 0.0 || best <= kEps * scale * 1e-3) {
      throw NumericalError("inverse: matrix is singular to working precision");
    }
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pr, j));
        std::swap(inv(k, j), inv(pr, j));
      }
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pc));
      std::swap(col_perm[k], col_perm[pc]);
    }
    const double piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  // a is now a column permutation of I: A * Pc = ... solved rows belong to permuted unknowns.
  Matrix result(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) result(col_perm[k], j) = inv(k, j);
  return result;
}

Matrix orthogonal_factor(const Matrix& input) {
  if (!input.is_square()) throw InputError("orthogonal_factor: matrix not square");
  const std::size_t n = input.rows();
  Matrix r = input;
  Matrix q = Matrix::identity(n);
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm = std::hypot(norm, r(i, k));
    if (norm == 0.0) continue;
    const double alpha = r(k, k) > 0 ? -norm : norm;
    for (std::size_t i = k; i < n; ++i) v[i] = r(i, k);
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * r(i, j);
      s *= beta;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= s * v[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) {
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
    }
  }
  return q;
}

}  // namespace rjcf
