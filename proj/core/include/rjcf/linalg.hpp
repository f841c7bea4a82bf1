#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rjcf/matrix.hpp"

namespace rjcf {

/// Rank threshold. An empty optional selects the automatic rule
/// max(rows, cols) * eps * sigma_max.
using RankTolerance = std::optional<double>;
inline constexpr RankTolerance kAutoTolerance = std::nullopt;

struct SvdOptions {
  /// Pairwise column orthogonality target |<u_p,u_q>| <= tol * |u_p| |u_q|.
  /// Zero selects rows * eps.
  double orthogonality_tol = 0.0;
  std::size_t max_sweeps = 80;
};

/// Singular values in descending order, by one-sided Jacobi rotations.
///
/// Wide inputs are transposed first. Throws ConvergenceError carrying the
/// current column norms if the sweep cap is reached.
std::vector<double> singular_values(const Matrix& a, const SvdOptions& opts = {});

struct RankDecision {
  std::size_t rank = 0;
  double tolerance = 0.0;
  std::vector<double> singular_values;

  /// sigma_rank-1 / sigma_rank; +inf when either side is empty or the rejected value is zero.
  double gap() const;
};

RankDecision rank_decision(const Matrix& a, RankTolerance tol = kAutoTolerance);

std::size_t numerical_rank(const Matrix& a, RankTolerance tol = kAutoTolerance);

/// 2-norm condition number sigma_max / sigma_min. Throws NumericalError for
/// a (numerically) singular matrix.
double condition_number(const Matrix& a);

/// Explicit inverse by Gauss-Jordan elimination with complete pivoting.
/// Throws NumericalError when a pivot vanishes.
Matrix inverse(const Matrix& a);

/// Orthogonal factor of a Householder QR of a square matrix, with the signs
/// fixed so that R has a nonnegative diagonal.
Matrix orthogonal_factor(const Matrix& a);

}  // namespace rjcf
