#pragma once

#include <cstddef>
#include <vector>

#include "rjcf/matrix.hpp"

namespace rjcf {

struct HessenbergForm {
  Matrix q;  ///< orthogonal, product of Householder reflectors
  Matrix h;  ///< upper Hessenberg, h = q^T a q
};

/// Householder reduction to upper Hessenberg form. Columns that are already
/// reduced are skipped, so a Hessenberg input comes back unchanged with q = I.
HessenbergForm hessenberg(const Matrix& a);

struct SchurOptions {
  /// Iteration cap is max_sweeps * n iterations without a deflation.
  std::size_t max_sweeps = 30;
  /// Early deflation from a trailing window before each Francis sweep.
  bool aggressive_deflation = true;
  /// Active submatrices smaller than this skip the deflation window
  /// (same crossover as LAPACK's small-matrix QR).
  std::size_t aed_min_size = 75;
  /// Deflation window size; 0 picks one from the active size.
  std::size_t aed_window = 0;
};

/// Real Schur factorization a = q t q^T.
///
/// t is quasi-upper-triangular. Every 2x2 diagonal block holds a genuine
/// complex conjugate pair in standardized form (equal diagonal, off-diagonal
/// entries of opposite sign); real pairs are always split into 1x1 blocks.
struct RealSchurForm {
  Matrix q;
  Matrix t;
  std::vector<std::size_t> block_sizes;
  /// One per diagonal position; for a 2x2 block the +imaginary member comes first.
  std::vector<ComplexScalar> eigenvalues;

  std::size_t real_block_count() const noexcept;
  std::size_t pair_block_count() const noexcept;
};

RealSchurForm real_schur(const Matrix& a, const SchurOptions& opts = {});

/// Eigenvalues of a in canonical order (see canonical_sort).
std::vector<ComplexScalar> eigenvalues(const Matrix& a, const SchurOptions& opts = {});

/// Sorts by (real part, imaginary part), both ascending.
void canonical_sort(std::vector<ComplexScalar>& values);

/// ||q^T q - I||_F
double orthogonality_residual(const Matrix& q);
/// ||q^T a q - t||_F
double reconstruction_residual(const Matrix& a, const Matrix& q, const Matrix& t);

}  // namespace rjcf
