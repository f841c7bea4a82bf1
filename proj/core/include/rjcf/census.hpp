#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rjcf/matrix.hpp"
#include "rjcf/schur.hpp"

namespace rjcf {

/// Generic bundle label: t conjugate pairs and n - 2t simple real eigenvalues.
struct BundleSignature {
  std::size_t n = 0;
  std::size_t t = 0;

  /// Throws InputError unless n >= 1 and t <= n / 2.
  static BundleSignature make(std::size_t n, std::size_t t);

  std::size_t real_count() const noexcept { return n - 2 * t; }
  friend bool operator==(const BundleSignature&, const BundleSignature&) = default;
};

enum class CensusMethod {
  SchurBlocks,     ///< count 1x1 diagonal blocks of the real Schur form
  RatioTolerance,  ///< |e/|e| -+ 1| <= eps * cond(a), as in the classic MATLAB script
};

std::string_view to_string(CensusMethod m) noexcept;
/// Accepts "schur" and "ratio".
CensusMethod parse_census_method(std::string_view s);

struct ClassificationResult {
  std::optional<BundleSignature> signature;  ///< empty on the boundary
  std::size_t real_count = 0;
  double min_eigengap = 0.0;  ///< +inf for 1x1 input
  double threshold = 0.0;     ///< distinctness threshold the gap was compared with
  CensusMethod method = CensusMethod::SchurBlocks;
  bool boundary = false;
  std::vector<ComplexScalar> eigenvalues;  ///< canonical order
};

/// Number of 1x1 blocks in the real Schur form.
std::size_t count_real_schur(const Matrix& a, const SchurOptions& opts = {});

/// Ratio rule applied to eigenvalues already at hand. Throws NumericalError
/// on a zero eigenvalue.
std::size_t count_real_ratio(std::span<const ComplexScalar> eigenvalues, double condition);

/// Ratio rule with the 2-norm condition number of a. Throws NumericalError
/// for a zero eigenvalue or a singular matrix.
std::size_t count_real_ratio(const Matrix& a, const SchurOptions& opts = {});

/// 1e3 * n * eps * ||a||_F
double distinctness_threshold(std::size_t n, double frobenius);

/// Smallest |l_i - l_j| over all pairs; +inf when fewer than two values.
double min_eigengap(std::span<const ComplexScalar> eigenvalues);

ClassificationResult classify(const Matrix& a, CensusMethod method = CensusMethod::SchurBlocks,
                              const SchurOptions& opts = {});

}  // namespace rjcf
