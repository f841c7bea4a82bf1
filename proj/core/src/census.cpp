#include "rjcf/census.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rjcf/errors.hpp"
#include "rjcf/linalg.hpp"

namespace rjcf {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

BundleSignature BundleSignature::make(std::size_t n, std::size_t t) {
  if (n == 0) throw InputError("BundleSignature: n must be positive");
  if (t > n / 2) {
    throw InputError("BundleSignature: t = " + std::to_string(t) + " exceeds floor(n/2) = " +
                     std::to_string(n / 2));
  }
  return {n, t};
}

std::string_view to_string(CensusMethod m) noexcept {
  return m == CensusMethod::SchurBlocks ? "schur" : "ratio";
}

CensusMethod parse_census_method(std::string_view s) {
  if (s == "schur") return CensusMethod::SchurBlocks;
  if (s == "ratio") return CensusMethod::RatioTolerance;
  throw InputError("unknown census method '" + std::string(s) + "' (expected schur|ratio)");
}

std::size_t count_real_schur(const Matrix& a, const SchurOptions& opts) {
  return real_schur(a, opts).real_block_count();
}

std::size_t count_real_ratio(std::span<const ComplexScalar> eigenvalues, double condition) {
  const double tol = kEps * condition;
  std::size_t count = 0;
  for (const auto& e : eigenvalues) {
    const double modulus = std::abs(e);
    if (modulus == 0.0) throw NumericalError("count_real_ratio: zero eigenvalue, ratio undefined");
    const ComplexScalar unit = e / modulus;
    if (std::abs(unit - 1.0) <= tol || std::abs(unit + 1.0) <= tol) ++count;
  }
  return count;
}

std::size_t count_real_ratio(const Matrix& a, const SchurOptions& opts) {
  const auto form = real_schur(a, opts);
  return count_real_ratio(form.eigenvalues, condition_number(a));
}

double distinctness_threshold(std::size_t n, double frobenius) {
  return 1e3 * static_cast<double>(n) * kEps * frobenius;
}

double min_eigengap(std::span<const ComplexScalar> eigenvalues) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      gap = std::min(gap, std::abs(eigenvalues[i] - eigenvalues[j]));
  return gap;
}

ClassificationResult classify(const Matrix& a, CensusMethod method, const SchurOptions& opts) {
  const auto form = real_schur(a, opts);
  const std::size_t n = a.rows();

  ClassificationResult r;
  r.method = method;
  r.eigenvalues = form.eigenvalues;
  canonical_sort(r.eigenvalues);
  r.min_eigengap = min_eigengap(r.eigenvalues);
  r.threshold = distinctness_threshold(n, frobenius_norm(a));
  r.real_count = method == CensusMethod::SchurBlocks
                     ? form.real_block_count()
                     : count_real_ratio(form.eigenvalues, condition_number(a));
  r.boundary = r.min_eigengap < r.threshold;
  if (!r.boundary) {
    if ((n - r.real_count) % 2 != 0) {
      throw NumericalError("classify: real eigenvalue count " + std::to_string(r.real_count) +
                           " has the wrong parity for n = " + std::to_string(n));
    }
    r.signature = BundleSignature::make(n, (n - r.real_count) / 2);
  }
  return r;
}

}  // namespace rjcf
