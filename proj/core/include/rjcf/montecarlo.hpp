#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "rjcf/census.hpp"
#include "rjcf/matrix.hpp"
#include "rjcf/rng.hpp"

namespace rjcf {

enum class Shift {
  None,      ///< plain randn(n)
  DiagEven,  ///< randn(n) + diag(2, 4, ..., 2n)
};

std::string_view to_string(Shift s) noexcept;
/// Accepts "none" and "diag-even".
Shift parse_shift(std::string_view s);

struct EnsembleSpec {
  std::size_t n = 1;
  std::uint64_t trials = 1;
  Shift shift = Shift::None;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  CensusMethod method = CensusMethod::SchurBlocks;

  void validate() const;
};

using Histogram = std::map<std::size_t, std::uint64_t>;
using Distribution = std::map<std::size_t, double>;

struct CensusReport {
  EnsembleSpec spec;
  Histogram counts;      ///< k -> F
  Distribution ratios;   ///< k -> F / trials
  double mean_real = 0.0;  ///< over successful trials
  std::optional<Distribution> reference;  ///< k -> p_{n,k} when a table exists
  std::optional<Distribution> z_scores;   ///< binomial z per reference k
  /// Always zero: the census reads the real count off the Schur blocks and
  /// never consults the eigen-gap test.
  std::uint64_t boundary_count = 0;
  std::uint64_t failures = 0;  ///< trials whose eigenvalue computation failed
};

/// n x n matrix of standard normal draws, row-major order.
Matrix gaussian_matrix(std::size_t n, CounterStream& stream);

/// The matrix of one census trial (shift included). Trial i draws from
/// stream i of spec.seed, independent of worker scheduling.
Matrix trial_matrix(const EnsembleSpec& spec, std::uint64_t trial);

/// Reference probabilities for (n, shift), if a table is embedded.
std::optional<Distribution> reference_distribution(std::size_t n, Shift shift);

/// (F/T - p) sqrt(T) / sqrt(p (1 - p))
double binomial_z(std::uint64_t observed, std::uint64_t trials, double p);

CensusReport run_census(const EnsembleSpec& spec);

/// Monte Carlo mean number of real eigenvalues.
double expected_real(const EnsembleSpec& spec);

}  // namespace rjcf
