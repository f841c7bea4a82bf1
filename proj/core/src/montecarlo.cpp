#include "rjcf/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rjcf/errors.hpp"
#include "rjcf/linalg.hpp"
#include "rjcf/schur.hpp"

namespace rjcf {

namespace {

// Probabilities of exactly k real eigenvalues for Gaussian n x n matrices
// (n = 8, 9) and the empirical ratios for randn(15) + diag(2, ..., 30).
const Distribution kReference8{
    {8, 6.10e-5}, {6, 2.05e-2}, {4, 3.46e-1}, {2, 5.71e-1}, {0, 6.21e-2}};
const Distribution kReference9{
    {9, 3.81e-6}, {7, 2.56e-3}, {5, 1.46e-1}, {3, 5.93e-1}, {1, 2.57e-1}};
const Distribution kReference15Shifted{{15, 1.12e-2}, {13, 9.17e-2}, {11, 2.70e-1},
                                       {9, 3.52e-1},  {7, 2.13e-1},  {5, 5.66e-2},
                                       {3, 5.48e-3},  {1, 1.21e-4}};

struct WorkerTally {
  std::vector<std::uint64_t> hist;
  std::uint64_t failures = 0;
};

void run_range(const EnsembleSpec& spec, std::uint64_t begin, std::uint64_t end, WorkerTally& out) {
  out.hist.assign(spec.n + 1, 0);
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    const Matrix a = trial_matrix(spec, trial);
    try {
      std::size_t k;
      if (spec.method == CensusMethod::SchurBlocks) {
        k = count_real_schur(a);
      } else {
        const auto form = real_schur(a);
        k = count_real_ratio(form.eigenvalues, condition_number(a));
      }
      ++out.hist[k];
    } catch (const NumericalError&) {
      ++out.failures;
    }
  }
}

}  // namespace

std::string_view to_string(Shift s) noexcept { return s == Shift::None ? "none" : "diag-even"; }

Shift parse_shift(std::string_view s) {
  if (s == "none") return Shift::None;
  if (s == "diag-even") return Shift::DiagEven;
  throw InputError("unknown shift '" + std::string(s) + "' (expected none|diag-even)");
}

void EnsembleSpec::validate() const {
  if (n == 0) throw InputError("EnsembleSpec: n must be positive");
  if (trials == 0) throw InputError("EnsembleSpec: trials must be positive");
  if (workers == 0) throw InputError("EnsembleSpec: workers must be positive");
}

Matrix gaussian_matrix(std::size_t n, CounterStream& stream) {
  Matrix a(n, n);
  for (double& x : a.entries()) x = stream.next_normal();
  return a;
}

Matrix trial_matrix(const EnsembleSpec& spec, std::uint64_t trial) {
  CounterStream stream(spec.seed, trial);
  Matrix a = gaussian_matrix(spec.n, stream);
  if (spec.shift == Shift::DiagEven) {
    for (std::size_t i = 0; i < spec.n; ++i) a(i, i) += 2.0 * static_cast<double>(i + 1);
  }
  return a;
}

std::optional<Distribution> reference_distribution(std::size_t n, Shift shift) {
  if (shift == Shift::None && n == 8) return kReference8;
  if (shift == Shift::None && n == 9) return kReference9;
  if (shift == Shift::DiagEven && n == 15) return kReference15Shifted;
  return std::nullopt;
}

double binomial_z(std::uint64_t observed, std::uint64_t trials, double p) {
  const double t = static_cast<double>(trials);
  const double freq = static_cast<double>(observed) / t;
  return (freq - p) * std::sqrt(t) / std::sqrt(p * (1.0 - p));
}

CensusReport run_census(const EnsembleSpec& spec) {
  spec.validate();
  const std::size_t workers =
      static_cast<std::size_t>(std::min<std::uint64_t>(spec.workers, spec.trials));
  std::vector<WorkerTally> tallies(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = spec.trials / workers;
    const std::uint64_t extra = spec.trials % workers;
    std::uint64_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
      pool.emplace_back([&spec, &tallies, w, begin, end] { run_range(spec, begin, end, tallies[w]); });
      begin = end;
    }
  }

  CensusReport report;
  report.spec = spec;
  std::vector<std::uint64_t> hist(spec.n + 1, 0);
  for (const auto& t : tallies) {
    for (std::size_t k = 0; k <= spec.n; ++k) hist[k] += t.hist[k];
    report.failures += t.failures;
  }

  std::uint64_t counted = 0;
  double weighted = 0.0;
  for (std::size_t k = 0; k <= spec.n; ++k) {
    if (hist[k] == 0) continue;
    if ((spec.n - k) % 2 != 0) {
      throw std::logic_error("run_census: parity violated, k = " + std::to_string(k) +
                             " for n = " + std::to_string(spec.n));
    }
    report.counts[k] = hist[k];
    report.ratios[k] = static_cast<double>(hist[k]) / static_cast<double>(spec.trials);
    counted += hist[k];
    weighted += static_cast<double>(k) * static_cast<double>(hist[k]);
  }
  report.mean_real = counted == 0 ? 0.0 : weighted / static_cast<double>(counted);
  if (counted + report.boundary_count + report.failures != spec.trials) {
    throw std::logic_error("run_census: tally does not add up to the trial count");
  }

  report.reference = reference_distribution(spec.n, spec.shift);
  if (report.reference) {
    Distribution z;
    for (const auto& [k, p] : *report.reference) {
      const auto it = report.counts.find(k);
      z[k] = binomial_z(it == report.counts.end() ? 0 : it->second, spec.trials, p);
    }
    report.z_scores = std::move(z);
  }
  return report;
}

double expected_real(const EnsembleSpec& spec) { return run_census(spec).mean_real; }

}  // namespace rjcf
