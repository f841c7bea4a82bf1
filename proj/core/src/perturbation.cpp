#include "rjcf/perturbation.hpp"

#include <cmath>
#include <future>
#include <string>

#include "rjcf/errors.hpp"
#include "rjcf/linalg.hpp"
#include "rjcf/rng.hpp"

namespace rjcf {

namespace {

constexpr std::uint64_t kSimilarityStream = 0xC0DE'5EED'0000'0002ull;

void check_grid(const std::vector<std::size_t>& m_values) {
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] == 0) throw InputError("PerturbationPlan: m values must be positive");
    if (i > 0 && m_values[i] <= m_values[i - 1]) {
      throw InputError("PerturbationPlan: m values must be strictly increasing");
    }
  }
}

}  // namespace

PerturbationPlan::PerturbationPlan(JordanStructure structure, std::vector<std::size_t> m_values)
    : structure_(std::move(structure)), m_values_(std::move(m_values)) {
  structure_.validate();
  check_grid(m_values_);
  n_ = structure_.dimension();
  kappa_f_ = static_cast<double>(n_);
}

PerturbationPlan::PerturbationPlan(JordanStructure structure, Matrix p,
                                   std::vector<std::size_t> m_values)
    : structure_(std::move(structure)), m_values_(std::move(m_values)) {
  structure_.validate();
  check_grid(m_values_);
  n_ = structure_.dimension();
  if (p.rows() != n_ || p.cols() != n_) {
    throw InputError("PerturbationPlan: P is " + std::to_string(p.rows()) + "x" +
                     std::to_string(p.cols()) + ", structure has dimension " + std::to_string(n_));
  }
  if (!p.all_finite()) throw InputError("PerturbationPlan: P has non-finite entries");
  if (numerical_rank(p) != n_) throw NumericalError("PerturbationPlan: P is singular");
  Matrix inv = inverse(p);
  Matrix residual = matmul(p, inv) - Matrix::identity(n_);
  if (frobenius_norm(residual) > 1e-10 * static_cast<double>(n_)) {
    throw NumericalError("PerturbationPlan: inverse of P fails the residual check");
  }
  kappa_f_ = frobenius_norm(p) * frobenius_norm(inv);
  p_ = std::move(p);
  p_inv_ = std::move(inv);
}

Matrix PerturbationPlan::p() const { return p_ ? *p_ : Matrix::identity(n_); }
Matrix PerturbationPlan::p_inverse() const { return p_inv_ ? *p_inv_ : Matrix::identity(n_); }

Matrix PerturbationPlan::conjugate(const Matrix& m) const {
  if (!p_) return m;
  return matmul(matmul(*p_, m), *p_inv_);
}

Matrix PerturbationPlan::limit() const { return conjugate(realize(structure_)); }

Matrix conditioned_random_p(std::size_t n, std::uint64_t seed, double max_condition) {
  if (n == 0) throw InputError("conditioned_random_p: n must be positive");
  CounterStream rng(seed, kSimilarityStream);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix p(n, n);
    for (double& x : p.entries()) x = rng.next_normal();
    try {
      if (condition_number(p) <= max_condition) return p;
    } catch (const NumericalError&) {
      // singular draw, try again
    }
  }
  throw NumericalError("conditioned_random_p: no draw met the condition bound");
}

Matrix perturbed_canonical_form(const JordanStructure& js, std::size_t m) {
  if (m == 0) throw InputError("perturb: m must be positive");
  Matrix r = realize(js);
  const double md = static_cast<double>(m);
  std::size_t offset = 0;
  for (const auto& g : js.pairs) {
    for (std::size_t j = 1; j <= g.sizes.size(); ++j) {
      const std::size_t l = g.sizes[j - 1];
      for (std::size_t p = 1; p <= l; ++p) {
        const double e = 1.0 / (static_cast<double>(p) * md + static_cast<double>(j));
        const std::size_t d = offset + 2 * (p - 1);
        r(d, d) += e;
        r(d, d + 1) += e;
        r(d + 1, d) -= e;
        r(d + 1, d + 1) += e;
      }
      offset += 2 * l;
    }
  }
  for (const auto& g : js.reals) {
    for (std::size_t j = 1; j <= g.sizes.size(); ++j) {
      const std::size_t k = g.sizes[j - 1];
      for (std::size_t p = 1; p <= k; ++p) {
        r(offset + p - 1, offset + p - 1) +=
            1.0 / (static_cast<double>(p) * md + static_cast<double>(j));
      }
      offset += k;
    }
  }
  return r;
}

Matrix perturb(const PerturbationPlan& plan, std::size_t m) {
  return plan.conjugate(perturbed_canonical_form(plan.structure(), m));
}

std::vector<ComplexScalar> predicted_eigenvalues(const JordanStructure& js, std::size_t m) {
  js.validate();
  const double md = static_cast<double>(m);
  std::vector<ComplexScalar> out;
  for (const auto& g : js.pairs)
    for (std::size_t j = 1; j <= g.sizes.size(); ++j)
      for (std::size_t p = 1; p <= g.sizes[j - 1]; ++p) {
        const double e = 1.0 / (static_cast<double>(p) * md + static_cast<double>(j));
        out.emplace_back(g.a + e, g.b + e);
        out.emplace_back(g.a + e, -(g.b + e));
      }
  for (const auto& g : js.reals)
    for (std::size_t j = 1; j <= g.sizes.size(); ++j)
      for (std::size_t k = 1; k <= g.sizes[j - 1]; ++k)
        out.emplace_back(g.c + 1.0 / (static_cast<double>(k) * md + static_cast<double>(j)), 0.0);
  canonical_sort(out);
  return out;
}

SequenceReport verify_sequence(const PerturbationPlan& plan) {
  constexpr std::size_t kMaxDimension = 30;
  const std::size_t n = plan.dimension();
  if (n > kMaxDimension) {
    throw InputError("verify_sequence: dimension " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxDimension));
  }
  SequenceReport report;
  report.expected = BundleSignature::make(n, plan.structure().pair_multiplicity());
  report.expected_real_count = plan.structure().real_multiplicity();

  const Matrix limit = plan.limit();
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  auto examine = [&](std::size_t m) {
    SequenceStep step;
    step.m = m;
    const Matrix am = perturb(plan, m);
    step.distance_to_limit = frobenius_norm(am - limit);
    step.distance_bound = plan.frobenius_condition() * sqrt_n / static_cast<double>(m);
    try {
      step.classification = classify(am);
    } catch (const NumericalError& e) {
      step.error = e.what();
    }
    return step;
  };

  std::vector<std::future<SequenceStep>> pending;
  pending.reserve(plan.m_values().size());
  for (std::size_t m : plan.m_values()) pending.push_back(std::async(std::launch::async, examine, m));
  for (auto& f : pending) report.steps.push_back(f.get());

  if (!report.steps.empty()) {
    const auto& last = report.steps.back();
    report.passed = last.classification && !last.classification->boundary &&
                    last.classification->signature == report.expected &&
                    last.classification->real_count == report.expected_real_count;
  }
  return report;
}

}  // namespace rjcf
