#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rjcf/census.hpp"
#include "rjcf/jordan.hpp"
#include "rjcf/matrix.hpp"

namespace rjcf {

/// Default grid of sequence indices m.
inline const std::vector<std::size_t> kDefaultMGrid{10, 100, 1000, 10000};

/// A Jordan structure, a similarity P (or the identity) and the grid of m
/// at which the perturbation sequence A_m is examined.
class PerturbationPlan {
 public:
  /// P = I.
  PerturbationPlan(JordanStructure structure, std::vector<std::size_t> m_values = kDefaultMGrid);
  /// Explicit P; its inverse is formed once and checked to ||P P^-1 - I||_F <= 1e-10 n.
  PerturbationPlan(JordanStructure structure, Matrix p,
                   std::vector<std::size_t> m_values = kDefaultMGrid);

  const JordanStructure& structure() const noexcept { return structure_; }
  const std::vector<std::size_t>& m_values() const noexcept { return m_values_; }
  bool is_identity() const noexcept { return !p_.has_value(); }
  std::size_t dimension() const noexcept { return n_; }

  /// P, materialized (identity when unset).
  Matrix p() const;
  Matrix p_inverse() const;

  /// ||P||_F ||P^-1||_F; equals n for the identity.
  double frobenius_condition() const noexcept { return kappa_f_; }

  /// The limit A = P RJCF P^-1.
  Matrix limit() const;

  /// P M P^-1 (M itself for the identity plan).
  Matrix conjugate(const Matrix& m) const;

 private:
  JordanStructure structure_;
  std::optional<Matrix> p_;
  std::optional<Matrix> p_inv_;
  std::vector<std::size_t> m_values_;
  std::size_t n_ = 0;
  double kappa_f_ = 0.0;
};

/// Random P with i.i.d. normal entries drawn from seed, resampled until the
/// 2-norm condition number is at most max_condition.
Matrix conditioned_random_p(std::size_t n, std::uint64_t seed, double max_condition = 1e3);

/// The perturbed canonical form before conjugation: J_k(c) gets
/// diag(1/(m+j), 1/(2m+j), ..., 1/(km+j)) and C_l(a,b) gets the block diagonal
/// of C(1/(pm+j), 1/(pm+j)), p = 1..l, where j is the 1-based position of the
/// block within its eigenvalue group.
Matrix perturbed_canonical_form(const JordanStructure& js, std::size_t m);

/// A_m = P (perturbed canonical form) P^-1.
Matrix perturb(const PerturbationPlan& plan, std::size_t m);

/// Exact eigenvalues of A_m in canonical order: c + 1/(km+j) for real groups
/// and a + 1/(lm+j) +- (b + 1/(lm+j)) i for pair groups.
std::vector<ComplexScalar> predicted_eigenvalues(const JordanStructure& js, std::size_t m);

struct SequenceStep {
  std::size_t m = 0;
  std::optional<ClassificationResult> classification;
  std::optional<std::string> error;  ///< census failure at this m
  double distance_to_limit = 0.0;    ///< ||A_m - A||_F
  double distance_bound = 0.0;       ///< kappa_F(P) sqrt(n) / m
};

struct SequenceReport {
  BundleSignature expected;           ///< (n, sum of l_j)
  std::size_t expected_real_count = 0;  ///< sum of k_j
  std::vector<SequenceStep> steps;
  bool passed = false;
};

/// Classifies A_m for every m in the plan. Passes when the largest m is
/// off the boundary with the expected signature and real count.
/// Per-m failures are recorded, not thrown.
SequenceReport verify_sequence(const PerturbationPlan& plan);

}  // namespace rjcf
