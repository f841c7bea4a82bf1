#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rjcf/matrix.hpp"

namespace rjcf {

/// All blocks C_l(a, b) sharing one conjugate pair a +- b i (b > 0).
struct PairGroup {
  double a = 0.0;
  double b = 1.0;
  std::vector<std::size_t> sizes;  ///< l_j, each block is 2 l_j x 2 l_j
  friend bool operator==(const PairGroup&, const PairGroup&) = default;
};

/// All blocks J_k(c) sharing one real eigenvalue c.
struct RealGroup {
  double c = 0.0;
  std::vector<std::size_t> sizes;  ///< k_j
  friend bool operator==(const RealGroup&, const RealGroup&) = default;
};

/// Symbolic real Jordan canonical form: pair groups first, then real groups.
struct JordanStructure {
  std::vector<PairGroup> pairs;
  std::vector<RealGroup> reals;

  /// Total matrix dimension n.
  std::size_t dimension() const noexcept;
  /// Sum of all l_j: number of conjugate pairs counted with multiplicity.
  std::size_t pair_multiplicity() const noexcept;
  /// Sum of all k_j: number of real eigenvalues counted with multiplicity.
  std::size_t real_multiplicity() const noexcept;
  /// 2r + s, the number of distinct eigenvalues.
  std::size_t distinct_eigenvalues() const noexcept { return 2 * pairs.size() + reals.size(); }

  /// Throws InputError on empty structure, zero block sizes, b <= 0,
  /// non-finite parameters, or repeated eigenvalues across groups.
  void validate() const;

  friend bool operator==(const JordanStructure&, const JordanStructure&) = default;
};

/// C(a, b) = [[a, b], [-b, a]]
Matrix pair_block(double a, double b);
/// C_l(a, b): C(a, b) on the block diagonal, I_2 on the block superdiagonal.
Matrix pair_jordan_block(double a, double b, std::size_t l);
/// J_k(c): c on the diagonal, ones on the superdiagonal.
Matrix jordan_block(double c, std::size_t k);

/// Block-diagonal realization in specification order.
Matrix realize(const JordanStructure& js);

/// t pairs and n - 2t reals, all blocks of size 1, parameters drawn from seed:
/// a in [-2, 2], b in (0, 2), c in [-3, 3], pairwise separation >= 1e-3.
JordanStructure generic_structure(std::size_t n, std::size_t t, std::uint64_t seed);

enum class CodimMethod { Oracle, ClosedForm };

std::string_view to_string(CodimMethod m) noexcept;
/// Accepts "oracle" and "closed".
CodimMethod parse_codim_method(std::string_view s);

/// Largest dimension accepted by the commutant oracle.
inline constexpr std::size_t kOracleMaxDimension = 14;
/// Required ratio between the smallest accepted and largest rejected singular value.
inline constexpr double kOracleMinRankGap = 1e3;

/// dim {X : XA = AX} = n^2 - rank(I (x) A - A^T (x) I), by singular values.
/// Throws InputError above kOracleMaxDimension and RankError when the
/// singular value gap at the rank cut is below kOracleMinRankGap.
std::size_t commutant_dim_oracle(const Matrix& a);

/// Commutant dimension from block sizes: sum over real eigenvalues of
/// sum_{j,j'} min(k_j, k_j'), plus twice the same sum over each pair group.
std::size_t commutant_dim_closed_form(const JordanStructure& js);

std::size_t codim_orbit(const JordanStructure& js, CodimMethod method);
/// codim_orbit - (2r + s). Can be negative only for malformed input, hence signed.
long long codim_bundle(const JordanStructure& js, CodimMethod method);

}  // namespace rjcf
