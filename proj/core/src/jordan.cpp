#include "rjcf/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rjcf/errors.hpp"
#include "rjcf/linalg.hpp"
#include "rjcf/rng.hpp"

namespace rjcf {

namespace {

std::size_t min_sum(const std::vector<std::size_t>& sizes) {
  std::size_t s = 0;
  for (std::size_t x : sizes)
    for (std::size_t y : sizes) s += std::min(x, y);
  return s;
}

// Stream index reserved for structure generation so it never collides
// with per-trial census streams of the same seed.
constexpr std::uint64_t kStructureStream = 0xC0DE'5EED'0000'0001ull;

}  // namespace

std::size_t JordanStructure::dimension() const noexcept {
  return 2 * pair_multiplicity() + real_multiplicity();
}

std::size_t JordanStructure::pair_multiplicity() const noexcept {
  std::size_t s = 0;
  for (const auto& g : pairs)
    for (std::size_t l : g.sizes) s += l;
  return s;
}

std::size_t JordanStructure::real_multiplicity() const noexcept {
  std::size_t s = 0;
  for (const auto& g : reals)
    for (std::size_t k : g.sizes) s += k;
  return s;
}

void JordanStructure::validate() const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& g = pairs[i];
    if (!std::isfinite(g.a) || !std::isfinite(g.b)) {
      throw InputError("JordanStructure: pair " + std::to_string(i) + " has non-finite parameters");
    }
    if (!(g.b > 0.0)) {
      throw InputError("JordanStructure: pair " + std::to_string(i) + " needs b > 0");
    }
    if (g.sizes.empty()) throw InputError("JordanStructure: pair " + std::to_string(i) + " has no blocks");
    for (std::size_t l : g.sizes)
      if (l == 0) throw InputError("JordanStructure: zero block size in pair " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      if (pairs[j].a == g.a && pairs[j].b == g.b) {
        throw InputError("JordanStructure: pairs " + std::to_string(j) + " and " +
                         std::to_string(i) + " share the eigenvalue pair");
      }
  }
  for (std::size_t i = 0; i < reals.size(); ++i) {
    const auto& g = reals[i];
    if (!std::isfinite(g.c)) {
      throw InputError("JordanStructure: real " + std::to_string(i) + " is non-finite");
    }
    if (g.sizes.empty()) throw InputError("JordanStructure: real " + std::to_string(i) + " has no blocks");
    for (std::size_t k : g.sizes)
      if (k == 0) throw InputError("JordanStructure: zero block size in real " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      if (reals[j].c == g.c) {
        throw InputError("JordanStructure: reals " + std::to_string(j) + " and " +
                         std::to_string(i) + " share the eigenvalue");
      }
  }
  if (dimension() == 0) throw InputError("JordanStructure: empty structure");
}

Matrix pair_block(double a, double b) { return Matrix{{a, b}, {-b, a}}; }

Matrix pair_jordan_block(double a, double b, std::size_t l) {
  Matrix m(2 * l, 2 * l);
  for (std::size_t p = 0; p < l; ++p) {
    const std::size_t r = 2 * p;
    m(r, r) = a;
    m(r, r + 1) = b;
    m(r + 1, r) = -b;
    m(r + 1, r + 1) = a;
    if (p + 1 < l) {
      m(r, r + 2) = 1.0;
      m(r + 1, r + 3) = 1.0;
    }
  }
  return m;
}

Matrix jordan_block(double c, std::size_t k) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    m(i, i) = c;
    if (i + 1 < k) m(i, i + 1) = 1.0;
  }
  return m;
}

Matrix realize(const JordanStructure& js) {
  js.validate();
  std::vector<Matrix> blocks;
  for (const auto& g : js.pairs)
    for (std::size_t l : g.sizes) blocks.push_back(pair_jordan_block(g.a, g.b, l));
  for (const auto& g : js.reals)
    for (std::size_t k : g.sizes) blocks.push_back(jordan_block(g.c, k));
  return direct_sum(blocks);
}

JordanStructure generic_structure(std::size_t n, std::size_t t, std::uint64_t seed) {
  if (n == 0) throw InputError("generic_structure: n must be positive");
  if (t > n / 2) throw InputError("generic_structure: t exceeds floor(n/2)");
  constexpr double kSeparation = 1e-3;
  CounterStream rng(seed, kStructureStream);
  JordanStructure js;
  while (js.pairs.size() < t) {
    const double a = -2.0 + 4.0 * rng.next_uniform();
    const double b = 2.0 * rng.next_uniform();
    if (b < kSeparation) continue;
    const bool close = std::any_of(js.pairs.begin(), js.pairs.end(), [&](const PairGroup& g) {
      return std::hypot(g.a - a, g.b - b) < kSeparation;
    });
    if (!close) js.pairs.push_back({a, b, {1}});
  }
  while (js.reals.size() < n - 2 * t) {
    const double c = -3.0 + 6.0 * rng.next_uniform();
    const bool close = std::any_of(js.reals.begin(), js.reals.end(),
                                   [&](const RealGroup& g) { return std::fabs(g.c - c) < kSeparation; });
    if (!close) js.reals.push_back({c, {1}});
  }
  return js;
}

std::string_view to_string(CodimMethod m) noexcept {
  return m == CodimMethod::Oracle ? "oracle" : "closed";
}

CodimMethod parse_codim_method(std::string_view s) {
  if (s == "oracle") return CodimMethod::Oracle;
  if (s == "closed") return CodimMethod::ClosedForm;
  throw InputError("unknown codim method '" + std::string(s) + "' (expected oracle|closed)");
}

std::size_t commutant_dim_oracle(const Matrix& a) {
  if (!a.is_square() || a.empty()) throw InputError("commutant_dim_oracle: matrix not square");
  const std::size_t n = a.rows();
  if (n > kOracleMaxDimension) {
    throw InputError("commutant_dim_oracle: n = " + std::to_string(n) + " exceeds the oracle cap " +
                     std::to_string(kOracleMaxDimension) + "; use the closed form");
  }
  const Matrix id = Matrix::identity(n);
  const Matrix op = kron(id, a) - kron(a.transpose(), id);
  const RankDecision d = rank_decision(op);
  if (d.gap() < kOracleMinRankGap) {
    throw RankError("commutant_dim_oracle: ill-determined rank " + std::to_string(d.rank) +
                        " (singular value gap " + std::to_string(d.gap()) + ")",
                    d.singular_values[d.rank - 1], d.singular_values[d.rank]);
  }
  return n * n - d.rank;
}

std::size_t commutant_dim_closed_form(const JordanStructure& js) {
  js.validate();
  std::size_t dim = 0;
  for (const auto& g : js.pairs) dim += 2 * min_sum(g.sizes);
  for (const auto& g : js.reals) dim += min_sum(g.sizes);
  return dim;
}

std::size_t codim_orbit(const JordanStructure& js, CodimMethod method) {
  if (method == CodimMethod::ClosedForm) return commutant_dim_closed_form(js);
  js.validate();
  if (js.dimension() > kOracleMaxDimension) {
    throw InputError("codim_orbit: dimension " + std::to_string(js.dimension()) +
                     " exceeds the oracle cap " + std::to_string(kOracleMaxDimension) +
                     "; use the closed form");
  }
  return commutant_dim_oracle(realize(js));
}

long long codim_bundle(const JordanStructure& js, CodimMethod method) {
  return static_cast<long long>(codim_orbit(js, method)) -
         static_cast<long long>(js.distinct_eigenvalues());
}

}  // namespace rjcf
