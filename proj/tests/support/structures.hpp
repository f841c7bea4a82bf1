#pragma once
// Seeded random Jordan structures for tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rjcf/jordan.hpp"
#include "rjcf/rng.hpp"

namespace rjcf::testing {

// Groups have 1..max_group blocks of size 1..max_block; eigenvalue real parts
// are kept at least `sep` apart so each group is well isolated.
inline JordanStructure random_structure(std::uint64_t seed, std::size_t max_dim,
                                        std::size_t max_block = 3, std::size_t max_group = 2,
                                        double sep = 0.5) {
  CounterStream s(seed, 0x57a7);
  JordanStructure js;
  std::size_t dim = 0;
  std::vector<double> used;
  auto isolated = [&](double x) {
    for (double u : used)
      if (std::abs(u - x) < sep) return false;
    return true;
  };
  auto draw = [&](double lo, double hi) {
    for (int tries = 0; tries < 1000; ++tries) {
      const double x = lo + (hi - lo) * s.next_uniform();
      if (isolated(x)) return x;
    }
    return hi + sep * static_cast<double>(used.size() + 1);
  };
  for (int attempts = 0; attempts < 64; ++attempts) {
    const bool pair = s.next_uniform() < 0.5;
    const std::size_t blocks = 1 + static_cast<std::size_t>(s.next_uniform() * max_group);
    std::vector<std::size_t> sizes;
    std::size_t need = 0;
    for (std::size_t j = 0; j < blocks; ++j) {
      const std::size_t k = 1 + static_cast<std::size_t>(s.next_uniform() * max_block);
      sizes.push_back(k);
      need += pair ? 2 * k : k;
    }
    if (dim + need > max_dim) continue;
    if (pair) {
      const double a = draw(-2.0, 2.0);
      const double b = 0.5 + 1.5 * s.next_uniform();
      used.push_back(a);
      js.pairs.push_back({a, b, sizes});
    } else {
      const double c = draw(-3.0, 3.0);
      used.push_back(c);
      js.reals.push_back({c, sizes});
    }
    dim += need;
    if (dim == max_dim || s.next_uniform() < 0.3) break;
  }
  if (dim == 0) js.reals.push_back({0.25, {1}});
  return js;
}

}  // namespace rjcf::testing
