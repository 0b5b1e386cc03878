#pragma once

// Seeded generators for duality-valid chi-vectors and strict bundle triples.
// Each case gets its own engine seeded from (seed, tag..., case index), so
// sweeps can be split across workers and still be reproduced exactly.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "genus_forge/bundle_analysis.hpp"
#include "genus_forge/hodge_core.hpp"

namespace genus_forge {

inline std::mt19937_64 case_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

inline Integer random_entry(std::mt19937_64& rng, long magnitude) {
  std::uniform_int_distribution<long> dist(-magnitude, magnitude);
  return Integer(dist(rng));
}

// Free entries chi^0..chi^{floor(n/2)} uniform in [-magnitude, magnitude].
inline ChiVector random_chi_vector(int dim, std::mt19937_64& rng, long magnitude = 50) {
  std::vector<Integer> lower(static_cast<std::size_t>(dim / 2) + 1);
  for (auto& v : lower) v = random_entry(rng, magnitude);
  return ChiVector::from_lower_half(lower, dim);
}

// Coefficient of free entry p in the euler characteristic of a dimension-n
// chi-vector: 2(-1)^p below the middle, (-1)^{n/2} at the middle of an even
// vector. For odd n every coefficient is +-2.
inline long euler_weight(int dim, int p) {
  if (dim % 2 == 0 && p == dim / 2) return sign_pow(p);
  return 2 * sign_pow(p);
}

// Fiber and base drawn freely; the total's free entries drawn freely and then
// the largest free index whose euler weight divides the remaining gap is
// solved for, so that chi(E) = chi(F) chi(B). For even totals that index is
// the middle entry (weight +-1); for odd totals it is chi^{(n-1)/2}
// (weight +-2), and the gap is always even because one factor has odd
// dimension and hence even euler characteristic.
inline BundleTriple random_strict_triple(int fiber_dim, int base_dim, std::mt19937_64& rng, long magnitude = 20) {
  ChiVector fiber = random_chi_vector(fiber_dim, rng, magnitude);
  ChiVector base = random_chi_vector(base_dim, rng, magnitude);
  const int n = fiber_dim + base_dim;
  const Integer target = invariants(fiber).euler * invariants(base).euler;

  std::vector<Integer> lower(static_cast<std::size_t>(n / 2) + 1);
  for (auto& v : lower) v = random_entry(rng, magnitude);

  for (int p = n / 2; p >= 0; --p) {
    Integer rest = 0;
    for (int q = 0; q <= n / 2; ++q)
      if (q != p) rest += euler_weight(n, q) * lower[q];
    const Integer gap = target - rest;
    const long w = euler_weight(n, p);
    if (mpz_divisible_ui_p(gap.get_mpz_t(), static_cast<unsigned long>(w < 0 ? -w : w))) {
      lower[p] = gap / w;
      return BundleTriple(std::move(fiber), std::move(base), ChiVector::from_lower_half(lower, n));
    }
  }
  throw validation_error("no free entry of the total can satisfy the euler constraint");
}

}  // namespace genus_forge
