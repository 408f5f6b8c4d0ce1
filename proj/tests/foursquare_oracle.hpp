#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>

#include "probwb/mallows.hpp"

namespace probwb::oracle {

inline double binom_pmf(int k, int n, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                  k * std::log(p) + (n - k) * std::log1p(-p));
}

using Key = std::array<std::int64_t, 4>;

// Law of the four counts when the split positions are the number of points
// left of s and below t: brute force over S_n.
inline std::map<Key, double> marginal_oracle(int n, double s, double t, double q) {
  const auto law = exact_distribution(n, q);
  std::map<Key, double> out;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const double w = binom_pmf(a, n, s) * binom_pmf(b, n, t);
      for (const auto& [perm, pr] : law) {
        std::int64_t n11 = 0;
        for (int i = 0; i < b; ++i) n11 += perm[i] <= a;
        out[{n11, b - n11, a - n11, n - a - b + n11}] += w * pr;
      }
    }
  return out;
}

// Same, with the splits pinned at a = b.
inline std::map<Key, double> lattice_oracle(int n, int a, double q) {
  std::map<Key, double> out;
  for (const auto& [perm, pr] : exact_distribution(n, q)) {
    std::int64_t n11 = 0;
    for (int i = 0; i < a; ++i) n11 += perm[i] <= a;
    out[{n11, a - n11, a - n11, n - 2 * a + n11}] += pr;
  }
  return out;
}

}  // namespace probwb::oracle
