#include "probwb/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace probwb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Stream::below(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % m;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % m;
}

double Stream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * f;
  has_cached_ = true;
  return u * f;
}

std::uint64_t Stream::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("geometric: q must lie in (0,1)");
  const double k = std::floor(std::log(uniform_pos()) / std::log(q));
  if (k >= 9.0e18) return std::numeric_limits<std::uint64_t>::max();
  return 1 + static_cast<std::uint64_t>(k);
}

double Stream::angle() {
  // (-pi, pi]: map u in [0,1) to pi - 2 pi u.
  return std::numbers::pi - 2.0 * std::numbers::pi * uniform();
}

Stream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(master_seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  return Stream(b);
}

}  // namespace probwb
