#pragma once

#include <cstdint>
#include <random>

namespace probwb {

// 64-bit finalizer used to turn (seed, index) into an engine key.
std::uint64_t splitmix64(std::uint64_t x);

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. All distribution transforms below are implemented here rather
/// than through <random> distributions, which are implementation-defined.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : engine_(key) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() { return 1.0 - uniform(); }

  /// Uniform integer in {0, ..., m-1} by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t m);

  /// Uniform integer in {1, ..., m}.
  std::uint64_t one_to(std::uint64_t m) { return below(m) + 1; }

  /// Standard normal via the Marsaglia polar method (one cached variate).
  double normal();

  /// Geometric on {1, 2, ...} with P(k = t) = (1-q) q^(t-1), by log inversion.
  std::uint64_t geometric(double q);

  /// Angle uniform on (-pi, pi].
  double angle();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Independent substream for trial `index` of a run seeded with `master_seed`.
Stream derive_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace probwb
