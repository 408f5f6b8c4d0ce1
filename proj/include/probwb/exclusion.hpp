#pragma once

#include <cstdint>
#include <vector>

#include "probwb/rng.hpp"

namespace probwb {

/// Binary occupation vector with a cached particle count.
class ParticleConfig {
 public:
  ParticleConfig() = default;
  explicit ParticleConfig(std::vector<std::uint8_t> occupancy);

  /// n/2 ones placed by a uniform shuffle (n even).
  static ParticleConfig balanced_shuffle(int n, Stream& rng);

  int size() const { return static_cast<int>(x_.size()); }
  int particle_count() const { return count_; }
  std::uint8_t operator[](int i) const { return x_[i]; }
  const std::vector<std::uint8_t>& occupancy() const { return x_; }

  /// Exchange sites i and i+1 (0-based).
  void swap_adjacent(int i) { std::swap(x_[i], x_[i + 1]); }

 private:
  std::vector<std::uint8_t> x_;
  int count_ = 0;
};

/// swap_up is the probability that a (1,0) pair becomes (0,1); swap_down the
/// probability for (0,1) to (1,0).
struct AsepParams {
  int n = 2;
  double q = 1.0;
  double swap_up = 0.5;
  double swap_down = 0.5;

  /// Defaults swap_up = 1 - q/2, swap_down = q/2.
  static AsepParams with_defaults(int n, double q);
};

/// One discrete step: bond i uniform in {1..n-1}; a discordant pair swaps
/// with the configured probability. Returns the 0-based bond index used.
int asep_step(ParticleConfig& config, const AsepParams& params, Stream& rng);

/// 1 - cos(pi/n)/Delta with Delta = (q + 1/q)/2.
double asep_spectral_gap(int n, double q);

/// c^2 / (2 n^{2 alpha}) for q = 1 - c/n^alpha.
double asep_gap_companion(int n, double alpha, double c);

/// Sum over the first n/2 sites of +1 (site equals up_value) or -1.
int midpoint_height(const ParticleConfig& config, int up_value = 1);

/// Independent sites with P(X_k = 1) = a q^k / (a q^k + 1), k = 1..n.
ParticleConfig blocking_product_sample(int n, double a, double q, Stream& rng);

/// Max relative violation of detailed balance for the weight q^Inv over all
/// configurations of length n with n/2 particles (0 means reversible).
double detailed_balance_residual(int n, double q, double swap_up, double swap_down);

enum class FluctuationObservable { Midpoint, WalkLis };

struct FluctuationRow {
  double r = 0.0;
  double empirical = 0.0;
  double envelope = 0.0;
  int trials = 0;
};

struct FluctuationSummary {
  int n = 0;
  double q = 1.0;
  double mean = 0.0;
  double sd = 0.0;
  double mean_abs = 0.0;
  std::vector<double> samples;
  std::vector<FluctuationRow> table;
};

struct FluctuationConfig {
  int n = 200;
  double alpha = 0.5;
  double c = 1.0;
  FluctuationObservable observable = FluctuationObservable::WalkLis;
  std::int64_t burn_in = -1;  // -1 means 10 n^2
  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<double> r_grid;  // empty means a default grid
  // swap probabilities; negative means the defaults for q
  double swap_up = -1.0;
  double swap_down = -1.0;
};

/// q = 1 - c/n^alpha. Envelopes: midpoint 6 exp(-(r/2) sqrt(c^2 (n-1)/n^{2 alpha})),
/// walk LIS 6 exp(-(r/2) sqrt(c^2/n^{2 alpha})).
FluctuationSummary fluctuation_experiment(const FluctuationConfig& cfg);

double fluctuation_envelope(FluctuationObservable obs, int n, double alpha, double c, double r);

}  // namespace probwb
