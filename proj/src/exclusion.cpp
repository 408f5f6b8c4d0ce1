#include "probwb/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "probwb/lis.hpp"
#include "probwb/parallel.hpp"

namespace probwb {

ParticleConfig::ParticleConfig(std::vector<std::uint8_t> occupancy) : x_(std::move(occupancy)) {
  for (auto& v : x_) {
    if (v > 1) throw std::invalid_argument("ParticleConfig: entries must be 0 or 1");
    count_ += v;
  }
}

ParticleConfig ParticleConfig::balanced_shuffle(int n, Stream& rng) {
  if (n < 2 || n % 2) throw std::domain_error("balanced_shuffle: n must be even and >= 2");
  std::vector<std::uint8_t> x(n, 0);
  std::fill(x.begin() + n / 2, x.end(), 1);
  for (int i = n - 1; i > 0; --i) std::swap(x[i], x[rng.below(i + 1)]);
  return ParticleConfig(std::move(x));
}

AsepParams AsepParams::with_defaults(int n, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("AsepParams: q must lie in (0,1]");
  AsepParams p;
  p.n = n;
  p.q = q;
  p.swap_up = 1.0 - q / 2.0;
  p.swap_down = q / 2.0;
  return p;
}

int asep_step(ParticleConfig& config, const AsepParams& params, Stream& rng) {
  const int n = config.size();
  if (n < 2) throw std::domain_error("asep_step: n must be >= 2");
  const int i = static_cast<int>(rng.below(n - 1));
  const auto a = config[i], b = config[i + 1];
  if (a == b) return i;
  const double p = a ? params.swap_up : params.swap_down;
  if (rng.uniform() < p) config.swap_adjacent(i);
  return i;
}

double asep_spectral_gap(int n, double q) {
  if (n < 2) throw std::domain_error("asep_spectral_gap: n must be >= 2");
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("asep_spectral_gap: q must lie in (0,1]");
  const double delta = 0.5 * (q + 1.0 / q);
  return 1.0 - std::cos(std::numbers::pi / n) / delta;
}

double asep_gap_companion(int n, double alpha, double c) {
  return c * c / (2.0 * std::pow(static_cast<double>(n), 2.0 * alpha));
}

int midpoint_height(const ParticleConfig& config, int up_value) {
  const int n = config.size();
  if (n % 2) throw std::domain_error("midpoint_height: n must be even");
  int h = 0;
  for (int i = 0; i < n / 2; ++i) h += (config[i] == up_value) ? 1 : -1;
  return h;
}

ParticleConfig blocking_product_sample(int n, double a, double q, Stream& rng) {
  if (!(a > 0.0)) throw std::domain_error("blocking_product_sample: a must be positive");
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("blocking_product_sample: q in (0,1]");
  std::vector<std::uint8_t> x(n);
  const double la = std::log(a), lq = std::log(q);
  for (int k = 1; k <= n; ++k) {
    // a q^k / (a q^k + 1) = logistic(ln a + k ln q)
    const double p = 1.0 / (1.0 + std::exp(-(la + k * lq)));
    x[k - 1] = rng.uniform() < p ? 1 : 0;
  }
  return ParticleConfig(std::move(x));
}

double detailed_balance_residual(int n, double q, double swap_up, double swap_down) {
  if (n < 2 || n > 20 || n % 2) throw std::domain_error("detailed_balance_residual: even n <= 20");
  double worst = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != n / 2) continue;
    // Inv = #{i<j : X_i = 1, X_j = 0}
    int inv = 0, ones = 0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u)
        ++ones;
      else
        inv += ones;
    }
    for (int i = 0; i + 1 < n; ++i) {
      const bool a = (mask >> i) & 1u, b = (mask >> (i + 1)) & 1u;
      if (!(a && !b)) continue;
      // x has (1,0) at (i,i+1); y has (0,1) and one fewer inversion.
      const double pix = std::pow(q, inv), piy = std::pow(q, inv - 1);
      const double flow_xy = pix * swap_up, flow_yx = piy * swap_down;
      const double scale = std::max(flow_xy, flow_yx);
      if (scale > 0) worst = std::max(worst, std::abs(flow_xy - flow_yx) / scale);
    }
  }
  return worst;
}

double fluctuation_envelope(FluctuationObservable obs, int n, double alpha, double c, double r) {
  const double n2a = std::pow(static_cast<double>(n), 2.0 * alpha);
  const double s = obs == FluctuationObservable::Midpoint ? std::sqrt(c * c * (n - 1) / n2a)
                                                         : std::sqrt(c * c / n2a);
  return 6.0 * std::exp(-0.5 * r * s);
}

FluctuationSummary fluctuation_experiment(const FluctuationConfig& cfg) {
  if (cfg.trials <= 0) throw std::length_error("fluctuation_experiment: trials must be positive");
  if (cfg.n < 2 || cfg.n % 2) throw std::domain_error("fluctuation_experiment: n must be even");
  const double q = 1.0 - cfg.c / std::pow(static_cast<double>(cfg.n), cfg.alpha);
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("fluctuation_experiment: q outside (0,1]");
  AsepParams params = AsepParams::with_defaults(cfg.n, q);
  if (cfg.swap_up >= 0.0) params.swap_up = cfg.swap_up;
  if (cfg.swap_down >= 0.0) params.swap_down = cfg.swap_down;
  const std::int64_t burn =
      cfg.burn_in >= 0 ? cfg.burn_in : 10LL * static_cast<std::int64_t>(cfg.n) * cfg.n;

  FluctuationSummary out;
  out.n = cfg.n;
  out.q = q;
  out.samples.assign(cfg.trials, 0.0);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(t));
    ParticleConfig x = ParticleConfig::balanced_shuffle(cfg.n, rng);
    for (std::int64_t s = 0; s < burn; ++s) asep_step(x, params, rng);
    out.samples[t] = cfg.observable == FluctuationObservable::Midpoint
                         ? static_cast<double>(midpoint_height(x, 1))
                         : static_cast<double>(binary_walk_lis(x.occupancy()));
  });

  double sum = 0.0, sum_abs = 0.0;
  for (double v : out.samples) sum += v, sum_abs += std::abs(v);
  out.mean = sum / cfg.trials;
  out.mean_abs = sum_abs / cfg.trials;
  double ss = 0.0;
  for (double v : out.samples) ss += (v - out.mean) * (v - out.mean);
  out.sd = cfg.trials > 1 ? std::sqrt(ss / (cfg.trials - 1)) : 0.0;

  std::vector<double> grid = cfg.r_grid;
  if (grid.empty()) {
    const double top = std::max(1.0, 4.0 * out.sd);
    for (int k = 0; k <= 16; ++k) grid.push_back(top * k / 16.0);
  }
  for (double r : grid) {
    int hits = 0;
    for (double v : out.samples) hits += std::abs(v - out.mean) >= r ? 1 : 0;
    out.table.push_back({r, static_cast<double>(hits) / cfg.trials,
                         fluctuation_envelope(cfg.observable, cfg.n, cfg.alpha, cfg.c, r),
                         cfg.trials});
  }
  return out;
}

}  // namespace probwb
