#pragma once

#include <array>
#include <cstdint>

namespace probwb {

/// Point counts and areas of the four rectangles cut by one vertical and one
/// horizontal line. Index order is (11, 12, 21, 22): 12 is the low-y, high-x
/// rectangle and 21 the high-y, low-x one.
struct QuadrantCounts {
  std::array<std::int64_t, 4> n{};
  std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};

  std::int64_t total() const { return n[0] + n[1] + n[2] + n[3]; }
  void validate() const;

  /// Areas from a vertical split at s and a horizontal split at t.
  static std::array<double, 4> areas(double s, double t);
};

/// ln of n!/prod n_ij! * prod p_ij^{n_ij}.
double log_multinomial(const QuadrantCounts& c);

/// ln W_q, the Mallows correction factor.
double log_w_q(const QuadrantCounts& c, double q);
double log_w_q_lq(const QuadrantCounts& c, double log_q);

/// ln P(counts) for the Mallows point process.
double log_prob_exact(const QuadrantCounts& c, double q);
double log_prob_exact_lq(const QuadrantCounts& c, double log_q);

/// lim (1/n) ln W_q at q = e^{-beta/n} for cell fractions nu; all nu_ij > 0.
double asymptotic_rate(const std::array<double, 4>& nu, double beta);

/// n [ln n - sum nu ln n_ij + sum nu ln p_ij + asymptotic_rate(nu, beta)].
double a_tilde(const std::array<double, 4>& nu, double beta, const std::array<double, 4>& p,
               std::int64_t n);

/// ln( sqrt(2 pi n) / prod sqrt(2 pi n_ij) ).
double log_prefactor(const QuadrantCounts& c);

/// log_prob_exact - (log_prefactor + a_tilde) at q = e^{-beta/n}.
double finite_n_residual(const QuadrantCounts& c, double beta);

/// Limit of finite_n_residual: sum over pair sums of B(beta s) - sum B(beta nu_ij) - B(beta).
double b_constant(const std::array<double, 4>& nu, double beta);

}  // namespace probwb
