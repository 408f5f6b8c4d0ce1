#pragma once

#include <cstdint>

namespace probwb {

/// Size, scale and deformation triple. When built from beta, q = exp(-beta/n)
/// and log_q = -beta/n is kept exactly so downstream sums avoid forming 1 - q.
struct QParams {
  std::int64_t n = 1;
  double beta = 0.0;
  double q = 1.0;
  double log_q = 0.0;

  static QParams from_beta(std::int64_t n, double beta);
  static QParams from_q(std::int64_t n, double q);
};

struct StirlingCoefficients {
  double A = 0.0;
  double B = 0.0;
};

/// [n]_q = (1 - q^n)/(1 - q), with the value n at q = 1.
double q_integer(std::int64_t n, double q);

/// ln [n]_q for a deformation given through ln q (<= 0).
double log_q_integer_lq(std::int64_t n, double log_q);

/// ln [n]_q! = sum_{k<=n} ln [k]_q.
double log_q_factorial(std::int64_t n, double q);
double log_q_factorial_lq(std::int64_t n, double log_q);

/// ln {n}! = ln([n]_q!/n!), summed term by term. {0}! = 1.
double log_q_factorial_ratio_lq(std::int64_t n, double log_q);

/// A(beta) = int_0^1 ln((1 - e^{-beta y})/(beta y)) dy and
/// B(beta) = beta/2 + ln((1 - e^{-beta})/beta)/2.
StirlingCoefficients stirling_coefficients(double beta);

/// A(beta) alone (used heavily by the four-square rates).
double stirling_A(double beta);

/// R_n(beta) = ln([n]!/n!) - n A(beta) - B(beta) at q = exp(-beta/n).
double q_stirling_remainder(std::int64_t n, double beta);

/// ln q validated for q in (0, 1].
double checked_log_q(double q);

}  // namespace probwb
