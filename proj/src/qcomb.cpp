#include "probwb/qcomb.hpp"

#include <cmath>
#include <stdexcept>

#include "probwb/quadrature.hpp"

namespace probwb {

namespace {

// ln((1 - e^{-t})/t) and its integral from 0 to T for small arguments.
double log_sinhc_term(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return -0.5 * t + t2 / 24.0 - t2 * t2 / 2880.0;
  }
  return std::log(-std::expm1(-t) / t);
}

double log_sinhc_integral_series(double T) {
  const double T2 = T * T, T3 = T2 * T, T5 = T3 * T2, T7 = T5 * T2;
  return -T2 / 4.0 + T3 / 72.0 - T5 / 14400.0 + T7 / 1451520.0;
}

struct Neumaier {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

QParams QParams::from_beta(std::int64_t n, double beta) {
  if (n < 1) throw std::domain_error("QParams: n must be >= 1");
  QParams p;
  p.n = n;
  p.beta = beta;
  p.log_q = -beta / static_cast<double>(n);
  p.q = std::exp(p.log_q);
  if (!(p.q > 0.0 && p.q <= 1.0)) throw std::domain_error("QParams: q outside (0,1]");
  return p;
}

QParams QParams::from_q(std::int64_t n, double q) {
  if (n < 1) throw std::domain_error("QParams: n must be >= 1");
  QParams p;
  p.n = n;
  p.q = q;
  p.log_q = checked_log_q(q);
  p.beta = -p.log_q * static_cast<double>(n);
  return p;
}

double checked_log_q(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("q must lie in (0,1]");
  return std::log1p(q - 1.0);
}

double q_integer(std::int64_t n, double q) {
  if (n < 1) throw std::domain_error("q_integer: n must be >= 1");
  const double lq = checked_log_q(q);
  if (lq == 0.0) return static_cast<double>(n);
  return std::expm1(static_cast<double>(n) * lq) / std::expm1(lq);
}

double log_q_integer_lq(std::int64_t n, double log_q) {
  if (n < 1) throw std::domain_error("log_q_integer: n must be >= 1");
  if (log_q == 0.0) return std::log(static_cast<double>(n));
  return std::log(std::expm1(static_cast<double>(n) * log_q) / std::expm1(log_q));
}

double log_q_factorial_lq(std::int64_t n, double log_q) {
  if (n < 0) throw std::domain_error("log_q_factorial: n must be >= 0");
  if (log_q == 0.0) return std::lgamma(static_cast<double>(n) + 1.0);
  Neumaier s;
  for (std::int64_t k = 2; k <= n; ++k) s.add(log_q_integer_lq(k, log_q));
  return s.value();
}

double log_q_factorial(std::int64_t n, double q) {
  if (n < 1) throw std::domain_error("log_q_factorial: n must be >= 1");
  return log_q_factorial_lq(n, checked_log_q(q));
}

double log_q_factorial_ratio_lq(std::int64_t n, double log_q) {
  if (n < 0) throw std::domain_error("log_q_factorial_ratio: n must be >= 0");
  if (log_q == 0.0) return 0.0;
  const double d = std::expm1(log_q);
  Neumaier s;
  for (std::int64_t k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    s.add(std::log(std::expm1(kd * log_q) / (kd * d)));
  }
  return s.value();
}

double stirling_A(double beta) {
  if (beta == 0.0) return 0.0;
  constexpr double delta = 1e-3;
  if (std::abs(beta * delta) > 0.05)
    return integrate_adaptive([beta](double y) { return log_sinhc_term(beta * y); }, 0.0, 1.0,
                              1e-15);
  const double head = log_sinhc_integral_series(beta * delta) / beta;
  const double tail = integrate_adaptive([beta](double y) { return log_sinhc_term(beta * y); },
                                         delta, 1.0, 1e-15);
  return head + tail;
}

StirlingCoefficients stirling_coefficients(double beta) {
  if (beta == 0.0) return {};
  StirlingCoefficients c;
  c.A = stirling_A(beta);
  c.B = 0.5 * beta + 0.5 * log_sinhc_term(beta);
  return c;
}

double q_stirling_remainder(std::int64_t n, double beta) {
  if (n < 1) throw std::domain_error("q_stirling_remainder: n must be >= 1");
  if (beta == 0.0) return 0.0;
  const double lq = -beta / static_cast<double>(n);
  const StirlingCoefficients c = stirling_coefficients(beta);
  return log_q_factorial_ratio_lq(n, lq) - static_cast<double>(n) * c.A - c.B;
}

}  // namespace probwb
