#include "probwb/foursquare.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "probwb/qcomb.hpp"

namespace probwb {

namespace {

std::array<std::int64_t, 4> pair_sums(const std::array<std::int64_t, 4>& n) {
  return {n[0] + n[1], n[0] + n[2], n[1] + n[3], n[2] + n[3]};
}

std::array<double, 4> pair_sums(const std::array<double, 4>& v) {
  return {v[0] + v[1], v[0] + v[2], v[1] + v[3], v[2] + v[3]};
}

void check_nu(const std::array<double, 4>& nu) {
  double s = 0.0;
  for (double v : nu) {
    if (!(v > 0.0)) throw std::domain_error("four-square: every nu_ij must be positive");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw std::domain_error("four-square: nu must sum to 1");
}

}  // namespace

void QuadrantCounts::validate() const {
  for (auto v : n)
    if (v < 0) throw std::domain_error("QuadrantCounts: negative count");
  double s = 0.0;
  for (double v : p) {
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("QuadrantCounts: area outside (0,1)");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw std::domain_error("QuadrantCounts: areas must sum to 1");
  if (total() < 1) throw std::domain_error("QuadrantCounts: empty configuration");
}

std::array<double, 4> QuadrantCounts::areas(double s, double t) {
  if (!(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0))
    throw std::domain_error("QuadrantCounts::areas: splits must lie in (0,1)");
  return {s * t, (1.0 - s) * t, s * (1.0 - t), (1.0 - s) * (1.0 - t)};
}

double log_multinomial(const QuadrantCounts& c) {
  c.validate();
  double v = std::lgamma(static_cast<double>(c.total()) + 1.0);
  for (int i = 0; i < 4; ++i) {
    v -= std::lgamma(static_cast<double>(c.n[i]) + 1.0);
    v += static_cast<double>(c.n[i]) * std::log(c.p[i]);
  }
  return v;
}

double log_w_q_lq(const QuadrantCounts& c, double log_q) {
  c.validate();
  if (log_q > 0.0) throw std::domain_error("log_w_q: q must lie in (0,1]");
  if (log_q == 0.0) return 0.0;
  double v = 0.0;
  for (auto m : pair_sums(c.n)) v += log_q_factorial_ratio_lq(m, log_q);
  for (auto m : c.n) v -= log_q_factorial_ratio_lq(m, log_q);
  v -= log_q_factorial_ratio_lq(c.total(), log_q);
  v += static_cast<double>(c.n[1]) * static_cast<double>(c.n[2]) * log_q;
  return v;
}

double log_w_q(const QuadrantCounts& c, double q) { return log_w_q_lq(c, checked_log_q(q)); }

double log_prob_exact_lq(const QuadrantCounts& c, double log_q) {
  return log_multinomial(c) + log_w_q_lq(c, log_q);
}

double log_prob_exact(const QuadrantCounts& c, double q) {
  return log_prob_exact_lq(c, checked_log_q(q));
}

double asymptotic_rate(const std::array<double, 4>& nu, double beta) {
  check_nu(nu);
  double v = -beta * nu[1] * nu[2];
  for (double s : pair_sums(nu)) v += s * stirling_A(beta * s);
  for (double x : nu) v -= x * stirling_A(beta * x);
  return v - stirling_A(beta);
}

double a_tilde(const std::array<double, 4>& nu, double beta, const std::array<double, 4>& p,
               std::int64_t n) {
  check_nu(nu);
  if (n < 1) throw std::domain_error("a_tilde: n must be >= 1");
  const double dn = static_cast<double>(n);
  double v = std::log(dn);
  for (int i = 0; i < 4; ++i) v += nu[i] * (std::log(p[i]) - std::log(nu[i] * dn));
  return dn * (v + asymptotic_rate(nu, beta));
}

double log_prefactor(const QuadrantCounts& c) {
  c.validate();
  const double two_pi = 2.0 * std::numbers::pi;
  double v = 0.5 * std::log(two_pi * static_cast<double>(c.total()));
  for (auto m : c.n) {
    if (m < 1) throw std::domain_error("log_prefactor: empty cell");
    v -= 0.5 * std::log(two_pi * static_cast<double>(m));
  }
  return v;
}

double finite_n_residual(const QuadrantCounts& c, double beta) {
  c.validate();
  const std::int64_t n = c.total();
  const double dn = static_cast<double>(n);
  std::array<double, 4> nu{};
  for (int i = 0; i < 4; ++i) nu[i] = static_cast<double>(c.n[i]) / dn;
  const double log_q = -beta / dn;
  return log_prob_exact_lq(c, log_q) - (log_prefactor(c) + a_tilde(nu, beta, c.p, n));
}

double b_constant(const std::array<double, 4>& nu, double beta) {
  check_nu(nu);
  auto B = [](double b) { return stirling_coefficients(b).B; };
  double v = 0.0;
  for (double s : pair_sums(nu)) v += B(beta * s);
  for (double x : nu) v -= B(beta * x);
  return v - B(beta);
}

}  // namespace probwb
