#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "probwb/ginibre.hpp"
#include "probwb/quadrature.hpp"

namespace probwb {

namespace {

constexpr double kPi = std::numbers::pi;

double log_sum_exp_add(double acc, double v) {
  if (acc == -std::numeric_limits<double>::infinity()) return v;
  if (v > acc) return v + std::log1p(std::exp(acc - v));
  return acc + std::log1p(std::exp(v - acc));
}

// Three-term recursion y_{n+1} = (c + n + shift) y_n - x n y_{n-1}, run in a
// rescaled form; returns ln y_m.
double log_three_term(int m, double x, double c_const, bool coefficient_uses_x, double shift,
                      double y0, double y1) {
  if (m == 0) return std::log(y0);
  double prev = y0, cur = y1, log_scale = 0.0;
  for (int n = 1; n < m; ++n) {
    const double coef = (coefficient_uses_x ? x : c_const) + n + shift;
    const double next = coef * cur - x * n * prev;
    prev = cur;
    cur = next;
    const double a = std::abs(cur);
    if (a > 1e200 || (a < 1e-200 && a > 0.0)) {
      const double s = std::log(a);
      prev /= a;
      cur /= a;
      log_scale += s;
    }
  }
  return log_scale + std::log(cur);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

cplx normal_cdf_complex(cplx v) {
  // Phi(v) = (2 pi)^{-1/2} e^{-v^2/2} int_0^inf e^{-x^2/2 + v x} dx
  const double hi = std::max(0.0, v.real()) + 14.0;
  const int panels = static_cast<int>(std::ceil(hi * (1.0 + std::abs(v.imag())) * 2.0)) + 8;
  const double h = hi / panels;
  const GaussRule& g = gauss_legendre(16);
  cplx s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (int i = 0; i < 16; ++i) {
      const double x = a + 0.5 * h * (g.nodes[i] + 1.0);
      s += 0.5 * h * g.weights[i] * std::exp(-0.5 * x * x + v * x - 0.5 * v * v);
    }
  }
  return s / std::sqrt(2.0 * kPi);
}

double log_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("log_gamma_q: a must be positive");
  if (x < 0.0) throw std::domain_error("log_gamma_q: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // P(a,x) = e^{-x} x^a / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k))
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 1000000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    const double logP = -x + a * std::log(x) - std::lgamma(a + 1.0) + std::log(sum);
    const double P = std::exp(logP);
    return P > 0.5 ? std::log(-std::expm1(logP)) : std::log1p(-P);
  }
  // Modified Lentz continued fraction for Q.
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 1000000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

double log_exp_partial_sum(int N, double x) {
  if (N < 1) throw std::domain_error("log_exp_partial_sum: N must be >= 1");
  if (x == 0.0) return 0.0;
  return x + log_gamma_q(static_cast<double>(N), x);
}

double log_weighted_exp_partial_sum(int N, double x) {
  if (N < 1) throw std::domain_error("log_weighted_exp_partial_sum: N must be >= 1");
  if (x == 0.0) return std::log(static_cast<double>(N));
  const double lx = std::log(x);
  const double peak = std::min(x, static_cast<double>(N - 1));
  const double width = 12.0 * std::sqrt(x + 1.0) + 40.0;
  const int lo = std::max(0, static_cast<int>(std::floor(peak - width)));
  const int hi = std::min(N - 1, static_cast<int>(std::ceil(peak + width)));
  double acc = -std::numeric_limits<double>::infinity();
  for (int n = lo; n <= hi; ++n)
    acc = log_sum_exp_add(acc, n * lx - std::lgamma(n + 1.0) + std::log(static_cast<double>(N - n)));
  return acc;
}

double r1_density(int N, cplx z, DensityMethod method) {
  if (N < 1) throw std::domain_error("r1_density: N must be >= 1");
  const double x = N * std::norm(z);
  if (method == DensityMethod::ClosedForm) return std::exp(log_gamma_q(N, x)) / kPi;
  // D_0 = 1, D_1 = 1 + x, D_{n+1} = (x + n + 1) D_n - n x D_{n-1}
  const double logD = log_three_term(N - 1, x, 0.0, true, 1.0, 1.0, 1.0 + x);
  return std::exp(std::log(static_cast<double>(N)) - std::lgamma(N + 1.0) - x + logD) / kPi;
}

double o1_density(int N, cplx z, DensityMethod method) {
  if (N < 2) throw std::domain_error("o1_density: N must be >= 2");
  const double x = N * std::norm(z);
  if (method == DensityMethod::ClosedForm)
    return std::exp(-x + log_weighted_exp_partial_sum(N, x)) / kPi;
  // G_0 = 1, G_1 = 2 + x, G_{n+1} = (x + n + 2) G_n - n x G_{n-1}
  const double logG = log_three_term(N - 1, x, 0.0, true, 2.0, 1.0, 2.0 + x);
  return std::exp(std::log(static_cast<double>(N)) - std::lgamma(N + 1.0) - x + logG) / kPi;
}

O1RecursionReport o1_recursion_report(int N, cplx z) {
  const double x = N * std::norm(z);
  O1RecursionReport r;
  r.closed_form = o1_density(N, z, DensityMethod::ClosedForm);
  const double pre = std::log(static_cast<double>(N)) - std::lgamma(N + 1.0) - x;
  r.constant_coefficient =
      std::exp(pre + log_three_term(N - 1, x, static_cast<double>(N), false, 2.0, 1.0, 2.0 + x)) /
      kPi;
  r.x_coefficient = std::exp(pre + log_three_term(N - 1, x, 0.0, true, 2.0, 1.0, 2.0 + x)) / kPi;
  r.constant_rel_error = std::abs(r.constant_coefficient / r.closed_form - 1.0);
  r.x_rel_error = std::abs(r.x_coefficient / r.closed_form - 1.0);
  return r;
}

EdgeValue edge_scaling(int N, double u, EdgeQuantity which) {
  const double rad = 1.0 - u / std::sqrt(static_cast<double>(N));
  EdgeValue e;
  if (which == EdgeQuantity::R1) {
    e.finite_n = r1_density(N, cplx(rad, 0.0));
    e.limit = normal_cdf(2.0 * u) / kPi;
  } else {
    e.finite_n = o1_density(N, cplx(rad, 0.0));
    e.limit = std::sqrt(static_cast<double>(N)) / kPi *
              (normal_pdf(2.0 * u) + 2.0 * u * normal_cdf(2.0 * u));
  }
  return e;
}

double o1_edge_profile_alternate(int N, double u) {
  return std::sqrt(static_cast<double>(N)) / kPi *
         (std::exp(-2.0 * u * u) / std::sqrt(2.0 * kPi) - 2.0 * u * normal_cdf(-2.0 * u));
}

PairDensity r2_density(int N, cplx z1, cplx z2) {
  if (N < 2) throw std::domain_error("r2_density: N must be >= 2");
  const double x1 = N * std::norm(z1), x2 = N * std::norm(z2);
  const cplx w = static_cast<double>(N) * z1 * std::conj(z2);
  const double aw = std::abs(w);
  cplx s = 0.0;
  if (aw == 0.0) {
    s = 1.0;
  } else {
    const double law = std::log(aw), th = std::arg(w);
    for (int n = 0; n < N; ++n) {
      const double lm = n * law - std::lgamma(n + 1.0) - aw;
      if (lm < -745.0) continue;
      s += std::polar(std::exp(lm), n * th);
    }
  }
  // |K_N(w)|^2 e^{-x1-x2} = |s|^2 e^{2|w| - x1 - x2}
  const double k12 = std::norm(s) * std::exp(2.0 * aw - x1 - x2);
  const double r1a = r1_density(N, z1), r1b = r1_density(N, z2);
  PairDensity out;
  out.c2 = -k12 / (kPi * kPi);
  out.r2 = r1a * r1b + out.c2;
  return out;
}

double c2_edge_limit(cplx u1, cplx u2) {
  const cplx phi = normal_cdf_complex(u1 + std::conj(u2));
  return -std::exp(-std::norm(u1 - u2)) * std::norm(phi) / (kPi * kPi);
}

}  // namespace probwb
