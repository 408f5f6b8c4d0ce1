#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "probwb/ginibre.hpp"
#include "probwb/quadrature.hpp"

namespace probwb {

namespace {

constexpr double kPi = std::numbers::pi;

void check_args(int N, double r) {
  if (N < 3) throw std::domain_error("adiabatic: N must be >= 3");
  if (!(r > 0.0)) throw std::domain_error("adiabatic: r must be positive");
}

}  // namespace

double adiabatic_eigenvalue(int N, double r, int n, int sign) {
  const double a = static_cast<double>(n + 1) / N;
  const double disc = std::sqrt((a - r * r) * (a - r * r) + 4.0 * r * r / N);
  if (sign > 0) return 0.5 * N * (r * r + a + disc);
  // product of the roots is N n r^2
  const double plus = 0.5 * N * (r * r + a + disc);
  return static_cast<double>(N) * n * r * r / plus;
}

AdiabaticTerms adiabatic_main_term(int N, double r) {
  check_args(N, r);
  AdiabaticTerms t;
  for (int n = 0; n <= N - 2; ++n) t.log_lambda_product += std::log(adiabatic_eigenvalue(N, r, n, +1));
  t.w0_e2 = 1.0 / (adiabatic_eigenvalue(N, r, 0, +1) - adiabatic_eigenvalue(N, r, 0, -1));
  t.e2_v = adiabatic_eigenvalue(N, r, N - 2, +1);
  for (int n = 0; n <= N - 3; ++n) {
    const double lp = adiabatic_eigenvalue(N, r, n + 1, +1), lm = adiabatic_eigenvalue(N, r, n + 1, -1);
    t.log_inner_product += std::log((adiabatic_eigenvalue(N, r, n, +1) - lm) / (lp - lm));
  }
  t.log_main = t.log_lambda_product + std::log(t.w0_e2) + std::log(t.e2_v) + t.log_inner_product;
  const double lN = std::log(static_cast<double>(N));
  t.log_asymptotic = 1.0 + 0.5 * lN + (N - 1) * lN - N * (1.0 - r * r);
  t.ratio = std::exp(t.log_main - t.log_asymptotic);
  return t;
}

double log_transfer_product(int N, double r) {
  check_args(N, r);
  // e_2^* A_{N-2} ... A_0 e_2 = D_{N-1} = (N-1)! e^x Q(N, x)
  const double x = N * r * r;
  return std::lgamma(static_cast<double>(N)) + x + log_gamma_q(N, x);
}

double implied_p_constant(int N, double r) {
  const AdiabaticTerms t = adiabatic_main_term(N, r);
  const double lN = std::log(static_cast<double>(N));
  const double log_pi_r1 = log_gamma_q(N, N * r * r);
  return std::exp(log_pi_r1 + 0.5 * std::log(2.0 * kPi * N) + (N - 1) * lN - N * (1.0 - r * r) -
                  t.log_main);
}

double perturbation_series(int K_max, double cutoff) {
  if (K_max < 0) throw std::domain_error("perturbation_series: K_max must be >= 0");
  if (!(cutoff > 0.0)) throw std::domain_error("perturbation_series: cutoff must be positive");
  if (K_max == 0) return 1.0;
  auto f = [](double a, double b) {
    return std::exp(std::sinh(2.0 * a) - std::sinh(2.0 * b)) / (std::cosh(a) * std::cosh(b));
  };
  const int M = 4000;
  const double h = 2.0 * cutoff / M;
  std::vector<double> xs(M + 1);
  for (int i = 0; i <= M; ++i) xs[i] = -cutoff + i * h;
  // cum[i] = mass of the previous chain with last point below xs[i]
  std::vector<double> cum(M + 1, 1.0);
  auto interp = [&](double a) {
    const double u = (a + cutoff) / h;
    const int i = std::min(M - 1, std::max(0, static_cast<int>(u)));
    const double w = u - i;
    return (1.0 - w) * cum[i] + w * cum[i + 1];
  };
  double series = 1.0, sign = 1.0;
  std::vector<double> dens(M + 1);
  for (int K = 1; K <= K_max; ++K) {
    for (int i = 0; i <= M; ++i) {
      const double b = xs[i];
      if (i == 0) {
        dens[i] = 0.0;
        continue;
      }
      dens[i] = integrate_adaptive([&](double a) { return f(a, b) * interp(a); }, -cutoff, b, 1e-12);
    }
    std::vector<double> next(M + 1, 0.0);
    for (int i = 1; i <= M; ++i) next[i] = next[i - 1] + 0.5 * h * (dens[i - 1] + dens[i]);
    cum = std::move(next);
    sign = -sign;
    series += sign * cum[M];
  }
  return series;
}

}  // namespace probwb
