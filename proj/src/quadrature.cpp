#include "probwb/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace probwb {

namespace {

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = integrate_gl(f, a, m, 16);
  const double right = integrate_gl(f, m, b, 16);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive_step(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int n) {
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) s += integrate_gl(f, a + p * h, a + (p + 1) * h, n);
  return s;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  return adaptive_step(f, a, b, integrate_gl(f, a, b, 16), abs_tol, max_depth);
}

}  // namespace probwb
