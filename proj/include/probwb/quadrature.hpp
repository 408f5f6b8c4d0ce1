#pragma once

#include <functional>
#include <vector>

namespace probwb {

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n = 32);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int n = 16);

/// Adaptive bisection driven by the difference between one panel and its halves.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-13, int max_depth = 40);

}  // namespace probwb
