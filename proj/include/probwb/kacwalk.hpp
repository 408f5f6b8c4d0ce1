#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "probwb/rng.hpp"

namespace probwb {

struct ThermoParams {
  double beta = 1.0;    // inverse variance of the bath
  double mu = 1.0;      // thermostat rate
  double lambda = 0.0;  // Kac rate
};

/// Left multiplication by R_ij(theta): rows i and j become
/// (cos t row_i + sin t row_j, -sin t row_i + cos t row_j).
template <typename Derived>
void apply_rotation(Eigen::MatrixBase<Derived>& G, Eigen::Index i, Eigen::Index j, double theta) {
  if (i == j) throw std::out_of_range("apply_rotation: i == j");
  if (i < 0 || j < 0 || i >= G.rows() || j >= G.rows())
    throw std::out_of_range("apply_rotation: index outside matrix");
  using Scalar = typename Derived::Scalar;
  const double c = std::cos(theta), s = std::sin(theta);
  const auto ri = G.row(i).eval();
  G.row(i) = Scalar(c) * ri + Scalar(s) * G.row(j);
  G.row(j) = Scalar(-s) * ri + Scalar(c) * G.row(j);
}

struct KacMove {
  Eigen::Index i = 0, j = 1;
  double theta = 0.0;
};

/// Uniform pair i < j and theta uniform on (-pi, pi].
KacMove draw_kac_move(Eigen::Index n, Stream& rng);

template <typename Derived>
KacMove kac_step(Eigen::MatrixBase<Derived>& G, Stream& rng) {
  const KacMove mv = draw_kac_move(G.rows(), rng);
  apply_rotation(G, mv.i, mv.j, mv.theta);
  return mv;
}

/// Column j uniform, theta uniform, omega ~ N(0, 1/beta)^n;
/// column j becomes cos(theta) g_j + sin(theta) omega. Returns j.
Eigen::Index thermostat_step(Eigen::MatrixXd& G, const ThermoParams& params, Stream& rng);

enum class CoupledMove { Kac, Thermostat };

/// Kac step with probability lambda/(lambda+mu), otherwise a thermostat step.
CoupledMove coupled_step(Eigen::MatrixXd& G, const ThermoParams& params, Stream& rng);

Eigen::MatrixXd sample_gaussian_matrix(Eigen::Index n, double beta, Stream& rng);
Eigen::MatrixXd sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double beta,
                                       Stream& rng);

/// Haar element of SO(n): QR of a Gaussian matrix with R's diagonal made
/// positive, then one column flipped if needed so det = +1.
Eigen::MatrixXd sample_haar_orthogonal(Eigen::Index n, Stream& rng);

/// (n+2)/(2(n-1)n).
double kac_spectral_gap(int n);

/// mu/(2n).
double thermostat_spectral_gap(int n, double mu);

/// max |G^T G - I|.
double orthogonality_drift(const Eigen::MatrixXd& G);

/// Gram-Schmidt via QR keeping orientation.
void reorthonormalize(Eigen::MatrixXd& G);

}  // namespace probwb
