#include "probwb/kacwalk.hpp"

namespace probwb {

KacMove draw_kac_move(Eigen::Index n, Stream& rng) {
  if (n < 2) throw std::domain_error("kac_step: n must be >= 2");
  const auto nn = static_cast<std::uint64_t>(n);
  const std::uint64_t pairs = nn * (nn - 1) / 2;
  std::uint64_t p = rng.below(pairs);
  KacMove mv;
  Eigen::Index i = 0;
  std::uint64_t row = nn - 1;
  while (p >= row) {
    p -= row;
    ++i;
    --row;
  }
  mv.i = i;
  mv.j = i + 1 + static_cast<Eigen::Index>(p);
  mv.theta = rng.angle();
  return mv;
}

Eigen::Index thermostat_step(Eigen::MatrixXd& G, const ThermoParams& params, Stream& rng) {
  if (!(params.beta > 0.0)) throw std::domain_error("thermostat_step: beta must be positive");
  const Eigen::Index j = static_cast<Eigen::Index>(rng.below(G.cols()));
  const double theta = rng.angle();
  const double c = std::cos(theta), s = std::sin(theta);
  const double sd = 1.0 / std::sqrt(params.beta);
  for (Eigen::Index i = 0; i < G.rows(); ++i) G(i, j) = c * G(i, j) + s * sd * rng.normal();
  return j;
}

CoupledMove coupled_step(Eigen::MatrixXd& G, const ThermoParams& params, Stream& rng) {
  const double total = params.lambda + params.mu;
  if (!(total > 0.0)) throw std::domain_error("coupled_step: lambda + mu must be positive");
  if (rng.uniform() * total < params.lambda) {
    kac_step(G, rng);
    return CoupledMove::Kac;
  }
  thermostat_step(G, params, rng);
  return CoupledMove::Thermostat;
}

Eigen::MatrixXd sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double beta,
                                       Stream& rng) {
  if (!(beta > 0.0)) throw std::domain_error("sample_gaussian_matrix: beta must be positive");
  const double sd = 1.0 / std::sqrt(beta);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) M(r, c) = sd * rng.normal();
  return M;
}

Eigen::MatrixXd sample_gaussian_matrix(Eigen::Index n, double beta, Stream& rng) {
  return sample_gaussian_matrix(n, n, beta, rng);
}

Eigen::MatrixXd sample_haar_orthogonal(Eigen::Index n, Stream& rng) {
  const Eigen::MatrixXd Z = sample_gaussian_matrix(n, 1.0, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k)
    if (R(k, k) < 0) Q.col(k) *= -1.0;
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

double kac_spectral_gap(int n) {
  if (n < 2) throw std::domain_error("kac_spectral_gap: n must be >= 2");
  return (n + 2.0) / (2.0 * (n - 1.0) * n);
}

double thermostat_spectral_gap(int n, double mu) { return mu / (2.0 * n); }

double orthogonality_drift(const Eigen::MatrixXd& G) {
  return (G.transpose() * G - Eigen::MatrixXd::Identity(G.cols(), G.cols())).cwiseAbs().maxCoeff();
}

void reorthonormalize(Eigen::MatrixXd& G) {
  const Eigen::Index n = G.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(G.rows(), n);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k)
    if (R(k, k) < 0) Q.col(k) *= -1.0;
  G = Q;
}

}  // namespace probwb
