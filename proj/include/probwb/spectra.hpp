#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "probwb/kacwalk.hpp"
#include "probwb/rng.hpp"

namespace probwb {

/// Empirical spectral distribution of a list of real eigenvalues.
class Esd {
 public:
  Esd() = default;
  explicit Esd(std::vector<double> eigenvalues);

  /// Mean of several ESDs (same size or not): the ESD of the pooled multiset
  /// with each source weighted equally.
  static Esd mean_of(const std::vector<Esd>& parts);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  /// F(x) = weight of eigenvalues <= x.
  double cdf(double x) const;
  /// F(x-) = weight of eigenvalues < x.
  double cdf_left(double x) const;

 private:
  std::vector<double> values_;
  std::vector<double> cum_;  // cum_[i] = weight of values_[0..i]
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Sorted eigenvalues of a Hermitian matrix; throws on non-Hermitian input.
template <typename Scalar>
std::vector<double> hermitian_eigenvalues(const DenseMatrix<Scalar>& A);

/// sup_x |F(x) - G(x)| over both one-sided limits at every jump point.
double kolmogorov_distance(const Esd& F, const Esd& G);
double kolmogorov_distance(const Esd& F, const std::function<double(double)>& reference_cdf);

/// Numerical rank by singular values above tol * max(1, s_max).
template <typename Scalar>
Eigen::Index numerical_rank(const DenseMatrix<Scalar>& A, double tol = 1e-9);

enum class CompressionMode { Chain, Haar, SingleRotation };

struct ExceedanceRow {
  double r = 0.0;
  double empirical = 0.0;
  double envelope = 0.0;
  int trials = 0;
};

struct CompressionConfig {
  int k = 30;
  std::int64_t burn_in = -1;  // -1 means 4 n^2 ln n steps
  int trials = 500;
  std::uint64_t seed = 1;
  int threads = 1;
  CompressionMode mode = CompressionMode::Chain;
  std::vector<double> r_grid;  // empty means 0, 0.05, ..., 1
};

struct CompressionSummary {
  int n = 0, k = 0;
  std::vector<double> distances;  // per trial ||F_A - F_bar||
  std::vector<ExceedanceRow> table;
  double mean_distance = 0.0;
  double max_step_distance = 0.0;  // max over sampled steps of ||F_A - F_A'||
  double step_bound = 0.0;         // 2/k or 3/k
  int step_violations = 0;
  int rank_violations = 0;  // ||F_A - F_A'|| > rank(A - A')/k
  Esd mean_esd;
};

double kac_compression_envelope(int k, double r);
double thermostat_compression_envelope(int k, double mu, double r);

/// Conjugate G by an orthogonal matrix from Kac's walk (or an exact Haar
/// draw, or a single rotation), keep the top-left k x k block, compare ESDs.
template <typename Scalar>
CompressionSummary kac_compression_experiment(const DenseMatrix<Scalar>& G,
                                              const CompressionConfig& cfg);

/// A = S* G S with S the first k columns of a N(0, 1/beta) matrix.
/// In Chain mode the matrix is evolved by coupled steps from the identity.
template <typename Scalar>
CompressionSummary thermostat_compression_experiment(const DenseMatrix<Scalar>& G,
                                                     const ThermoParams& params,
                                                     const CompressionConfig& cfg);

/// Test matrices.
Eigen::MatrixXd diagonal_grid_matrix(int n);
Eigen::MatrixXd two_atom_matrix(int n);
Eigen::MatrixXd goe_matrix(int n, Stream& rng);
Eigen::MatrixXcd gue_matrix(int n, Stream& rng);

}  // namespace probwb
