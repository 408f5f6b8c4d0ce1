#include "probwb/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "probwb/parallel.hpp"

namespace probwb {

namespace {

template <typename Scalar>
double conj_diff(Scalar a, Scalar b) {
  return std::abs(a - std::conj(b));
}

}  // namespace

Esd::Esd(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
  std::sort(values_.begin(), values_.end());
  cum_.resize(values_.size());
  const double w = values_.empty() ? 0.0 : 1.0 / static_cast<double>(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) cum_[i] = (i + 1) * w;
  if (!cum_.empty()) cum_.back() = 1.0;
}

Esd Esd::mean_of(const std::vector<Esd>& parts) {
  std::vector<std::pair<double, double>> pts;
  for (const Esd& e : parts) {
    const double w = 1.0 / (static_cast<double>(parts.size()) * e.size());
    for (double v : e.values_) pts.emplace_back(v, w);
  }
  std::sort(pts.begin(), pts.end());
  Esd out;
  out.values_.reserve(pts.size());
  out.cum_.reserve(pts.size());
  double acc = 0.0;
  for (const auto& [v, w] : pts) {
    acc += w;
    out.values_.push_back(v);
    out.cum_.push_back(acc);
  }
  if (!out.cum_.empty()) out.cum_.back() = 1.0;
  return out;
}

double Esd::cdf(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double Esd::cdf_left(double x) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double kolmogorov_distance(const Esd& F, const Esd& G) {
  double d = 0.0;
  auto probe = [&](double t) {
    d = std::max(d, std::abs(F.cdf(t) - G.cdf(t)));
    d = std::max(d, std::abs(F.cdf_left(t) - G.cdf_left(t)));
  };
  for (double t : F.values()) probe(t);
  for (double t : G.values()) probe(t);
  return d;
}

double kolmogorov_distance(const Esd& F, const std::function<double(double)>& reference_cdf) {
  double d = 0.0;
  for (double t : F.values()) {
    const double g = reference_cdf(t);
    d = std::max({d, std::abs(F.cdf(t) - g), std::abs(F.cdf_left(t) - g)});
  }
  return d;
}

template <typename Scalar>
std::vector<double> hermitian_eigenvalues(const DenseMatrix<Scalar>& A) {
  if (A.rows() != A.cols()) throw std::domain_error("hermitian_eigenvalues: matrix not square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = i; j < A.cols(); ++j)
      if (conj_diff(A(i, j), A(j, i)) > 1e-12 * scale)
        throw std::domain_error("hermitian_eigenvalues: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: no convergence");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + A.rows());
  std::sort(ev.begin(), ev.end());
  return ev;
}

template <typename Scalar>
Eigen::Index numerical_rank(const DenseMatrix<Scalar>& A, double tol) {
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = tol * std::max(1.0, s(0));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut ? 1 : 0;
  return r;
}

double kac_compression_envelope(int k, double r) {
  return 12.0 * std::sqrt(static_cast<double>(k)) * std::exp(-r * std::sqrt(k / 32.0));
}

double thermostat_compression_envelope(int k, double mu, double r) {
  return 12.0 * std::sqrt(static_cast<double>(k)) * std::exp(-r * std::sqrt(k * mu / 108.0));
}

namespace {

template <typename Scalar>
DenseMatrix<Scalar> symmetrize(const DenseMatrix<Scalar>& A) {
  return (A + A.adjoint()) * Scalar(0.5);
}

struct TrialRecord {
  Esd esd;
  double step_distance = 0.0;
  Eigen::Index step_rank = 0;
};

void finish_summary(CompressionSummary& out, std::vector<TrialRecord>& recs,
                    const CompressionConfig& cfg,
                    const std::function<double(double)>& envelope) {
  std::vector<Esd> esds;
  esds.reserve(recs.size());
  for (auto& r : recs) esds.push_back(r.esd);
  out.mean_esd = Esd::mean_of(esds);
  out.distances.resize(recs.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < recs.size(); ++t) {
    out.distances[t] = kolmogorov_distance(recs[t].esd, out.mean_esd);
    sum += out.distances[t];
    out.max_step_distance = std::max(out.max_step_distance, recs[t].step_distance);
    if (recs[t].step_distance > out.step_bound + 1e-12) ++out.step_violations;
    if (recs[t].step_distance > static_cast<double>(recs[t].step_rank) / cfg.k + 1e-12)
      ++out.rank_violations;
  }
  out.mean_distance = sum / static_cast<double>(recs.size());
  std::vector<double> grid = cfg.r_grid;
  if (grid.empty())
    for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
  const double offset = 1.0 / std::sqrt(static_cast<double>(cfg.k));
  for (double r : grid) {
    int hits = 0;
    for (double d : out.distances) hits += d >= offset + r ? 1 : 0;
    out.table.push_back({r, static_cast<double>(hits) / recs.size(), envelope(r),
                         static_cast<int>(recs.size())});
  }
}

}  // namespace

template <typename Scalar>
CompressionSummary kac_compression_experiment(const DenseMatrix<Scalar>& G,
                                              const CompressionConfig& cfg) {
  const int n = static_cast<int>(G.rows());
  if (cfg.k < 1 || cfg.k > n) throw std::length_error("kac_compression: need 1 <= k <= n");
  if (cfg.trials < 1) throw std::length_error("kac_compression: trials must be positive");
  const std::int64_t burn =
      cfg.burn_in >= 0 ? cfg.burn_in
                       : static_cast<std::int64_t>(4.0 * n * n * std::log(std::max(2, n)));
  std::vector<TrialRecord> recs(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(t));
    Eigen::MatrixXd O;
    switch (cfg.mode) {
      case CompressionMode::Haar:
        O = sample_haar_orthogonal(n, rng);
        break;
      case CompressionMode::SingleRotation:
        O = Eigen::MatrixXd::Identity(n, n);
        kac_step(O, rng);
        break;
      case CompressionMode::Chain:
        O = Eigen::MatrixXd::Identity(n, n);
        for (std::int64_t s = 0; s < burn; ++s) kac_step(O, rng);
        break;
    }
    auto compress = [&](const Eigen::MatrixXd& Q) {
      const DenseMatrix<Scalar> P = Q.topRows(cfg.k).template cast<Scalar>();
      return symmetrize<Scalar>(P * G * P.adjoint());
    };
    const DenseMatrix<Scalar> A = compress(O);
    kac_step(O, rng);
    const DenseMatrix<Scalar> A2 = compress(O);
    recs[t].esd = Esd(hermitian_eigenvalues<Scalar>(A));
    recs[t].step_distance = kolmogorov_distance(recs[t].esd, Esd(hermitian_eigenvalues<Scalar>(A2)));
    recs[t].step_rank = numerical_rank<Scalar>(A - A2);
  });
  CompressionSummary out;
  out.n = n;
  out.k = cfg.k;
  out.step_bound = 2.0 / cfg.k;
  finish_summary(out, recs, cfg, [&](double r) { return kac_compression_envelope(cfg.k, r); });
  return out;
}

template <typename Scalar>
CompressionSummary thermostat_compression_experiment(const DenseMatrix<Scalar>& G,
                                                     const ThermoParams& params,
                                                     const CompressionConfig& cfg) {
  const int n = static_cast<int>(G.rows());
  if (cfg.k < 1 || cfg.k > n) throw std::length_error("thermostat_compression: need 1 <= k <= n");
  if (cfg.trials < 1) throw std::length_error("thermostat_compression: trials must be positive");
  if (!(params.beta > 0.0 && params.mu > 0.0))
    throw std::domain_error("thermostat_compression: beta and mu must be positive");
  const std::int64_t burn =
      cfg.burn_in >= 0 ? cfg.burn_in
                       : static_cast<std::int64_t>(4.0 * n * std::log(std::max(2, n)) *
                                                   (params.lambda + params.mu) / params.mu);
  std::vector<TrialRecord> recs(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(t));
    Eigen::MatrixXd M;
    if (cfg.mode == CompressionMode::Chain) {
      M = Eigen::MatrixXd::Identity(n, n);
      for (std::int64_t s = 0; s < burn; ++s) coupled_step(M, params, rng);
    } else {
      M = sample_gaussian_matrix(n, params.beta, rng);
    }
    auto compress = [&](const Eigen::MatrixXd& Mm) {
      const DenseMatrix<Scalar> S = Mm.leftCols(cfg.k).template cast<Scalar>();
      return symmetrize<Scalar>(S.adjoint() * G * S);
    };
    const DenseMatrix<Scalar> A = compress(M);
    ThermoParams step = params;
    if (!(step.lambda > 0.0)) step.lambda = step.mu;
    coupled_step(M, step, rng);
    const DenseMatrix<Scalar> A2 = compress(M);
    recs[t].esd = Esd(hermitian_eigenvalues<Scalar>(A));
    recs[t].step_distance = kolmogorov_distance(recs[t].esd, Esd(hermitian_eigenvalues<Scalar>(A2)));
    recs[t].step_rank = numerical_rank<Scalar>(A - A2);
  });
  CompressionSummary out;
  out.n = n;
  out.k = cfg.k;
  out.step_bound = 3.0 / cfg.k;
  finish_summary(out, recs, cfg,
                 [&](double r) { return thermostat_compression_envelope(cfg.k, params.mu, r); });
  return out;
}

Eigen::MatrixXd diagonal_grid_matrix(int n) {
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1.0);
  return d.asDiagonal();
}

Eigen::MatrixXd two_atom_matrix(int n) {
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = i < n / 2 ? -1.0 : 1.0;
  return d.asDiagonal();
}

Eigen::MatrixXd goe_matrix(int n, Stream& rng) {
  const Eigen::MatrixXd X = sample_gaussian_matrix(n, 1.0, rng);
  return (X + X.transpose()) / std::sqrt(2.0 * n);
}

Eigen::MatrixXcd gue_matrix(int n, Stream& rng) {
  Eigen::MatrixXcd X(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) X(r, c) = std::complex<double>(rng.normal(), rng.normal());
  return (X + X.adjoint()) / std::sqrt(4.0 * n);
}

template std::vector<double> hermitian_eigenvalues<double>(const DenseMatrix<double>&);
template std::vector<double> hermitian_eigenvalues<std::complex<double>>(
    const DenseMatrix<std::complex<double>>&);
template Eigen::Index numerical_rank<double>(const DenseMatrix<double>&, double);
template Eigen::Index numerical_rank<std::complex<double>>(const DenseMatrix<std::complex<double>>&,
                                                           double);
template CompressionSummary kac_compression_experiment<double>(const DenseMatrix<double>&,
                                                               const CompressionConfig&);
template CompressionSummary kac_compression_experiment<std::complex<double>>(
    const DenseMatrix<std::complex<double>>&, const CompressionConfig&);
template CompressionSummary thermostat_compression_experiment<double>(const DenseMatrix<double>&,
                                                                      const ThermoParams&,
                                                                      const CompressionConfig&);
template CompressionSummary thermostat_compression_experiment<std::complex<double>>(
    const DenseMatrix<std::complex<double>>&, const ThermoParams&, const CompressionConfig&);

}  // namespace probwb
