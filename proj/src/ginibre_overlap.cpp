#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "probwb/ginibre.hpp"
#include "probwb/parallel.hpp"
#include "probwb/quadrature.hpp"

namespace probwb {

namespace {

constexpr double kPi = std::numbers::pi;

// Coefficients c[a][b] of conj(lambda)^a lambda^b in the bracket polynomial.
using Bracket = std::array<std::array<cplx, 3>, 3>;

Bracket bracket_coefficients(int N, cplx z1, cplx z2, bool with_correction) {
  const std::array<cplx, 3> al{std::conj(z1 * z2), -std::conj(z1 + z2), 1.0};
  const std::array<cplx, 3> be{z1 * z2, -(z1 + z2), 1.0};
  Bracket c{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) c[a][b] = al[a] * be[b];
  if (with_correction) {
    const double inv = 1.0 / N;
    c[0][0] += std::conj(z1) * z2 * inv;
    c[1][0] -= z2 * inv;
    c[0][1] -= std::conj(z1) * inv;
    c[1][1] += inv;
  }
  return c;
}

struct LogDet {
  double log_abs = 0.0;
  cplx phase = 1.0;
};

LogDet log_determinant(const Eigen::MatrixXcd& M) {
  LogDet d;
  if (M.rows() == 0) return d;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const Eigen::MatrixXcd& U = lu.matrixLU();
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    const double a = std::abs(U(i, i));
    if (a == 0.0) {
      d.log_abs = -std::numeric_limits<double>::infinity();
      d.phase = 0.0;
      return d;
    }
    d.log_abs += std::log(a);
    d.phase *= U(i, i) / a;
  }
  d.phase *= static_cast<double>(lu.permutationP().determinant());
  return d;
}

double scaling_w(double rho) {
  const double t = rho * rho;
  if (t < 1e-3) return rho * (0.5 - t / 3.0 + t * t / 8.0 - t * t * t / 30.0);
  return (-std::expm1(-t) - t * std::exp(-t)) / (t * rho);
}

cplx ipow(cplx v, int m) {
  cplx r = 1.0;
  for (int i = 0; i < m; ++i) r *= v;
  return r;
}

}  // namespace

Eigen::MatrixXcd overlap_band_matrix(int N, cplx z1, cplx z2, bool with_correction) {
  if (N < 2 || N > 40) throw std::domain_error("overlap_band_matrix: need 2 <= N <= 40");
  const Bracket c = bracket_coefficients(N, z1, z2, with_correction);
  const int M = N - 2;
  const double lN = std::log(static_cast<double>(N));
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(M, M);
  for (int j = 0; j < M; ++j)
    for (int k = std::max(0, j - 2); k <= std::min(M - 1, j + 2); ++k) {
      const double lnorm =
          0.5 * ((j + k + 6) * lN - 2.0 * std::log(kPi) - std::lgamma(j + 2.0) - std::lgamma(k + 2.0));
      cplx s = 0.0;
      for (int a = 0; a < 3; ++a) {
        const int b = j + a - k;
        if (b < 0 || b > 2) continue;
        const int m = k + b;
        s += c[a][b] * kPi * std::exp(std::lgamma(m + 1.0) - (m + 1) * lN + lnorm);
      }
      H(j, k) = s;
    }
  return H;
}

int matrix_bandwidth(const Eigen::MatrixXcd& M) {
  int bw = 0;
  for (Eigen::Index j = 0; j < M.rows(); ++j)
    for (Eigen::Index k = 0; k < M.cols(); ++k)
      if (M(j, k) != cplx(0.0, 0.0)) bw = std::max(bw, static_cast<int>(std::abs(j - k)));
  return bw;
}

cplx o2_density_exact_complex(int N, cplx z1, cplx z2) {
  const LogDet d = log_determinant(overlap_band_matrix(N, z1, z2, true));
  const double lpre = 2.0 * std::log(static_cast<double>(N)) - 2.0 * std::log(kPi) -
                      std::lgamma(N + 1.0) - N * std::norm(z1) - N * std::norm(z2);
  return -std::exp(lpre + d.log_abs) * d.phase;
}

double o2_density_exact(int N, cplx z1, cplx z2) { return o2_density_exact_complex(N, z1, z2).real(); }

double r2_density_banded(int N, cplx z1, cplx z2) {
  const LogDet d = log_determinant(overlap_band_matrix(N, z1, z2, false));
  const double lpre = 2.0 * std::log(static_cast<double>(N)) - 2.0 * std::log(kPi) -
                      std::lgamma(N + 1.0) - N * std::norm(z1) - N * std::norm(z2);
  return (std::norm(z1 - z2) * std::exp(lpre + d.log_abs) * d.phase).real();
}

cplx cm_bulk_o2_pair(cplx z1, cplx z2) {
  const double d2 = std::norm(z1 - z2);
  return -(1.0 - z1 * std::conj(z2)) / (kPi * kPi * d2 * d2);
}

double cm_bulk_o2_scaling(cplx z, cplx omega) {
  const double t = std::norm(omega);
  double g;
  if (t < 1e-3)
    g = 0.5 - t / 3.0 + t * t / 8.0 - t * t * t / 30.0;
  else
    g = (-std::expm1(-t) - t * std::exp(-t)) / (t * t);
  return -(1.0 - std::norm(z)) * g / (kPi * kPi);
}

BiorthogonalEigen biorthogonal_eigen(const Eigen::MatrixXcd& A) {
  BiorthogonalEigen e;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success) {
    e.ok = false;
    return e;
  }
  e.values = es.eigenvalues();
  e.right = es.eigenvectors();
  for (Eigen::Index k = 0; k < e.right.cols(); ++k) e.right.col(k).normalize();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(e.right);
  e.left_adj = lu.inverse();
  const double resid =
      (e.left_adj * e.right - Eigen::MatrixXcd::Identity(A.rows(), A.cols())).norm();
  e.ok = std::isfinite(resid) && resid < 1e-8;
  return e;
}

Eigen::MatrixXcd overlap_matrix(const BiorthogonalEigen& e) {
  const Eigen::MatrixXcd L = e.left_adj * e.left_adj.adjoint();  // phi_k^* phi_j
  const Eigen::MatrixXcd R = e.right.adjoint() * e.right;        // psi_j^* psi_k
  return L.cwiseProduct(R.transpose());
}

OverlapTables estimate_overlaps_mc(const OverlapMcConfig& cfg) {
  if (cfg.N < 2) throw std::domain_error("estimate_overlaps_mc: N must be >= 2");
  if (cfg.trials < 2) throw std::length_error("estimate_overlaps_mc: trials must be >= 2");
  const int N = cfg.N;
  const std::size_t nd = cfg.disks.size(), np = cfg.pairs.size(), nm = cfg.moment_powers.size();
  const std::size_t width = 3 * nd + 2 * np + nm;
  std::vector<std::vector<cplx>> rows(cfg.trials);
  std::vector<double> diag_mean(cfg.trials, 0.0), diag_min(cfg.trials, 0.0);
  std::vector<char> skipped(cfg.trials, 0);
  auto inside = [](const DiskBin& d, cplx z) { return std::abs(z - d.center) < d.radius; };
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(t));
    const Eigen::MatrixXcd A = sample_ginibre(N, rng);
    const BiorthogonalEigen e = biorthogonal_eigen(A);
    if (!e.ok) {
      skipped[t] = 1;
      return;
    }
    const Eigen::MatrixXcd O = overlap_matrix(e);
    std::vector<cplx> row(width, 0.0);
    double dsum = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < N; ++k) {
      dsum += O(k, k).real();
      dmin = std::min(dmin, O(k, k).real());
    }
    diag_mean[t] = dsum / N;
    diag_min[t] = dmin;
    std::size_t col = 0;
    for (const DiskBin& d : cfg.disks) {
      const double area = kPi * d.radius * d.radius;
      cplx o1 = 0.0, marg = 0.0;
      double r1 = 0.0;
      for (int k = 0; k < N; ++k) {
        if (!inside(d, e.values(k))) continue;
        o1 += O(k, k);
        r1 += 1.0;
        marg += O.row(k).sum();
      }
      row[col++] = o1 / (N * area);
      row[col++] = r1 / (N * area);
      row[col++] = marg / (N * area);
    }
    for (const PairBin& pb : cfg.pairs) {
      const double area = kPi * pb.first.radius * pb.first.radius * kPi * pb.second.radius *
                          pb.second.radius;
      cplx o2 = 0.0;
      double r2 = 0.0;
      for (int k = 0; k < N; ++k) {
        if (!inside(pb.first, e.values(k))) continue;
        for (int j = 0; j < N; ++j) {
          if (j == k || !inside(pb.second, e.values(j))) continue;
          o2 += O(k, j);
          r2 += 1.0;
        }
      }
      row[col++] = o2 / (N * area);
      row[col++] = r2 / (static_cast<double>(N) * N * area);
    }
    for (int p : cfg.moment_powers) {
      Eigen::VectorXcd lp(N);
      for (int k = 0; k < N; ++k) lp(k) = ipow(e.values(k), p);
      row[col++] = (lp.transpose() * O * lp.conjugate())(0, 0) / static_cast<double>(N);
    }
    rows[t] = std::move(row);
  });

  OverlapTables out;
  std::vector<cplx> mean(width, 0.0);
  std::vector<double> var_re(width, 0.0), var_im(width, 0.0);
  int used = 0;
  double dm = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    if (skipped[t]) {
      ++out.skipped;
      continue;
    }
    ++used;
    dm += diag_mean[t];
    dmin = std::min(dmin, diag_min[t]);
    for (std::size_t c = 0; c < width; ++c) mean[c] += rows[t][c];
  }
  if (used < 2) throw std::runtime_error("estimate_overlaps_mc: too many ill-conditioned samples");
  for (auto& m : mean) m /= static_cast<double>(used);
  for (int t = 0; t < cfg.trials; ++t) {
    if (skipped[t]) continue;
    for (std::size_t c = 0; c < width; ++c) {
      const cplx d = rows[t][c] - mean[c];
      var_re[c] += d.real() * d.real();
      var_im[c] += d.imag() * d.imag();
    }
  }
  auto est = [&](std::size_t c) {
    BinEstimate b;
    b.value = mean[c];
    b.stderr_re = std::sqrt(var_re[c] / (used - 1) / used);
    b.stderr_im = std::sqrt(var_im[c] / (used - 1) / used);
    return b;
  };
  std::size_t col = 0;
  for (std::size_t i = 0; i < nd; ++i) {
    out.o1.push_back(est(col++));
    out.r1.push_back(est(col++));
    out.o1_plus_o2_marginal.push_back(est(col++));
  }
  for (std::size_t i = 0; i < np; ++i) {
    out.o2.push_back(est(col++));
    out.r2.push_back(est(col++));
  }
  for (std::size_t i = 0; i < nm; ++i) out.moments.push_back(est(col++));
  out.mean_diag_overlap = dm / used;
  out.min_diag_overlap = dmin;
  return out;
}

double o1_moment_integral(int N, int p) {
  if (N < 2 || p < 0) throw std::domain_error("o1_moment_integral: need N >= 2, p >= 0");
  // N^{-p-1} int_0^inf x^p e^{-x} sum_{n<N} (N-n) x^n/n! dx
  const double upper = N + 15.0 * std::sqrt(static_cast<double>(N)) + 60.0;
  const int panels = static_cast<int>(std::ceil(upper / std::max(0.5, std::sqrt(N) / 6.0)));
  const double lN = std::log(static_cast<double>(N));
  auto f = [&](double x) {
    if (x <= 0.0) return p == 0 ? 1.0 : 0.0;
    return std::exp(p * (std::log(x) - lN) - lN - x + log_weighted_exp_partial_sum(N, x));
  };
  return integrate_composite(f, 0.0, upper, panels, 16);
}

double o2_bulk_moment_integral(int N, int p) {
  if (N < 2 || p < 0) throw std::domain_error("o2_bulk_moment_integral: need N >= 2, p >= 0");
  const GaussRule& gr = gauss_legendre(48);
  const GaussRule& gp = gauss_legendre(48);
  const GaussRule& g0 = gauss_legendre(16);
  const GaussRule& g1 = gauss_legendre(64);
  const double sN = std::sqrt(static_cast<double>(N));
  auto Fp = [&](double r, double phi, double rho) {
    const double s = rho / sN;
    const cplx u(r * r - 0.25 * s * s, -r * s * std::sin(phi));
    const cplx up = ipow(u, p);
    return (up - up * u).real();
  };
  double total = 0.0;
  for (int i = 0; i < 48; ++i) {
    const double r = 0.5 * (gr.nodes[i] + 1.0), wr = 0.5 * gr.weights[i];
    double inner_phi = 0.0;
    for (int j = 0; j < 48; ++j) {
      const double phi = 0.25 * kPi * (gp.nodes[j] + 1.0), wp = 0.25 * kPi * gp.weights[j];
      const double sphi = std::sin(phi), cphi = std::cos(phi);
      const double R = 2.0 * (std::sqrt(1.0 - r * r * sphi * sphi) - r * std::abs(cphi));
      const double U = sN * R;
      double inner = 0.0;
      const double b0 = std::min(1.0, U);
      for (int k = 0; k < 16; ++k) {
        const double rho = 0.5 * b0 * (g0.nodes[k] + 1.0);
        inner += 0.5 * b0 * g0.weights[k] * Fp(r, phi, rho) * scaling_w(rho);
      }
      if (U > 1.0) {
        const double lu = std::log(U);
        for (int k = 0; k < 64; ++k) {
          const double rho = std::exp(0.5 * lu * (g1.nodes[k] + 1.0));
          inner += 0.5 * lu * g1.weights[k] * rho * Fp(r, phi, rho) * scaling_w(rho);
        }
      }
      inner_phi += wp * inner;
    }
    total += wr * r * 4.0 * inner_phi;
  }
  return -(2.0 * N / kPi) * total;
}

double o2_log_coefficient(int p) {
  if (p < 0) throw std::domain_error("o2_log_coefficient: p must be >= 0");
  // coefficient of s^2 in u^m, u = r^2 - i r s sin(phi) - s^2/4
  auto c2 = [](int m, double r, double phi) {
    if (m == 0) return 0.0;
    const double a2 = -r * r * std::sin(phi) * std::sin(phi);
    double v = -0.25 * m * std::pow(r, 2 * (m - 1));
    if (m >= 2) v += 0.5 * m * (m - 1) * std::pow(r, 2 * (m - 2)) * a2;
    return v;
  };
  const GaussRule& g = gauss_legendre(32);
  double total = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double r = 0.5 * (g.nodes[i] + 1.0);
    double inner = 0.0;
    for (int j = 0; j < 32; ++j) {
      const double phi = kPi * (g.nodes[j] + 1.0);
      inner += kPi * g.weights[j] * (c2(p, r, phi) - c2(p + 1, r, phi));
    }
    total += 0.5 * g.weights[i] * r * inner;
  }
  return -total / kPi;
}

ConstraintReport constraint_check(int N, int p) {
  ConstraintReport c;
  c.o1_integral = o1_moment_integral(N, p);
  c.leading = static_cast<double>(N) / ((p + 1.0) * (p + 2.0));
  c.o1_excess = c.o1_integral - c.leading;
  c.o2_bulk_integral = o2_bulk_moment_integral(N, p);
  c.total_bulk = c.o1_integral + c.o2_bulk_integral;
  c.log_coefficient = o2_log_coefficient(p);
  return c;
}

ExactConstraint constraint_check_exact(int N, int p, int radial_nodes, int angular_nodes) {
  if (N < 2 || N > 40) throw std::domain_error("constraint_check_exact: need 2 <= N <= 40");
  const double rmax = 1.0 + 8.0 / std::sqrt(static_cast<double>(N));
  const GaussRule& gr = gauss_legendre(radial_nodes);
  std::vector<double> rs, ws;
  for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{1.0, rmax}})
    for (int i = 0; i < radial_nodes; ++i) {
      rs.push_back(a + 0.5 * (b - a) * (gr.nodes[i] + 1.0));
      ws.push_back(0.5 * (b - a) * gr.weights[i]);
    }
  const int na = 2 * angular_nodes;
  double o2 = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < rs.size(); ++j) {
      double ang = 0.0;
      for (int m = 0; m < na; ++m) {
        const double th = 2.0 * kPi * m / na;
        const cplx v = o2_density_exact_complex(N, cplx(rs[i], 0.0), std::polar(rs[j], th));
        ang += (v * std::polar(1.0, -p * th)).real();
      }
      ang *= 2.0 * kPi / na;
      o2 += ws[i] * ws[j] * rs[i] * rs[j] * std::pow(rs[i] * rs[j], p) * ang;
    }
  ExactConstraint e;
  e.o1_part = o1_moment_integral(N, p);
  e.o2_part = 2.0 * kPi * o2;
  e.total = e.o1_part + e.o2_part;
  return e;
}

}  // namespace probwb
