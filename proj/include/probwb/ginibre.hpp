#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "probwb/rng.hpp"

namespace probwb {

using cplx = std::complex<double>;

// ---- sampling and mixed moments -------------------------------------------

/// Entries (X + iY)/sqrt(2n) with X, Y iid standard normal.
Eigen::MatrixXcd sample_ginibre(int n, Stream& rng);

/// Word A^{p1} (A*)^{q1} ... A^{pk} (A*)^{qk}.
struct MomentSignature {
  std::vector<int> p, q;
  int total() const;  // sum p + sum q
  void validate() const;
};

struct MomentEstimate {
  cplx mean;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  int trials = 0;
};

/// (1/n) tr of the word for one matrix.
cplx normalized_trace_word(const Eigen::MatrixXcd& A, const MomentSignature& sig);

MomentEstimate mixed_moment_mc(int n, const MomentSignature& sig, int trials, std::uint64_t seed,
                               int threads = 1);

/// Circle labels (+1)^{p1} (-1)^{q1} ... .
std::vector<int> spin_sequence(const MomentSignature& sig);

/// Non-crossing perfect matchings of `spins` (read around a circle) whose
/// edges all join +1 to -1, counted by explicit chord enumeration.
std::int64_t count_signed_matchings(const std::vector<int>& spins);

/// Limit moment: count of admissible non-crossing matchings (R <= 24).
std::int64_t limit_moment_matchings(const MomentSignature& sig);

/// Sum over admissible partners b of the first +1 of m(inside) * m(outside).
std::int64_t pinch_decomposition_total(const std::vector<int>& spins);

/// m(sig) equals its pinch decomposition (R <= 20).
bool pinch_recurrence_check(const MomentSignature& sig);

// ---- one-point densities ---------------------------------------------------

enum class DensityMethod { Recursion, ClosedForm };

/// ln Q(a, x), the regularized upper incomplete gamma function.
double log_gamma_q(double a, double x);

/// ln sum_{n<N} x^n/n!.
double log_exp_partial_sum(int N, double x);

/// ln sum_{n<N} (N - n) x^n/n!.
double log_weighted_exp_partial_sum(int N, double x);

/// Eigenvalue density R_N(z) = (N/(pi N!)) e^{-N|z|^2} D_{N-1}(z), normalized to 1.
double r1_density(int N, cplx z, DensityMethod method = DensityMethod::ClosedForm);

/// Diagonal overlap density O_N(z) = (N/(pi N!)) e^{-N|z|^2} G_{N-1}(z),
/// G_{N-1} = (N-1)! sum_{n<N} (N-n) (N|z|^2)^n/n!.
double o1_density(int N, cplx z, DensityMethod method = DensityMethod::ClosedForm);

/// Compares the closed form with the three-term recursion for G run with
/// coefficient (c + n + 2), once for c = N (constant) and once for c = N|z|^2.
struct O1RecursionReport {
  double closed_form = 0.0;
  double constant_coefficient = 0.0;
  double x_coefficient = 0.0;
  double constant_rel_error = 0.0;
  double x_rel_error = 0.0;
};
O1RecursionReport o1_recursion_report(int N, cplx z);

/// Standard normal CDF and density.
double normal_cdf(double x);
double normal_pdf(double x);

/// Phi extended to complex arguments through its Gaussian integral.
cplx normal_cdf_complex(cplx v);

enum class EdgeQuantity { R1, O1 };

struct EdgeValue {
  double finite_n = 0.0;
  double limit = 0.0;
};

/// Density at |z| = 1 - u/sqrt(N) and its large-N edge profile:
/// R1: Phi(2u)/pi; O1: (sqrt(N)/pi) [phi(2u) + 2u Phi(2u)].
EdgeValue edge_scaling(int N, double u, EdgeQuantity which);

/// (sqrt(N)/pi) [e^{-2u^2}/sqrt(2 pi) - 2u Phi(-2u)], kept for comparison.
double o1_edge_profile_alternate(int N, double u);

// ---- two-point densities ---------------------------------------------------

struct PairDensity {
  double r2 = 0.0;
  double c2 = 0.0;
};

/// Determinantal two-point density and its connected part.
PairDensity r2_density(int N, cplx z1, cplx z2);

/// Connected two-point density at the edge: -pi^-2 e^{-|u1-u2|^2} |Phi(u1 + conj u2)|^2.
double c2_edge_limit(cplx u1, cplx u2);

/// Scaled (N-2) x (N-2) pentadiagonal matrix whose determinant gives the
/// two-point overlap (with_correction) or the two-point density (without).
Eigen::MatrixXcd overlap_band_matrix(int N, cplx z1, cplx z2, bool with_correction = true);

/// Largest |j - k| with a nonzero entry.
int matrix_bandwidth(const Eigen::MatrixXcd& M);

/// Off-diagonal overlap density O_N^(2)(z1, z2), 3 <= N <= 40.
cplx o2_density_exact_complex(int N, cplx z1, cplx z2);
double o2_density_exact(int N, cplx z1, cplx z2);

/// Two-point eigenvalue density from the pentadiagonal route (no correction term).
double r2_density_banded(int N, cplx z1, cplx z2);

/// -pi^-2 (1 - z1 conj(z2)) / |z1 - z2|^4.
cplx cm_bulk_o2_pair(cplx z1, cplx z2);

/// -pi^-2 (1 - |z|^2) (1 - (1 + |w|^2) e^{-|w|^2}) / |w|^4, finite at w = 0.
double cm_bulk_o2_scaling(cplx z, cplx omega);

// ---- Monte Carlo overlaps --------------------------------------------------

struct DiskBin {
  cplx center;
  double radius = 0.1;
};

struct PairBin {
  DiskBin first, second;
};

struct OverlapMcConfig {
  int N = 4;
  int trials = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<DiskBin> disks;      // O1, R1 and O1 + row-sum estimates
  std::vector<PairBin> pairs;      // O2 and R2 estimates
  std::vector<int> moment_powers;  // p for (1/N) sum lambda_k^p conj(lambda_j)^p O_kj
};

struct BinEstimate {
  cplx value;  // bin average of the density
  double stderr_re = 0.0;
  double stderr_im = 0.0;
};

struct OverlapTables {
  std::vector<BinEstimate> o1, r1, o1_plus_o2_marginal;
  std::vector<BinEstimate> o2, r2;
  std::vector<BinEstimate> moments;
  double mean_diag_overlap = 0.0;  // (1/N) E sum_k O_kk
  double min_diag_overlap = 0.0;   // smallest O_kk seen
  int skipped = 0;
};

/// Eigenvalues plus right eigenvectors (unit columns) and left eigenvectors
/// (rows of the inverse), so that phi_k^* psi_j = delta_kj.
struct BiorthogonalEigen {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd right;     // columns psi_k
  Eigen::MatrixXcd left_adj;  // rows phi_k^*
  bool ok = true;
};
BiorthogonalEigen biorthogonal_eigen(const Eigen::MatrixXcd& A);

/// O_kj = (phi_k^* phi_j)(psi_j^* psi_k).
Eigen::MatrixXcd overlap_matrix(const BiorthogonalEigen& e);

OverlapTables estimate_overlaps_mc(const OverlapMcConfig& cfg);

// ---- moment constraint -----------------------------------------------------

struct ConstraintReport {
  double o1_integral = 0.0;        // int |z|^{2p} O1
  double leading = 0.0;            // N/((p+1)(p+2))
  double o1_excess = 0.0;          // o1_integral - leading
  double o2_bulk_integral = 0.0;   // bulk-form estimate of the O2 part
  double total_bulk = 0.0;
  double log_coefficient = 0.0;    // coefficient of ln N in the O2 part
};

/// Radial quadrature of |z|^{2p} O1.
double o1_moment_integral(int N, int p);

/// Bulk-form O2 contribution for z1 = z + w/(2 sqrt N), z2 = z - w/(2 sqrt N).
double o2_bulk_moment_integral(int N, int p);

/// -(1/pi) int_0^1 int_0^{2pi} r f_p^{(2)}(r, phi) dphi dr.
double o2_log_coefficient(int p);

ConstraintReport constraint_check(int N, int p);

/// Exact small-N moment total: int |z|^{2p} O1 + int int z1^p conj(z2)^p O2.
/// O2 part by polar product quadrature of the pentadiagonal determinant.
struct ExactConstraint {
  double o1_part = 0.0;
  double o2_part = 0.0;
  double total = 0.0;
};
ExactConstraint constraint_check_exact(int N, int p, int radial_nodes = 24, int angular_nodes = 24);

// ---- adiabatic recursion ---------------------------------------------------

struct AdiabaticTerms {
  double log_lambda_product = 0.0;  // sum ln lambda_n^+, n = 0..N-2
  double w0_e2 = 0.0;               // [W_0^+]^* e_2
  double e2_v = 0.0;                // e_2^* V_{N-2}^+
  double log_inner_product = 0.0;   // sum ln [W_{n+1}^+]^* V_n^+, n = 0..N-3
  double log_main = 0.0;            // ln M_N(r)
  double log_asymptotic = 0.0;      // 1 + ln N/2 + (N-1) ln N - N(1 - r^2)
  double ratio = 0.0;               // M_N / asymptotic
};

/// lambda_n^{+-} = (N/2)(r^2 + (n+1)/N +- sqrt(((n+1)/N - r^2)^2 + 4 r^2/N)).
double adiabatic_eigenvalue(int N, double r, int n, int sign);

AdiabaticTerms adiabatic_main_term(int N, double r);

/// Exact e_2^* A_{N-2} ... A_0 e_2 with A_n = [[0, 1], [-N n r^2, N r^2 + n + 1]],
/// returned as a log.
double log_transfer_product(int N, double r);

/// P_N(r) = pi R_N(r) sqrt(2 pi N) e^{(N-1) ln N - N(1 - r^2)} / M_N(r).
double implied_p_constant(int N, double r);

/// 1 + sum_{K=1}^{K_max} (-1)^K I_K with I_K the ordered 2K-fold integral,
/// truncated to |x| <= cutoff.
double perturbation_series(int K_max, double cutoff = 6.0);

}  // namespace probwb
