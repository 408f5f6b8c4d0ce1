#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "probwb/kacwalk.hpp"

using namespace probwb;
using doctest::Approx;

TEST_CASE("spectral gaps") {
  CHECK(kac_spectral_gap(3) == Approx(5.0 / 12.0));
  CHECK(kac_spectral_gap(10) == Approx(12.0 / 180.0));
  CHECK(thermostat_spectral_gap(10, 1.0) == Approx(0.05));
}

TEST_CASE("a rotation acts on two rows only") {
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(4, 4);
  apply_rotation(G, 1, 3, 0.5);
  CHECK(G(1, 1) == Approx(std::cos(0.5)));
  CHECK(G(1, 3) == Approx(std::sin(0.5)));
  CHECK(G(3, 1) == Approx(-std::sin(0.5)));
  CHECK(G(0, 0) == 1.0);
  CHECK(G(2, 2) == 1.0);
  CHECK_THROWS_AS(apply_rotation(G, 2, 2, 0.1), std::out_of_range);
  CHECK_THROWS_AS(apply_rotation(G, 0, 4, 0.1), std::out_of_range);
}

TEST_CASE("complex matrices rotate too") {
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(3, 3);
  G(0, 1) = std::complex<double>(0, 1);
  apply_rotation(G, 0, 1, 0.3);
  CHECK(std::abs(G(0, 1) - (std::cos(0.3) * std::complex<double>(0, 1) + std::sin(0.3))) < 1e-15);
}

TEST_CASE("Kac moves are uniform pairs with angles in (-pi, pi]") {
  Stream rng = derive_stream(1, 0);
  std::vector<int> count(6, 0);
  const int T = 60000;
  for (int t = 0; t < T; ++t) {
    const KacMove mv = draw_kac_move(4, rng);
    REQUIRE(mv.i < mv.j);
    REQUIRE(mv.theta > -std::numbers::pi);
    REQUIRE(mv.theta <= std::numbers::pi);
    const int idx = mv.i == 0 ? mv.j - 1 : mv.i == 1 ? 1 + mv.j : 5;
    ++count[idx];
  }
  for (int c : count) CHECK(std::abs(c - T / 6.0) < 5 * std::sqrt(T / 6.0));
}

TEST_CASE("Kac walk stays in SO(n)") {
  Stream rng = derive_stream(2, 0);
  Eigen::MatrixXd O = Eigen::MatrixXd::Identity(12, 12);
  for (int s = 0; s < 100000; ++s) kac_step(O, rng);
  CHECK(orthogonality_drift(O) < 1e-10);
  CHECK(O.determinant() == Approx(1.0).epsilon(1e-10));
  reorthonormalize(O);
  CHECK(orthogonality_drift(O) < 1e-14);
  CHECK(O.determinant() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Haar sample is special orthogonal with the right entry law") {
  Stream rng = derive_stream(3, 0);
  const int n = 8, T = 20000;
  double m2 = 0, m4 = 0;
  for (int t = 0; t < T; ++t) {
    const Eigen::MatrixXd O = sample_haar_orthogonal(n, rng);
    REQUIRE(orthogonality_drift(O) < 1e-12);
    REQUIRE(O.determinant() == Approx(1.0).epsilon(1e-10));
    const double x = O(2, 5);
    m2 += x * x;
    m4 += x * x * x * x;
  }
  // E x^2 = 1/n, E x^4 = 3/(n(n+2)) for one entry of a Haar orthogonal matrix
  CHECK(m2 / T == Approx(1.0 / n).epsilon(0.03));
  CHECK(m4 / T == Approx(3.0 / (n * (n + 2.0))).epsilon(0.06));
}

TEST_CASE("long Kac walk matches Haar second and fourth moments") {
  const int n = 6, T = 4000;
  double m2 = 0, m4 = 0;
  for (int t = 0; t < T; ++t) {
    Stream rng = derive_stream(4, static_cast<std::uint64_t>(t));
    Eigen::MatrixXd O = Eigen::MatrixXd::Identity(n, n);
    for (int s = 0; s < 400; ++s) kac_step(O, rng);
    const double x = O(0, 0);
    m2 += x * x;
    m4 += x * x * x * x;
  }
  CHECK(m2 / T == Approx(1.0 / n).epsilon(0.08));
  CHECK(m4 / T == Approx(3.0 / (n * (n + 2.0))).epsilon(0.15));
}

TEST_CASE("thermostat step replaces one column") {
  Stream rng = derive_stream(5, 0);
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(5, 5);
  const Eigen::MatrixXd before = G;
  ThermoParams p;
  const Eigen::Index j = thermostat_step(G, p, rng);
  for (Eigen::Index c = 0; c < 5; ++c)
    if (c != j) CHECK((G.col(c) - before.col(c)).norm() == 0.0);
}

TEST_CASE("thermostat chain relaxes to N(0, 1/beta) entries") {
  ThermoParams p{4.0, 1.0, 1.0};
  const int n = 5, T = 3000;
  double m2 = 0;
  for (int t = 0; t < T; ++t) {
    Stream rng = derive_stream(6, static_cast<std::uint64_t>(t));
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n);
    for (int s = 0; s < 200; ++s) coupled_step(G, p, rng);
    m2 += G.squaredNorm() / (n * n);
  }
  CHECK(m2 / T == Approx(0.25).epsilon(0.05));
}

TEST_CASE("coupled step mixes moves in proportion lambda : mu") {
  Stream rng = derive_stream(7, 0);
  ThermoParams p{1.0, 1.0, 3.0};
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(4, 4);
  int kac = 0;
  const int T = 40000;
  for (int t = 0; t < T; ++t) kac += coupled_step(G, p, rng) == CoupledMove::Kac;
  CHECK(std::abs(kac / static_cast<double>(T) - 0.75) < 5 * std::sqrt(0.75 * 0.25 / T));
}

TEST_CASE("gaussian matrix variance") {
  Stream rng = derive_stream(8, 0);
  const Eigen::MatrixXd G = sample_gaussian_matrix(200, 300, 2.0, rng);
  CHECK(G.squaredNorm() / (200.0 * 300.0) == Approx(0.5).epsilon(0.02));
}
