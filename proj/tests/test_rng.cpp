#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "probwb/parallel.hpp"
#include "probwb/rng.hpp"

using namespace probwb;

TEST_CASE("derive_stream is deterministic over 10^6 draws") {
  Stream a = derive_stream(12345, 0), b = derive_stream(12345, 0);
  bool same = true;
  for (int i = 0; i < 1000000; ++i) same &= a.next() == b.next();
  CHECK(same);
}

TEST_CASE("neighbouring substreams are uncorrelated") {
  Stream a = derive_stream(7, 0), b = derive_stream(7, 1);
  const int n = 100000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform(), y = b.uniform();
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  CHECK(std::abs(corr) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("adjacent seeds give different first draws") {
  for (std::uint64_t s = 0; s < 100; ++s) CHECK(derive_stream(s, 3).next() != derive_stream(s + 1, 3).next());
}

TEST_CASE("splitmix64 reference values") {
  // first output of the reference generator from state 0
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("uniform, below, one_to ranges") {
  Stream s = derive_stream(1, 2);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = s.uniform_pos();
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
    REQUIRE(s.below(7) < 7);
    const auto k = s.one_to(5);
    REQUIRE(k >= 1);
    REQUIRE(k <= 5);
    const double th = s.angle();
    REQUIRE(th > -std::numbers::pi);
    REQUIRE(th <= std::numbers::pi);
  }
}

TEST_CASE("below is unbiased on a small modulus") {
  Stream s = derive_stream(5, 0);
  std::vector<int> c(3, 0);
  const int n = 300000;
  for (int i = 0; i < n; ++i) ++c[s.below(3)];
  for (int v : c) CHECK(std::abs(v - n / 3.0) < 5.0 * std::sqrt(n * (1.0 / 3) * (2.0 / 3)));
}

TEST_CASE("normal moments") {
  Stream s = derive_stream(9, 0);
  const int n = 200000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  CHECK(std::abs(m1 / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(m2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
}

TEST_CASE("geometric law") {
  Stream s = derive_stream(11, 0);
  const double q = 0.7;
  const int n = 200000;
  double sum = 0;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const auto k = s.geometric(q);
    REQUIRE(k >= 1);
    sum += static_cast<double>(k);
    ones += k == 1;
  }
  const double mean = 1.0 / (1.0 - q), var = q / ((1 - q) * (1 - q));
  CHECK(std::abs(sum / n - mean) < 5.0 * std::sqrt(var / n));
  CHECK(std::abs(ones / static_cast<double>(n) - (1 - q)) < 5.0 * std::sqrt(q * (1 - q) / n));
  CHECK_THROWS_AS(s.geometric(1.0), std::domain_error);
  CHECK_THROWS_AS(s.geometric(0.0), std::domain_error);
}

TEST_CASE("parallel_for output is independent of thread count") {
  auto run = [](int threads) {
    std::vector<std::uint64_t> out(1000);
    parallel_for(1000, threads, [&](std::int64_t i) {
      Stream s = derive_stream(42, static_cast<std::uint64_t>(i));
      std::uint64_t acc = 0;
      for (int k = 0; k < 100; ++k) acc ^= s.next();
      out[i] = acc;
    });
    return out;
  };
  const auto a = run(1);
  CHECK(a == run(4));
  CHECK(a == run(8));
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::int64_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}
