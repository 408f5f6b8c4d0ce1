#include "probwb/mallows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "probwb/qcomb.hpp"

namespace probwb {

Permutation::Permutation(std::vector<int> values) : v_(std::move(values)) {
  std::vector<char> seen(v_.size() + 1, 0);
  for (int x : v_) {
    if (x < 1 || x > static_cast<int>(v_.size()) || seen[x])
      throw std::invalid_argument("Permutation: not a bijection of {1..n}");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) os << ' ';
    os << v_[i];
  }
  return os.str();
}

namespace {

std::int64_t merge_count(std::vector<int>& a, std::vector<int>& buf, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = (lo + hi) / 2;
  std::int64_t c = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      buf[k++] = a[i++];
    } else {
      c += static_cast<std::int64_t>(mid - i);
      buf[k++] = a[j++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, a.begin() + lo);
  return c;
}

}  // namespace

std::int64_t inversions(const Permutation& perm) {
  std::vector<int> a = perm.values(), buf(a.size());
  return merge_count(a, buf, 0, a.size());
}

double mallows_log_pmf(const Permutation& perm, double q) {
  const double lq = checked_log_q(q);
  const int n = perm.size();
  if (lq == 0.0) return -std::lgamma(n + 1.0);
  return static_cast<double>(inversions(perm)) * lq - log_q_factorial_lq(n, lq);
}

Permutation uniform_fy_from_draws(int n, const std::vector<int>& draws) {
  if (n < 1) throw std::domain_error("uniform_fy: n must be >= 1");
  if (static_cast<int>(draws.size()) != n - 1)
    throw std::invalid_argument("uniform_fy: need n-1 draws");
  std::vector<int> L{1};
  L.reserve(n);
  for (int m = 2; m <= n; ++m) {
    const int k = draws[m - 2];
    if (k < 1 || k > m) throw std::invalid_argument("uniform_fy: draw out of range");
    if (k == m)
      L.push_back(m);
    else
      L.insert(L.begin() + (k - 1), m);
  }
  return Permutation(std::move(L));
}

Permutation sample_uniform_fy(int n, Stream& rng) {
  if (n < 1) throw std::domain_error("uniform_fy: n must be >= 1");
  std::vector<int> draws(n - 1);
  for (int m = 2; m <= n; ++m) draws[m - 2] = static_cast<int>(rng.one_to(m));
  return uniform_fy_from_draws(n, draws);
}

Permutation sample_mallows_fy(int n, double q, Stream& rng) {
  if (n < 1) throw std::domain_error("mallows_fy: n must be >= 1");
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("mallows_fy: q must lie in (0,1)");
  std::vector<int> L{1};
  L.reserve(n);
  for (int m = 2; m <= n; ++m) {
    const std::uint64_t k = rng.geometric(q);
    const int j = 1 + static_cast<int>((k - 1) % static_cast<std::uint64_t>(m));
    if (j == 1)
      L.push_back(m);
    else
      L.insert(L.begin() + (m - j), m);
  }
  return Permutation(std::move(L));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::map<Permutation, double> exact_distribution(int n, double q) {
  if (n < 1) throw std::domain_error("exact_distribution: n must be >= 1");
  if (n > 8) throw std::length_error("exact_distribution: n must be <= 8");
  checked_log_q(q);
  std::map<Permutation, double> out;
  double z = 0.0;
  for (const Permutation& p : all_permutations(n)) {
    const double w = std::pow(q, static_cast<double>(inversions(p)));
    out.emplace(p, w);
    z += w;
  }
  for (auto& [p, w] : out) w /= z;
  return out;
}

}  // namespace probwb
