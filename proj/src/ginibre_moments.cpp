#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "probwb/ginibre.hpp"
#include "probwb/parallel.hpp"

namespace probwb {

Eigen::MatrixXcd sample_ginibre(int n, Stream& rng) {
  if (n < 1) throw std::domain_error("sample_ginibre: n must be >= 1");
  const double s = 1.0 / std::sqrt(2.0 * n);
  Eigen::MatrixXcd A(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const double x = rng.normal();
      const double y = rng.normal();
      A(r, c) = cplx(s * x, s * y);
    }
  return A;
}

int MomentSignature::total() const {
  return std::accumulate(p.begin(), p.end(), 0) + std::accumulate(q.begin(), q.end(), 0);
}

void MomentSignature::validate() const {
  if (p.size() != q.size() || p.empty())
    throw std::invalid_argument("MomentSignature: p and q must have equal nonzero length");
  for (int v : p)
    if (v < 0) throw std::invalid_argument("MomentSignature: negative exponent");
  for (int v : q)
    if (v < 0) throw std::invalid_argument("MomentSignature: negative exponent");
  if (total() == 0) throw std::invalid_argument("MomentSignature: all exponents zero");
}

cplx normalized_trace_word(const Eigen::MatrixXcd& A, const MomentSignature& sig) {
  sig.validate();
  const Eigen::Index n = A.rows();
  std::map<int, Eigen::MatrixXcd> powers;
  std::function<const Eigen::MatrixXcd&(int)> power;
  power = [&](int k) -> const Eigen::MatrixXcd& {
    auto it = powers.find(k);
    if (it != powers.end()) return it->second;
    Eigen::MatrixXcd P;
    if (k == 1) {
      P = A;
    } else {
      const int h = k / 2;
      const Eigen::MatrixXcd& H = power(h);
      P = H * H;
      if (k % 2) P = P * A;
    }
    return powers.emplace(k, std::move(P)).first->second;
  };
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t i = 0; i < sig.p.size(); ++i) {
    if (sig.p[i] > 0) blocks.push_back(power(sig.p[i]));
    if (sig.q[i] > 0) blocks.push_back(power(sig.q[i]).adjoint());
  }
  if (blocks.size() == 1) return blocks[0].trace() / static_cast<double>(n);
  Eigen::MatrixXcd acc = blocks[0];
  for (std::size_t i = 1; i + 1 < blocks.size(); ++i) acc = acc * blocks[i];
  // tr(XY) = sum_ij X_ij Y_ji
  const cplx tr = (acc.array() * blocks.back().transpose().array()).sum();
  return tr / static_cast<double>(n);
}

MomentEstimate mixed_moment_mc(int n, const MomentSignature& sig, int trials, std::uint64_t seed,
                               int threads) {
  sig.validate();
  if (trials < 2) throw std::length_error("mixed_moment_mc: trials must be >= 2");
  std::vector<cplx> vals(trials);
  parallel_for(trials, threads, [&](std::int64_t t) {
    Stream rng = derive_stream(seed, static_cast<std::uint64_t>(t));
    vals[t] = normalized_trace_word(sample_ginibre(n, rng), sig);
  });
  MomentEstimate e;
  e.trials = trials;
  cplx sum = 0.0;
  for (const cplx& v : vals) sum += v;
  e.mean = sum / static_cast<double>(trials);
  double sr = 0.0, si = 0.0;
  for (const cplx& v : vals) {
    sr += std::pow(v.real() - e.mean.real(), 2);
    si += std::pow(v.imag() - e.mean.imag(), 2);
  }
  e.stderr_re = std::sqrt(sr / (trials - 1) / trials);
  e.stderr_im = std::sqrt(si / (trials - 1) / trials);
  return e;
}

std::vector<int> spin_sequence(const MomentSignature& sig) {
  sig.validate();
  std::vector<int> s;
  for (std::size_t i = 0; i < sig.p.size(); ++i) {
    s.insert(s.end(), sig.p[i], +1);
    s.insert(s.end(), sig.q[i], -1);
  }
  return s;
}

namespace {

bool chords_cross(int a, int b, int c, int d) {
  // chords (a,b), (c,d) with a<b, c<d on a circle cross iff exactly one of
  // c, d lies strictly between a and b
  const bool c_in = a < c && c < b;
  const bool d_in = a < d && d < b;
  return c_in != d_in;
}

void enumerate_matchings(const std::vector<int>& spins, std::vector<int>& partner,
                         std::vector<std::pair<int, int>>& chords, std::int64_t& count) {
  const int R = static_cast<int>(spins.size());
  int first = -1;
  for (int i = 0; i < R; ++i)
    if (partner[i] < 0) {
      first = i;
      break;
    }
  if (first < 0) {
    ++count;
    return;
  }
  for (int j = first + 1; j < R; ++j) {
    if (partner[j] >= 0 || spins[j] == spins[first]) continue;
    bool ok = true;
    for (const auto& [a, b] : chords)
      if (chords_cross(first, j, a, b)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    partner[first] = j;
    partner[j] = first;
    chords.emplace_back(first, j);
    enumerate_matchings(spins, partner, chords, count);
    chords.pop_back();
    partner[first] = -1;
    partner[j] = -1;
  }
}

}  // namespace

std::int64_t count_signed_matchings(const std::vector<int>& spins) {
  if (spins.empty()) return 1;
  if (spins.size() % 2) return 0;
  if (std::accumulate(spins.begin(), spins.end(), 0) != 0) return 0;
  std::vector<int> partner(spins.size(), -1);
  std::vector<std::pair<int, int>> chords;
  std::int64_t count = 0;
  enumerate_matchings(spins, partner, chords, count);
  return count;
}

std::int64_t limit_moment_matchings(const MomentSignature& sig) {
  sig.validate();
  const int R = sig.total();
  if (R % 2) return 0;
  if (R > 24) throw std::length_error("limit_moment_matchings: R must be <= 24");
  return count_signed_matchings(spin_sequence(sig));
}

std::int64_t pinch_decomposition_total(const std::vector<int>& spins) {
  if (spins.empty()) return 1;
  const int R = static_cast<int>(spins.size());
  int a = -1;
  for (int i = 0; i < R; ++i)
    if (spins[i] == +1) {
      a = i;
      break;
    }
  if (a < 0) return 0;
  std::int64_t total = 0;
  for (int step = 1; step < R; ++step) {
    const int b = (a + step) % R;
    if (spins[b] != -1) continue;
    std::vector<int> inside, outside;
    for (int k = 1; k < step; ++k) inside.push_back(spins[(a + k) % R]);
    for (int k = step + 1; k < R; ++k) outside.push_back(spins[(a + k) % R]);
    total += count_signed_matchings(inside) * count_signed_matchings(outside);
  }
  return total;
}

bool pinch_recurrence_check(const MomentSignature& sig) {
  sig.validate();
  if (sig.total() > 20) throw std::length_error("pinch_recurrence_check: R must be <= 20");
  const std::vector<int> s = spin_sequence(sig);
  return count_signed_matchings(s) == pinch_decomposition_total(s);
}

}  // namespace probwb
