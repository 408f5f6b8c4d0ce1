#include "probwb/lis.hpp"

#include <algorithm>
#include <stdexcept>

namespace probwb {

std::vector<std::vector<double>> PileState::pile_values() const {
  std::vector<std::vector<double>> out;
  out.reserve(piles.size());
  for (const auto& p : piles) {
    std::vector<double> vals;
    vals.reserve(p.size());
    for (int c : p) vals.push_back(cards[c]);
    out.push_back(std::move(vals));
  }
  return out;
}

PileState patience_sort(const std::vector<double>& seq, PileMode mode) {
  if (seq.empty()) throw std::length_error("patience_sort: empty input");
  PileState st;
  st.cards = seq;
  st.mode = mode;
  st.back_pointer.assign(seq.size(), -1);
  std::vector<double> tops;
  for (int c = 0; c < static_cast<int>(seq.size()); ++c) {
    const double v = seq[c];
    // Strict: leftmost pile whose top is >= v. Lax: leftmost top > v.
    auto it = mode == PileMode::Strict ? std::lower_bound(tops.begin(), tops.end(), v)
                                       : std::upper_bound(tops.begin(), tops.end(), v);
    const std::size_t p = static_cast<std::size_t>(it - tops.begin());
    if (p > 0) st.back_pointer[c] = st.piles[p - 1].back();
    if (p == tops.size()) {
      tops.push_back(v);
      st.piles.push_back({c});
    } else {
      tops[p] = v;
      st.piles[p].push_back(c);
    }
  }
  return st;
}

std::vector<int> lis_witness(const PileState& state) {
  std::vector<int> out;
  if (state.piles.empty()) return out;
  for (int c = state.piles.back().back(); c >= 0; c = state.back_pointer[c]) out.push_back(c);
  std::reverse(out.begin(), out.end());
  return out;
}

int lis_length(const std::vector<int>& seq, PileMode mode) {
  if (seq.empty()) throw std::length_error("lis_length: empty input");
  std::vector<int> tops;
  tops.reserve(256);
  for (int v : seq) {
    auto it = mode == PileMode::Strict ? std::lower_bound(tops.begin(), tops.end(), v)
                                       : std::upper_bound(tops.begin(), tops.end(), v);
    if (it == tops.end())
      tops.push_back(v);
    else
      *it = v;
  }
  return static_cast<int>(tops.size());
}

int binary_walk_lis(const std::vector<std::uint8_t>& config) {
  int ones_total = 0;
  for (auto x : config) ones_total += x ? 1 : 0;
  int best = ones_total, zeros = 0, ones = 0;
  for (auto x : config) {
    if (x)
      ++ones;
    else
      ++zeros;
    best = std::max(best, zeros + ones_total - ones);
  }
  return best;
}

int height_profile_lis(const std::vector<std::uint8_t>& config) {
  if (config.empty()) return 0;
  std::vector<int> h;
  h.reserve(config.size());
  int s = 0;
  for (auto x : config) {
    s += x ? 1 : -1;
    h.push_back(s);
  }
  return lis_length(h, PileMode::Lax);
}

}  // namespace probwb
