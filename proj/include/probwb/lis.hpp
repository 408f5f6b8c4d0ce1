#pragma once

#include <cstdint>
#include <vector>

namespace probwb {

enum class PileMode { Strict, Lax };

/// Piles hold card indices into the dealt sequence, bottom first.
/// back_pointer[c] is the card on top of the pile to the left when c was
/// placed, or -1.
struct PileState {
  std::vector<double> cards;
  std::vector<std::vector<int>> piles;
  std::vector<int> back_pointer;
  PileMode mode = PileMode::Strict;

  int pile_count() const { return static_cast<int>(piles.size()); }
  /// Values of each pile, bottom first.
  std::vector<std::vector<double>> pile_values() const;
};

/// Greedy patience sorting with binary search on pile tops.
/// Strict mode counts strictly increasing subsequences, lax mode non-decreasing.
PileState patience_sort(const std::vector<double>& seq, PileMode mode = PileMode::Strict);

template <typename Int>
PileState patience_sort_int(const std::vector<Int>& seq, PileMode mode = PileMode::Strict) {
  return patience_sort(std::vector<double>(seq.begin(), seq.end()), mode);
}

/// Indices of one longest subsequence, following back pointers from the last pile.
std::vector<int> lis_witness(const PileState& state);

/// Pile count only; avoids storing piles.
int lis_length(const std::vector<int>& seq, PileMode mode = PileMode::Strict);

/// Longest non-decreasing subsequence of a 0/1 sequence:
/// max over t of (#zeros in [0, t)) + (#ones in [t, n)).
int binary_walk_lis(const std::vector<std::uint8_t>& config);

/// Longest non-decreasing subsequence of the height profile H_k = sum_{i<=k} (2 X_i - 1).
int height_profile_lis(const std::vector<std::uint8_t>& config);

}  // namespace probwb
