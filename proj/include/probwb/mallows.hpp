#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "probwb/rng.hpp"

namespace probwb {

/// Bijection of {1..n}, stored in one-line notation with 1-based values.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);  // throws unless a bijection

  static Permutation identity(int n);

  int size() const { return static_cast<int>(v_.size()); }
  int operator[](int i) const { return v_[i]; }
  const std::vector<int>& values() const { return v_; }

  bool operator<(const Permutation& o) const { return v_ < o.v_; }
  bool operator==(const Permutation& o) const { return v_ == o.v_; }

  /// Space-separated one-line form.
  std::string to_string() const;

 private:
  std::vector<int> v_;
};

/// Inv(pi) by merge counting, O(n log n).
std::int64_t inversions(const Permutation& perm);

/// ln of q^Inv / [n]_q!.
double mallows_log_pmf(const Permutation& perm, double q);

/// Insertion Fisher-Yates: draw k in {1..m}; k = m appends m, otherwise m is
/// inserted before the element at position k.
Permutation sample_uniform_fy(int n, Stream& rng);

/// Same insertion rule driven by an explicit draw sequence (k_2, ..., k_n).
Permutation uniform_fy_from_draws(int n, const std::vector<int>& draws);

/// Mallows insertion: k geometric, j = 1 + ((k-1) mod m); j = 1 appends m,
/// otherwise m is inserted at position m + 1 - j.
Permutation sample_mallows_fy(int n, double q, Stream& rng);

/// Exact law mu_{n,q} by enumeration of S_n, n <= 8.
std::map<Permutation, double> exact_distribution(int n, double q);

/// All permutations of {1..n} in lexicographic order.
std::vector<Permutation> all_permutations(int n);

}  // namespace probwb
