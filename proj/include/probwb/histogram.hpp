#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace probwb {

/// Fixed-edge histogram. Values outside [edges.front(), edges.back()) are
/// counted in total but land in no bin; the last edge is inclusive.
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::vector<double> edges);

  /// `bins` equal bins on [lo, hi].
  static Histogram uniform(double lo, double hi, int bins);

  /// One unit-width bin per integer between the min and max of `values`.
  static Histogram integer_bins(const std::vector<int>& values);

  void add(double x);

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }
  std::int64_t outside() const { return outside_; }

  /// Self-contained SVG bar chart.
  std::string to_svg(const std::string& title, int width = 640, int height = 360) const;

 private:
  std::vector<double> edges_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
  std::int64_t outside_ = 0;
};

}  // namespace probwb
