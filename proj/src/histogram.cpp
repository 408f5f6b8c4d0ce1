#include "probwb/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace probwb {

Histogram::Histogram(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw std::invalid_argument("Histogram: need at least two edges");
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (!(edges_[i] > edges_[i - 1]))
      throw std::invalid_argument("Histogram: edges must be strictly increasing");
  counts_.assign(edges_.size() - 1, 0);
}

Histogram Histogram::uniform(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("Histogram::uniform: bad range");
  std::vector<double> e(bins + 1);
  for (int i = 0; i <= bins; ++i) e[i] = lo + (hi - lo) * i / bins;
  return Histogram(std::move(e));
}

Histogram Histogram::integer_bins(const std::vector<int>& values) {
  if (values.empty()) return uniform(0.0, 1.0, 1);
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  std::vector<double> e;
  for (int v = *mn; v <= *mx + 1; ++v) e.push_back(v - 0.5);
  Histogram h(std::move(e));
  for (int v : values) h.add(v);
  return h;
}

void Histogram::add(double x) {
  ++total_;
  if (!(x >= edges_.front() && x <= edges_.back())) {
    ++outside_;
    return;
  }
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  std::size_t bin = static_cast<std::size_t>(it - edges_.begin());
  bin = bin == 0 ? 0 : bin - 1;
  if (bin >= counts_.size()) bin = counts_.size() - 1;
  ++counts_[bin];
}

std::string Histogram::to_svg(const std::string& title, int width, int height) const {
  const double margin = 40.0;
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  const std::int64_t peak = counts_.empty() ? 1 : std::max<std::int64_t>(
                                                       1, *std::max_element(counts_.begin(), counts_.end()));
  const double x0 = edges_.front(), x1 = edges_.back();
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << title << "</text>\n";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const double bx = margin + plot_w * (edges_[i] - x0) / (x1 - x0);
    const double bw = plot_w * (edges_[i + 1] - edges_[i]) / (x1 - x0);
    const double bh = plot_h * static_cast<double>(counts_[i]) / static_cast<double>(peak);
    os << "<rect x=\"" << bx << "\" y=\"" << margin + plot_h - bh << "\" width=\"" << bw
       << "\" height=\"" << bh << "\" fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  os << "<line x1=\"" << margin << "\" y1=\"" << margin + plot_h << "\" x2=\"" << margin + plot_w
     << "\" y2=\"" << margin + plot_h << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"" << height - 10 << "\" font-family=\"sans-serif\" "
        "font-size=\"11\">"
     << x0 << "</text>\n";
  os << "<text x=\"" << margin + plot_w << "\" y=\"" << height - 10
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << x1 << "</text>\n";
  os << "<text x=\"4\" y=\"" << margin + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">" << peak
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace probwb
