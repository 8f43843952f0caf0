#include "ragft/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace ragft {

double psnr_y(const std::vector<std::vector<double>>& original_y,
              const std::vector<std::vector<double>>& decoded_y) {
  if (original_y.empty() || original_y.size() != decoded_y.size())
    throw std::runtime_error("metrics: frame count mismatch");
  double acc = 0.0;
  for (std::size_t t = 0; t < original_y.size(); t++) {
    const auto& a = original_y[t];
    const auto& b = decoded_y[t];
    if (a.empty() || a.size() != b.size())
      throw std::runtime_error("metrics: point count mismatch");
    double se = 0.0;
    for (std::size_t i = 0; i < a.size(); i++) {
      double d = a[i] - b[i];
      se += d * d;
    }
    acc += se / (255.0 * 255.0 * static_cast<double>(a.size()));
  }
  acc /= static_cast<double>(original_y.size());
  if (acc == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(acc);
}

double rate_bpv(const std::vector<std::size_t>& stream_bytes,
                const std::vector<std::size_t>& point_counts) {
  if (stream_bytes.empty() || stream_bytes.size() != point_counts.size())
    throw std::runtime_error("metrics: stream/count mismatch");
  double bits = 0.0, points = 0.0;
  for (std::size_t t = 0; t < stream_bytes.size(); t++) {
    bits += 8.0 * static_cast<double>(stream_bytes[t]);
    points += static_cast<double>(point_counts[t]);
  }
  return bits / points;
}

ComplexityReport complexity_proxy(const PartitionTree& tree) {
  ComplexityReport report;
  const int L = tree.num_levels();
  report.per_level.resize(L, 0.0);
  for (int l = 0; l < L; l++) {
    const auto& lv = tree.levels[l];
    for (std::size_t i = 0; i < lv.coords.size(); i++) {
      double n = static_cast<double>(lv.child_begin[i + 1] - lv.child_begin[i]);
      report.per_level[l] += n * n * n;
    }
    report.total += report.per_level[l];
  }
  return report;
}

double complexity_aggregate(const std::vector<ComplexityReport>& reports,
                            const std::vector<std::size_t>& point_counts) {
  if (reports.empty() || reports.size() != point_counts.size())
    throw std::runtime_error("metrics: report/count mismatch");
  double k = 0.0, n = 0.0;
  for (std::size_t t = 0; t < reports.size(); t++) {
    k += reports[t].total;
    n += static_cast<double>(point_counts[t]);
  }
  return k / n;
}

}  // namespace ragft
