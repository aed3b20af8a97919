#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypertess {

struct EstimateReport {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::optional<double> target;
  long n = 0;
  std::uint64_t seed = 0;
  // secondary numbers (alternative targets, diagnostics)
  std::vector<std::pair<std::string, double>> extras;

  double z_score() const;  // (estimate - target) / standard_error
  double extra(const std::string& key) const;
};

// running mean / variance
struct Moments {
  long n = 0;
  double sum = 0.0, sum2 = 0.0;
  void add(double x) {
    ++n;
    sum += x;
    sum2 += x * x;
  }
  void merge(const Moments& o) {
    n += o.n;
    sum += o.sum;
    sum2 += o.sum2;
  }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double variance() const;  // unbiased
  double se() const;
};

}  // namespace hypertess
