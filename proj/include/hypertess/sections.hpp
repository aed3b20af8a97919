#pragma once

#include <cstdint>
#include <vector>

#include "hypertess/estimate.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

double omega(int j);
// c(d,k) from sphere areas and from the Gamma-function form
double section_constant(int d, int k);
double section_constant_gamma_form(int d, int k);

// traces of the sample on the coordinate k-plane span(e1..ek), as chords of the k-ball
std::vector<Hyperplane> induce_on_kplane(const ProcessSample& sample, int k);
// the traces as a k-dimensional sample in the same window radius
ProcessSample induced_sample(const ProcessSample& sample, int k);

EstimateReport verify_section_intensity(int d, int k, double gamma, double r, long n, std::uint64_t seed,
                                        Execution exec = Execution::parallel);

// Kolmogorov-Smirnov distance of samples against a CDF
template <class Cdf>
double ks_distance(std::vector<double> xs, Cdf&& F);

}  // namespace hypertess

#include <algorithm>
#include <cmath>

template <class Cdf>
double hypertess::ks_distance(std::vector<double> xs, Cdf&& F) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double D = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = F(xs[i]);
    D = std::max(D, std::max(std::fabs(f - i / n), std::fabs((i + 1) / n - f)));
  }
  return D;
}
