#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypertess/measure.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

double gamma_crit(int d);
double gamma_crit_face(int d, int k);

struct CrossingEstimate {
  int d = 2;
  double gamma = 0.0, R = 0.0, h = 0.0;
  long n = 0, hits = 0, indeterminate = 0;
  double p_hat = 0.0, se = 0.0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  int d = 2;
  double R = 0.0, h = 0.0;
  long n = 0;
  std::uint64_t seed = 0;
  std::vector<double> gammas, p_hat, se;
  std::vector<long> indeterminate;
};

struct ThresholdInterval {
  double lo = 0.0, hi = 0.0, center = 0.0, R = 0.0;
};

// "a:b:step" inclusive grid
std::vector<double> parse_grid(const std::string& text);

// zero cell reaches the window sphere: exact clipping in d = 2, probe lattice otherwise
bool zero_cell_reaches_window(const ProcessSample& sample, double h);

CrossingEstimate crossing_probability(int d, double gamma, double R, double h, long n, std::uint64_t seed,
                                      Execution exec = Execution::parallel);

// coupled sweep: one marked stream per replicate, thinned to every grid intensity
SweepResult sweep(int d, double R, double h, const std::vector<double>& gammas, long n, std::uint64_t seed,
                  Execution exec = Execution::parallel);

// 0.5 down-crossing of p_hat, widened by 2 SE and by the bracketing grid cell
ThresholdInterval estimate_threshold(const SweepResult& sweep);

// cells touching the window sphere, from probe components merged by sign vector
int count_window_components(const ProcessSample& sample, double h);

// planar cells that meet B(o, inner_radius) and reach the window circle
int count_crossing_cells_2d(const ProcessSample& sample, double inner_radius);

// a cell of the vacant set cut by {x1 > 0} meets B(o, inner_radius) and
// reaches the window circle within angle cap_half_angle of e1
bool half_space_crossing_2d(const ProcessSample& sample, double inner_radius, double cap_half_angle);

}  // namespace hypertess
