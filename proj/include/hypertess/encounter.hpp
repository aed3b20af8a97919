#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "hypertess/estimate.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

struct EncounterConfig {
  double r = 2.0;
  double epsilon = 0.04;
  double a = 0.948;
  double b = 0.958;
  double R = 8.0;
  double point_intensity = 1.0;
};

std::vector<Vector> cap_centers(int d);
double r0(int d);

// bounds on the cap half-width
double epsilon_rays(int d);                   // caps around the cap centers stay disjoint
double epsilon_walls_miss(int d, double a);   // walls stay clear of the caps
double epsilon_walls_cover(double b, double r);  // walls cut every G direction before radius r

// throws ConfigError naming the first violated bound
void validate(int d, const EncounterConfig& config);

// centers of eps-caps covering G = {u : some u_i = 0}, greedy over a mesh of pitch eps/4
std::vector<Vector> cover_equatorial_set(int d, double eps);
// mesh of G with every point of G within pitch/2 (angle) of a mesh point
std::vector<Vector> equatorial_mesh(int d, double pitch);

std::vector<Hyperplane> build_walls(int d, const EncounterConfig& config, std::uint64_t seed);

// every G direction u has [o, tanh(r) u] crossing a wall (checked on a mesh of pitch eps/16)
bool walls_cover_G(const std::vector<Hyperplane>& walls, int d, double r, double eps);
// no ray from o into any cap(v, eps) crosses a wall (exact angular test)
bool walls_miss_caps(const std::vector<Hyperplane>& walls, int d, double eps);

struct DetectionResult {
  std::vector<int> encounter;    // indices into points
  std::vector<int> components;   // unbounded outside-ball components per point, -1 when not evaluated
  long indeterminate = 0;
};

DetectionResult detect_encounter_points(const ProcessSample& sample, const std::vector<KleinPoint>& points, double r,
                                        double h = 0.01);

// edges (i, j), i < j, over point indices
std::vector<std::pair<int, int>> build_forest(const ProcessSample& sample, const std::vector<int>& encounter,
                                              const std::vector<KleinPoint>& points,
                                              const std::vector<double>& labels, double r, double h = 0.01);

struct EncounterRate {
  EstimateReport rate;             // detected encounter points per unit volume of the point window
  double window_fraction = 0.0;    // windows with at least one detection
  double window_fraction_se = 0.0;
  long windows = 0;
  long points = 0;
  long detected = 0;
  long indeterminate = 0;
};

// Y Poisson with intensity point_intensity in B(o, R - r)
EncounterRate encounter_rate(int d, double gamma, const EncounterConfig& config, long n, std::uint64_t seed,
                             Execution exec = Execution::parallel);

// planar: for each cap center, the zero cell reaches the window circle inside cap(v, eps)
std::vector<bool> cap_ray_events_2d(const ProcessSample& sample, double eps);

}  // namespace hypertess
