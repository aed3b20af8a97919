#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

namespace hypertess {

// Window-restricted realization of the Poisson hyperplane process.
struct ProcessSample {
  int d = 2;
  double gamma = 0.0;
  double window_radius = 0.0;
  std::uint64_t seed = 0;
  std::vector<Hyperplane> hyperplanes;

  double window_rho() const;  // Euclidean radius tanh R of the window
};

// Sample at intensity gamma_max where every hyperplane carries a mark uniform
// on [0, gamma_max]; keeping marks <= gamma gives the process at gamma.
struct MarkedSample {
  ProcessSample base;
  std::vector<double> marks;

  ProcessSample at(double gamma) const;
};

struct WallSet {
  Vector center;
  double cap_radius = 0.0;
  double offset_low = 0.0;
  double offset_high = 0.0;
};

// mu([B(o,r)]) = 2 * int_0^r cosh^{d-1}
double mu_hit_ball(int d, double r);

// mu of the hyperplanes separating two points at unit distance
double separation_rate(int d);
double mu_separating(const KleinPoint& x, const KleinPoint& y);

// t = tanh(tau) with tau density proportional to cosh^{d-1} on [lo, hi]
double sample_offset(int d, double tau_lo, double tau_hi, Rng& rng);
// inverse of tau -> int_0^tau cosh^{d-1}, Newton with bisection fallback
double invert_cosh_power_integral(int d, double target, double lo, double hi);

ProcessSample sample_process(int d, double gamma, double window_radius, std::uint64_t seed);
MarkedSample sample_marked_process(int d, double gamma_max, double window_radius, std::uint64_t seed);

Hyperplane sample_wall(int d, const WallSet& wall, Rng& rng);
Hyperplane sample_wall(int d, const WallSet& wall, std::uint64_t seed);

// mu of hyperplanes meeting both B(x,r) and B(y,r)
double mu_joint_balls(int d, const KleinPoint& x, const KleinPoint& y, double r);
// same, for two balls whose centres are s apart (exact for separations beyond double range of tanh)
double mu_joint_balls_at_distance(int d, double s, double r);

}  // namespace hypertess
