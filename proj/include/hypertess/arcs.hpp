#pragma once

#include <vector>

namespace hypertess {

// Arc of the unit circle, counterclockwise from start, length in (0, 2pi].
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double mid() const { return start + 0.5 * length; }
  bool contains(double angle) const;  // open arc
};

double normalize_angle(double a);  // into [0, 2pi)

// Complement of a union of open arcs given as (center, half_width).
std::vector<Arc> uncovered_arcs(const std::vector<std::pair<double, double>>& caps);

// index of the arc containing angle, or -1
int find_arc(const std::vector<Arc>& arcs, double angle);

}  // namespace hypertess
