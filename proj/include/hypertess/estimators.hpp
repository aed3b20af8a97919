#pragma once

#include <cstdint>
#include <vector>

#include "hypertess/estimate.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

// P(o and (tanh s, 0, ...) lie in one cell); target exp(-gamma s)
EstimateReport two_point(int d, double gamma, double s, long n, std::uint64_t seed,
                         Execution exec = Execution::parallel);

// same, for pairs at distance s placed by random isometries moving o by up to max_shift
EstimateReport two_point_placed(int d, double gamma, double s, double max_shift, long n, std::uint64_t seed,
                                Execution exec = Execution::parallel);

// line intersections inside B(o, R_count) per unit area; target gamma^2/pi
EstimateReport vertex_intensity_2d(double gamma, double R_count, double R_window, long n, std::uint64_t seed,
                                   Execution exec = Execution::parallel);

struct CellStats {
  EstimateReport face_intensity;
  EstimateReport mean_area;
  long counted_cells = 0;
  long cut_cells = 0;  // bounded-looking cells with centre in the eroded window but clipped by the window
};

// bounded cells whose hyperboloid barycenter lies in B(o, R - margin)
CellStats cell_stats_2d(double gamma, double R, double margin, long n, std::uint64_t seed,
                        Execution exec = Execution::parallel);

struct MixingPoint {
  double separation = 0.0;
  double mu_joint = 0.0;
  double p_disjoint = 0.0;  // exp(-gamma mu_joint)
};

std::vector<MixingPoint> mixing_decay(int d, double r, double gamma, const std::vector<double>& separations);

}  // namespace hypertess
