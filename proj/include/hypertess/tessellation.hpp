#pragma once

#include <optional>
#include <vector>

#include "hypertess/arcs.hpp"
#include "hypertess/arrangement2d.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/polygon2d.hpp"
#include "hypertess/probe_graph.hpp"

namespace hypertess {

// Window-level description of one cell of the vacant set.
struct CellApprox {
  KleinPoint witness;
  std::vector<signed char> signs;     // side of the witness for every sampled hyperplane
  bool unbounded_in_window = false;
  std::vector<int> probe_members;     // probe path
  std::optional<CellPolygon2d> polygon;  // exact planar path
};

std::vector<signed char> sign_vector(const ProcessSample& sample, const KleinPoint& z);

// exact cell of o (d = 2)
CellApprox zero_cell_polygon(const ProcessSample& sample);
// exact cell of any window point (d = 2)
CellApprox cell_polygon(const ProcessSample& sample, const KleinPoint& z);

// flood fill of the probe graph from a node reachable from z by a clear segment
CellApprox component_of(const ProbeGraph& graph, const ProcessSample& sample, const KleinPoint& z);

// node within one pitch of the window sphere whose outward radial segment is clear
bool node_reaches_window(const ProbeGraph& graph, const ProcessSample& sample, int node);

// Pieces of C(y) minus B(y, r) in the plane, as arcs of free directions seen
// from y; an arc is unbounded-in-window when the cell reaches the window
// circle through it.
struct OutsideComponents2d {
  Isometry to_y_frame{2};
  double ball_rho = 0.0;              // Euclidean radius of the excised ball in the y frame
  std::vector<Arc> free_arcs;        // directions at y whose ray leaves B(y,r) inside the cell
  std::vector<bool> reaches_window;  // per free arc
  int unbounded_count() const;
  // free arc holding z (z in the cell, outside the ball), or -1
  int arc_of(const KleinPoint& z) const;
};

OutsideComponents2d outside_components_2d(const ProcessSample& sample, const KleinPoint& y, double r);

// probe node nearest to z joined to z by a clear segment; ResolutionError when none
int probe_seed(const ProbeGraph& graph, const ProcessSample& sample, const KleinPoint& z);

// probe version of the pieces of C(y) minus B(y, r)
struct OutsideComponentsProbe {
  std::vector<int> component;        // per node, -1 outside the pieces
  std::vector<bool> reaches_window;  // per piece
  int unbounded_count() const;
};

OutsideComponentsProbe outside_components_probe(const ProbeGraph& graph, const ProcessSample& sample,
                                                const KleinPoint& y, double r);

// components of C(y) \ B(y, r) reaching the window sphere; exact in d = 2,
// probe lattice of pitch h otherwise
int unbounded_components_outside_ball(const ProcessSample& sample, const KleinPoint& y, double r,
                                      double h = 0.01);
int unbounded_components_outside_ball(const ProbeGraph& graph, const ProcessSample& sample,
                                      const KleinPoint& y, double r);

}  // namespace hypertess
