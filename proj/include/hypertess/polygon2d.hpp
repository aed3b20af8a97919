#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hypertess/geometry.hpp"

namespace hypertess {

using Point2 = Eigen::Vector2d;

// Convex region of the Klein disc of radius rho bounded by chords and
// arcs of the window circle. Vertices run counterclockwise; arc_after[i]
// marks that the boundary from vertex i to vertex i+1 follows the circle.
struct CellPolygon2d {
  double rho = 0.0;
  bool full_disc = false;
  std::vector<Point2> vertices;
  std::vector<bool> arc_after;

  bool has_arc() const;
  // a chord closed by one arc has only two vertices
  bool empty() const { return !full_disc && (vertices.size() < 2 || (vertices.size() == 2 && !has_arc())); }
  // closed-region membership up to tol
  bool contains(const Point2& p, double tol = 1e-12) const;
  double euclidean_area() const;
};

// Cell of the arrangement containing the witness: the disc of radius rho
// clipped against every line on the witness's side. Throws DegenerateError
// when the witness lies on a line.
CellPolygon2d clip_cell(const std::vector<Hyperplane>& lines, const Point2& witness, double rho);

// Convex polygon clipping only (no disc), starting from a large square.
std::vector<Point2> clip_polygon(const std::vector<Hyperplane>& lines, const Point2& witness,
                                 double half_width = 2.0);

// Intersect a convex polygon with the disc of radius rho.
CellPolygon2d intersect_with_disc(const std::vector<Point2>& poly, double rho);

// Hyperbolic area of a region of the Klein disc, closed form per boundary piece.
double hyperbolic_area(const CellPolygon2d& cell);

// Hyperbolic area of a convex polygon (no arcs), computed after moving the
// hyperboloid barycenter of the vertices to the origin.
double hyperbolic_polygon_area(const std::vector<Point2>& poly);

// Klein point whose lift is the normalized sum of the vertex lifts.
Point2 hyperbolic_barycenter(const std::vector<Point2>& poly);

}  // namespace hypertess
