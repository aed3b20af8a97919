#pragma once

#include <vector>

#include "hypertess/polygon2d.hpp"

namespace hypertess {

// All faces of a line arrangement inside the Klein disc of radius rho,
// traced along half-edges (left-hand faces, counterclockwise boundaries).
class Arrangement2d {
 public:
  static Arrangement2d build(const std::vector<Hyperplane>& lines, double rho);

  double rho() const { return rho_; }
  const std::vector<CellPolygon2d>& faces() const { return faces_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t line_count() const { return line_count_; }

  // interior point of face i
  Point2 witness(std::size_t i) const;
  // index of the face containing p, or -1
  long locate(const Point2& p) const;

 private:
  double rho_ = 0.0;
  std::size_t vertex_count_ = 0;
  std::size_t line_count_ = 0;
  std::vector<CellPolygon2d> faces_;
};

}  // namespace hypertess
