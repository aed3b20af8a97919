#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "hypertess/io.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/polygon2d.hpp"

namespace hypertess {

struct Scene2d {
  ProcessSample sample;
  std::optional<CellPolygon2d> zero_cell;
  std::vector<KleinPoint> points;     // drawn small
  std::vector<int> highlighted;       // indices into points drawn large
  std::vector<std::pair<int, int>> edges;
};

// 1000 x 1000 viewport, window disc of radius 480 px
void write_svg(std::ostream& out, const Scene2d& scene, const Provenance& provenance);

}  // namespace hypertess
