#include "hypertess/render.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

constexpr double kCenter = 500.0;
constexpr double kRadius = 480.0;

struct Frame {
  double scale;
  double x(double v) const { return kCenter + scale * v; }
  double y(double v) const { return kCenter - scale * v; }  // svg y points down
};

std::string f(double v) { return format_double(std::round(v * 1000.0) / 1000.0); }

}  // namespace

void write_svg(std::ostream& out, const Scene2d& scene, const Provenance& provenance) {
  if (scene.sample.d != 2) throw UsageError("render: planar samples only");
  const double rho = scene.sample.window_rho();
  Frame fr{kRadius / rho};
  write_provenance(out, provenance, OutputFormat::svg);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
  out << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

  if (scene.zero_cell) {
    const CellPolygon2d& c = *scene.zero_cell;
    if (c.full_disc) {
      out << "<circle cx=\"500\" cy=\"500\" r=\"480\" fill=\"#f4c542\" fill-opacity=\"0.5\"/>\n";
    } else if (!c.empty()) {
      out << "<path d=\"M " << f(fr.x(c.vertices[0][0])) << " " << f(fr.y(c.vertices[0][1]));
      const std::size_t m = c.vertices.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Point2& p = c.vertices[i];
        const Point2& q = c.vertices[(i + 1) % m];
        if (c.arc_after[i]) {
          // counterclockwise in the model is clockwise on screen, sweep flag 0
          double span = std::atan2(q[1], q[0]) - std::atan2(p[1], p[0]);
          if (span < 0) span += 2.0 * std::numbers::pi;
          out << " A 480 480 0 " << (span > std::numbers::pi ? 1 : 0) << " 0 " << f(fr.x(q[0])) << " " << f(fr.y(q[1]));
        } else {
          out << " L " << f(fr.x(q[0])) << " " << f(fr.y(q[1]));
        }
      }
      out << " Z\" fill=\"#f4c542\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
    }
  }

  out << "<circle cx=\"500\" cy=\"500\" r=\"480\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";

  for (const Hyperplane& H : scene.sample.hyperplanes) {
    const Vector& u = H.normal();
    double t = H.offset();
    if (!(t < rho)) continue;
    double half = std::sqrt(rho * rho - t * t);
    Point2 foot(t * u[0], t * u[1]);
    Point2 dir(-u[1], u[0]);
    Point2 a = foot + half * dir, b = foot - half * dir;
    out << "<line x1=\"" << f(fr.x(a[0])) << "\" y1=\"" << f(fr.y(a[1])) << "\" x2=\"" << f(fr.x(b[0]))
        << "\" y2=\"" << f(fr.y(b[1])) << "\" stroke=\"#1f3b73\" stroke-width=\"1\"/>\n";
  }

  for (const auto& [i, j] : scene.edges) {
    const KleinPoint& p = scene.points.at(i);
    const KleinPoint& q = scene.points.at(j);
    out << "<line x1=\"" << f(fr.x(p[0])) << "\" y1=\"" << f(fr.y(p[1])) << "\" x2=\"" << f(fr.x(q[0]))
        << "\" y2=\"" << f(fr.y(q[1])) << "\" stroke=\"#2a9d3f\" stroke-width=\"2\"/>\n";
  }
  for (const KleinPoint& p : scene.points)
    out << "<circle cx=\"" << f(fr.x(p[0])) << "\" cy=\"" << f(fr.y(p[1])) << "\" r=\"1.5\" fill=\"#555555\"/>\n";
  for (int i : scene.highlighted) {
    const KleinPoint& p = scene.points.at(i);
    out << "<circle cx=\"" << f(fr.x(p[0])) << "\" cy=\"" << f(fr.y(p[1])) << "\" r=\"5\" fill=\"#c0392b\"/>\n";
  }
  out << "<circle cx=\"500\" cy=\"500\" r=\"3\" fill=\"black\"/>\n";
  out << "</svg>\n";
}

}  // namespace hypertess
