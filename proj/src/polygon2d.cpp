#include "hypertess/polygon2d.hpp"

#include <cmath>
#include <numbers>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double wrap_pi(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double ccw_angle(const Point2& p, const Point2& q) {
  double a = std::atan2(q.y(), q.x()) - std::atan2(p.y(), p.x());
  while (a <= 0.0) a += 2.0 * kPi;
  while (a > 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

// area of the Klein-disc triangle (o, p, q) with straight side pq, signed by orientation
double chord_term(const Point2& p, const Point2& q) {
  Point2 e = q - p;
  double len = e.norm();
  if (len == 0.0) return 0.0;
  Point2 n(e.y() / len, -e.x() / len);
  double c = n.dot(p);
  if (c < 0.0) {
    n = -n;
    c = -c;
  }
  if (c < 1e-300) return 0.0;
  double delta = wrap_pi(std::atan2(q.y(), q.x()) - std::atan2(p.y(), p.x()));
  double phi_p = wrap_pi(std::atan2(p.y(), p.x()) - std::atan2(n.y(), n.x()));
  double phi_q = phi_p + delta;
  double a = std::sqrt((1.0 - c) * (1.0 + c));
  auto F = [a](double phi) {
    double s = std::sin(phi) / a;
    s = s > 1.0 ? 1.0 : (s < -1.0 ? -1.0 : s);
    return std::asin(s) - phi;
  };
  return F(phi_q) - F(phi_p);
}

double arc_term(const Point2& p, const Point2& q, double rho) {
  return ccw_angle(p, q) * (1.0 / std::sqrt((1.0 - rho) * (1.0 + rho)) - 1.0);
}

}  // namespace

bool CellPolygon2d::has_arc() const {
  if (full_disc) return true;
  for (bool a : arc_after)
    if (a) return true;
  return false;
}

bool CellPolygon2d::contains(const Point2& p, double tol) const {
  if (p.norm() > rho + tol) return false;
  if (full_disc) return true;
  if (empty()) return false;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (arc_after[i]) continue;
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    Point2 e = b - a;
    double len = e.norm();
    if (len == 0.0) continue;
    if (cross(e, p - a) < -tol * len) return false;
  }
  return true;
}

double CellPolygon2d::euclidean_area() const {
  if (full_disc) return kPi * rho * rho;
  const std::size_t n = vertices.size();
  double A = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    A += 0.5 * cross(a, b);
    if (arc_after[i]) {
      double th = ccw_angle(a, b);
      A += 0.5 * rho * rho * (th - std::sin(th));
    }
  }
  return A;
}

std::vector<Point2> clip_polygon(const std::vector<Hyperplane>& lines, const Point2& witness, double half_width) {
  double W = half_width;
  std::vector<Point2> poly{Point2(-W, -W), Point2(W, -W), Point2(W, W), Point2(-W, W)};
  std::vector<Point2> next;
  Vector w(2);
  w << witness.x(), witness.y();
  for (const Hyperplane& h : lines) {
    if (h.dim() != 2) throw UsageError("clip_polygon: lines must be planar");
    int sgn = side(h, w);
    if (sgn == 0) throw DegenerateError("clip_polygon: witness lies on a line");
    Point2 u(h.normal()[0], h.normal()[1]);
    double t = h.offset();
    // keep g >= 0
    auto g = [&](const Point2& x) { return sgn * (u.dot(x) - t); };
    bool all_in = true;
    for (const Point2& p : poly)
      if (g(p) < 0.0) {
        all_in = false;
        break;
      }
    if (all_in) continue;
    next.clear();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = poly[i];
      const Point2& b = poly[(i + 1) % n];
      double ga = g(a), gb = g(b);
      if (ga >= 0.0) next.push_back(a);
      if ((ga >= 0.0) != (gb >= 0.0)) {
        double s = ga / (ga - gb);
        next.push_back(a + s * (b - a));
      }
    }
    poly.swap(next);
    if (poly.empty()) break;
  }
  return poly;
}

CellPolygon2d intersect_with_disc(const std::vector<Point2>& poly, double rho) {
  CellPolygon2d cell;
  cell.rho = rho;
  const std::size_t n = poly.size();
  if (n < 3) return cell;
  bool inside = true;
  for (const Point2& p : poly)
    if (p.norm() > rho + 1e-9) {
      inside = false;
      break;
    }
  if (inside) {
    cell.vertices = poly;
    cell.arc_after.assign(n, false);
    return cell;
  }
  auto push = [&cell](const Point2& p, bool arc) {
    if (!cell.vertices.empty() && (cell.vertices.back() - p).norm() < 1e-15) {
      cell.arc_after.back() = cell.arc_after.back() || arc;
      return;
    }
    cell.vertices.push_back(p);
    cell.arc_after.push_back(arc);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    Point2 e = q - p;
    double A = e.squaredNorm();
    if (A == 0.0) continue;
    double B = 2.0 * p.dot(e);
    double C = p.squaredNorm() - rho * rho;
    double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) continue;
    double sq = std::sqrt(disc);
    // stable roots
    double qq = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double s1 = qq / A, s2 = (qq != 0.0) ? C / qq : -s1;
    if (s1 > s2) std::swap(s1, s2);
    double lo = s1 > 0.0 ? s1 : 0.0;
    double hi = s2 < 1.0 ? s2 : 1.0;
    if (!(hi - lo > 1e-15)) continue;
    push(p + lo * e, false);
    if (s2 < 1.0) push(p + hi * e, true);
  }
  if (cell.vertices.size() >= 2 && (cell.vertices.front() - cell.vertices.back()).norm() < 1e-15) {
    bool arc = cell.arc_after.back();
    cell.vertices.pop_back();
    cell.arc_after.pop_back();
    if (arc) cell.arc_after.front() = true;
  }
  if (cell.vertices.empty()) {
    // no edge enters the disc: either the polygon swallows it or misses it
    bool origin_in = true;
    for (std::size_t i = 0; i < n; ++i)
      if (cross(poly[(i + 1) % n] - poly[i], -poly[i]) < 0.0) origin_in = false;
    cell.full_disc = origin_in;
  }
  return cell;
}

CellPolygon2d clip_cell(const std::vector<Hyperplane>& lines, const Point2& witness, double rho) {
  if (!(witness.norm() < rho)) throw UsageError("clip_cell: witness outside the window");
  return intersect_with_disc(clip_polygon(lines, witness), rho);
}

double hyperbolic_area(const CellPolygon2d& cell) {
  if (cell.full_disc) {
    double R = std::atanh(cell.rho);
    return 2.0 * kPi * (std::cosh(R) - 1.0);
  }
  if (!cell.has_arc()) return hyperbolic_polygon_area(cell.vertices);
  const std::size_t n = cell.vertices.size();
  double A = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = cell.vertices[i];
    const Point2& b = cell.vertices[(i + 1) % n];
    A += cell.arc_after[i] ? arc_term(a, b, cell.rho) : chord_term(a, b);
  }
  return A;
}

Point2 hyperbolic_barycenter(const std::vector<Point2>& poly) {
  double X0 = 0.0;
  Point2 Xs(0.0, 0.0);
  for (const Point2& p : poly) {
    double w = 1.0 / std::sqrt((1.0 - p.norm()) * (1.0 + p.norm()));
    X0 += w;
    Xs += w * p;
  }
  return Xs / X0;
}

double hyperbolic_polygon_area(const std::vector<Point2>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  Point2 c = hyperbolic_barycenter(poly);
  Vector cv(2);
  cv << c.x(), c.y();
  Isometry g = Isometry::to_origin(KleinPoint(cv));
  std::vector<Point2> moved;
  moved.reserve(n);
  for (const Point2& p : poly) {
    Vector v(2);
    v << p.x(), p.y();
    Vector m = g.apply_coords(v);
    moved.emplace_back(m[0], m[1]);
  }
  double A = 0.0;
  for (std::size_t i = 0; i < n; ++i) A += chord_term(moved[i], moved[(i + 1) % n]);
  return A;
}

}  // namespace hypertess
