#include "hypertess/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

Point2 to_p2(const Vector& v) { return Point2(v[0], v[1]); }

bool segment_clear(const ProcessSample& sample, const Vector& x, const Vector& y) {
  for (const Hyperplane& H : sample.hyperplanes)
    if (segment_crosses(H, x, y)) return false;
  return true;
}

int seed_node(const ProbeGraph& graph, const ProcessSample& sample, const KleinPoint& z) {
  const int d = graph.d;
  const double h = graph.spacing;
  std::vector<int> base(d);
  for (int a = 0; a < d; ++a) base[a] = static_cast<int>(std::lround(z[a] / h));
  for (int reach = 1; reach <= 3; ++reach) {
    std::vector<std::pair<double, int>> cand;
    std::vector<int> off(d, -reach);
    while (true) {
      std::vector<int> w(d);
      for (int a = 0; a < d; ++a) w[a] = base[a] + off[a];
      int node = graph.node_at(w);
      if (node >= 0) cand.emplace_back((graph.position(node) - z.coords()).squaredNorm(), node);
      int a = d - 1;
      while (a >= 0 && off[a] == reach) off[a--] = -reach;
      if (a < 0) break;
      ++off[a];
    }
    std::sort(cand.begin(), cand.end());
    for (const auto& [d2, node] : cand)
      if (segment_clear(sample, z.coords(), graph.position(node))) return node;
  }
  throw ResolutionError("component_of: no probe node reachable from the query point; halve the pitch");
}

// nodes of the open subgraph reachable from seed, restricted by keep
template <class Keep>
std::vector<int> flood(const ProbeGraph& graph, int seed, Keep&& keep) {
  const int d = graph.d;
  std::vector<int> members;
  std::vector<char> seen(graph.node_count(), 0);
  std::deque<int> queue{seed};
  seen[seed] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    members.push_back(v);
    for (int a = 0; a < d; ++a) {
      int up = graph.plus[static_cast<std::size_t>(v) * d + a];
      if (up >= 0 && !seen[up] && graph.edge_open(v, a) && keep(v, up)) {
        seen[up] = 1;
        queue.push_back(up);
      }
      int dn = graph.minus[static_cast<std::size_t>(v) * d + a];
      if (dn >= 0 && !seen[dn] && graph.edge_open(dn, a) && keep(v, dn)) {
        seen[dn] = 1;
        queue.push_back(dn);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

void check_excised_ball(const ProcessSample& sample, const KleinPoint& y, double r) {
  if (y.dim() != sample.d) throw UsageError("excised ball: dimension mismatch");
  if (!(r > 0.0)) throw UsageError("excised ball: r must be positive");
  if (!(dist_from_origin(y.coords()) + r < sample.window_radius))
    throw UsageError("excised ball: need dist(o,y) + r < R");
}

}  // namespace

std::vector<signed char> sign_vector(const ProcessSample& sample, const KleinPoint& z) {
  std::vector<signed char> s;
  s.reserve(sample.hyperplanes.size());
  for (const Hyperplane& H : sample.hyperplanes) {
    int v = side(H, z);
    if (v == 0) throw DegenerateError("point lies on a sampled hyperplane");
    s.push_back(static_cast<signed char>(v));
  }
  return s;
}

CellApprox cell_polygon(const ProcessSample& sample, const KleinPoint& z) {
  if (sample.d != 2 || z.dim() != 2) throw UsageError("cell_polygon: planar samples only");
  CellApprox c;
  c.witness = z;
  c.signs = sign_vector(sample, z);
  c.polygon = clip_cell(sample.hyperplanes, to_p2(z.coords()), sample.window_rho());
  c.unbounded_in_window = c.polygon->has_arc();
  return c;
}

CellApprox zero_cell_polygon(const ProcessSample& sample) {
  return cell_polygon(sample, KleinPoint::origin(2));
}

bool node_reaches_window(const ProbeGraph& graph, const ProcessSample& sample, int node) {
  Vector x = graph.position(node);
  double n = x.norm();
  if (n < graph.rho - graph.spacing || n == 0.0) return false;
  Vector P = x * (graph.rho / n);
  return segment_clear(sample, x, P);
}

CellApprox component_of(const ProbeGraph& graph, const ProcessSample& sample, const KleinPoint& z) {
  if (z.dim() != graph.d) throw UsageError("component_of: dimension mismatch");
  if (!(z.norm() < graph.rho)) throw UsageError("component_of: point outside the window");
  CellApprox c;
  c.witness = z;
  c.signs = sign_vector(sample, z);
  int seed = seed_node(graph, sample, z);
  c.probe_members = flood(graph, seed, [](int, int) { return true; });
  for (int v : c.probe_members)
    if (node_reaches_window(graph, sample, v)) {
      c.unbounded_in_window = true;
      break;
    }
  return c;
}

int OutsideComponents2d::unbounded_count() const {
  return static_cast<int>(std::count(reaches_window.begin(), reaches_window.end(), true));
}

int OutsideComponents2d::arc_of(const KleinPoint& z) const {
  Vector w = to_y_frame.apply_coords(z.coords());
  if (!(w.norm() > ball_rho)) return -1;
  return find_arc(free_arcs, std::atan2(w[1], w[0]));
}

OutsideComponents2d outside_components_2d(const ProcessSample& sample, const KleinPoint& y, double r) {
  if (sample.d != 2) throw UsageError("outside_components_2d: planar samples only");
  check_excised_ball(sample, y, r);
  OutsideComponents2d out;
  out.to_y_frame = Isometry::to_origin(y);
  out.ball_rho = std::tanh(r);
  const double rho = sample.window_rho();

  std::vector<std::pair<double, double>> blocked, forbidden;
  for (const Hyperplane& H : sample.hyperplanes) {
    int sy = side(H, y);
    if (sy == 0) throw DegenerateError("outside_components_2d: centre lies on a line");
    Hyperplane moved = out.to_y_frame.apply(H);
    if (auto cap = cut_cap_at_radius(moved, r))
      blocked.emplace_back(std::atan2(cap->center[1], cap->center[0]), cap->radius);
    double half = std::acos(std::min(1.0, H.offset() / rho));
    double ang = std::atan2(H.normal()[1], H.normal()[0]);
    if (sy < 0)
      forbidden.emplace_back(ang, half);
    else
      forbidden.emplace_back(ang + std::numbers::pi, std::numbers::pi - half);
  }
  out.free_arcs = uncovered_arcs(blocked);
  out.reaches_window.assign(out.free_arcs.size(), false);
  if (out.free_arcs.empty()) return out;

  for (const Arc& vis : uncovered_arcs(forbidden)) {
    for (double frac : {0.5, 0.25, 0.75}) {
      double phi = vis.start + frac * vis.length;
      Vector P(2);
      P << rho * std::cos(phi), rho * std::sin(phi);
      Vector w = out.to_y_frame.apply_coords(P);
      int idx = find_arc(out.free_arcs, std::atan2(w[1], w[0]));
      if (idx >= 0) {
        out.reaches_window[idx] = true;
        break;
      }
    }
  }
  return out;
}

int probe_seed(const ProbeGraph& graph, const ProcessSample& sample, const KleinPoint& z) {
  return seed_node(graph, sample, z);
}

int OutsideComponentsProbe::unbounded_count() const {
  return static_cast<int>(std::count(reaches_window.begin(), reaches_window.end(), true));
}

OutsideComponentsProbe outside_components_probe(const ProbeGraph& graph, const ProcessSample& sample,
                                                const KleinPoint& y, double r) {
  check_excised_ball(sample, y, r);
  sign_vector(sample, y);
  int seed = seed_node(graph, sample, y);
  std::vector<int> cell = flood(graph, seed, [](int, int) { return true; });
  Isometry g = Isometry::to_origin(y);
  const double br = std::tanh(r);
  const std::size_t n = graph.node_count();
  std::vector<char> in_cell(n, 0), outside(n, 0);
  std::vector<Vector> moved(n);
  for (int v : cell) {
    in_cell[v] = 1;
    moved[v] = g.apply_coords(graph.position(v));
    outside[v] = moved[v].norm() >= br ? 1 : 0;
  }
  auto keep = [&](int a, int b) {
    if (!in_cell[b] || !outside[b] || !outside[a]) return false;
    // the isometry keeps segments straight; test the moved segment against the round ball
    Vector e = moved[b] - moved[a];
    double s = -moved[a].dot(e) / e.squaredNorm();
    s = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
    return !((moved[a] + s * e).norm() < br);
  };
  OutsideComponentsProbe out;
  out.component.assign(n, -1);
  for (int v : cell) {
    if (!outside[v] || out.component[v] >= 0) continue;
    std::vector<int> comp = flood(graph, v, keep);
    int id = static_cast<int>(out.reaches_window.size());
    bool reaches = false;
    for (int m : comp) {
      out.component[m] = id;
      if (!reaches && node_reaches_window(graph, sample, m)) reaches = true;
    }
    out.reaches_window.push_back(reaches);
  }
  return out;
}

int unbounded_components_outside_ball(const ProbeGraph& graph, const ProcessSample& sample,
                                      const KleinPoint& y, double r) {
  return outside_components_probe(graph, sample, y, r).unbounded_count();
}

int unbounded_components_outside_ball(const ProcessSample& sample, const KleinPoint& y, double r, double h) {
  if (sample.d == 2) return outside_components_2d(sample, y, r).unbounded_count();
  ProbeGraph graph = build_probe_graph(sample, h);
  return unbounded_components_outside_ball(graph, sample, y, r);
}

}  // namespace hypertess
