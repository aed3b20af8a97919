#include "hypertess/arrangement2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

struct LineRec {
  Point2 u, dir, foot;
  double t = 0.0, half = 0.0;
  std::vector<std::pair<double, int>> cuts;  // (s, vertex)
  std::size_t seg_base = 0;
};

struct VertexRec {
  Point2 p;
  int line[2];
  int pos[2];  // node index along each line (1-based, 0 is the -half endpoint)
};

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

Arrangement2d Arrangement2d::build(const std::vector<Hyperplane>& lines, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw UsageError("Arrangement2d: rho must lie in (0,1)");
  Arrangement2d arr;
  arr.rho_ = rho;

  std::vector<LineRec> L;
  for (const Hyperplane& h : lines) {
    if (h.dim() != 2) throw UsageError("Arrangement2d: lines must be planar");
    if (!(h.offset() < rho)) continue;
    LineRec r;
    r.u = Point2(h.normal()[0], h.normal()[1]);
    r.dir = Point2(-r.u.y(), r.u.x());
    r.t = h.offset();
    r.foot = r.t * r.u;
    r.half = std::sqrt((rho - r.t) * (rho + r.t));
    L.push_back(r);
  }
  const int N = static_cast<int>(L.size());
  arr.line_count_ = static_cast<std::size_t>(N);
  if (N == 0) {
    CellPolygon2d disc;
    disc.rho = rho;
    disc.full_disc = true;
    arr.faces_.push_back(disc);
    return arr;
  }

  std::vector<VertexRec> V;
  const double rho2 = rho * rho;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      double det = L[i].u.x() * L[j].u.y() - L[i].u.y() * L[j].u.x();
      if (std::fabs(det) < 1e-15) continue;
      double x = (L[i].t * L[j].u.y() - L[j].t * L[i].u.y()) / det;
      double y = (L[i].u.x() * L[j].t - L[j].u.x() * L[i].t) / det;
      if (!(x * x + y * y < rho2)) continue;
      Point2 p(x, y);
      int id = static_cast<int>(V.size());
      V.push_back(VertexRec{p, {i, j}, {0, 0}});
      L[i].cuts.emplace_back(L[i].dir.dot(p), id);
      L[j].cuts.emplace_back(L[j].dir.dot(p), id);
    }
  }
  arr.vertex_count_ = V.size();

  std::size_t seg_total = 0;
  for (int i = 0; i < N; ++i) {
    auto& c = L[i].cuts;
    std::sort(c.begin(), c.end());
    for (std::size_t k = 0; k < c.size(); ++k) {
      VertexRec& v = V[c[k].second];
      int slot = v.line[0] == i ? 0 : 1;
      v.pos[slot] = static_cast<int>(k) + 1;
    }
    L[i].seg_base = seg_total;
    seg_total += c.size() + 1;
  }

  // endpoints on the circle, ccw order
  struct End {
    double angle;
    int line, which;  // which 0: s = -half, 1: s = +half
  };
  std::vector<End> ends;
  ends.reserve(2 * N);
  for (int i = 0; i < N; ++i) {
    Point2 a = L[i].foot - L[i].half * L[i].dir;
    Point2 b = L[i].foot + L[i].half * L[i].dir;
    ends.push_back({std::atan2(a.y(), a.x()), i, 0});
    ends.push_back({std::atan2(b.y(), b.x()), i, 1});
  }
  std::vector<int> order(ends.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ends[a].angle != ends[b].angle) return ends[a].angle < ends[b].angle;
    return a < b;
  });
  std::vector<int> next_end(ends.size());
  for (std::size_t k = 0; k < order.size(); ++k) next_end[order[k]] = order[(k + 1) % order.size()];
  auto end_index = [](int line, int which) { return 2 * line + which; };

  auto node_point = [&](int i, int node) -> Point2 {
    int m = static_cast<int>(L[i].cuts.size());
    if (node == 0) return L[i].foot - L[i].half * L[i].dir;
    if (node == m + 1) return L[i].foot + L[i].half * L[i].dir;
    return V[L[i].cuts[node - 1].second].p;
  };

  std::vector<char> visited(2 * seg_total, 0);
  auto he_id = [&](int i, int k, int dir) { return 2 * (L[i].seg_base + k) + (dir > 0 ? 1 : 0); };

  for (int i0 = 0; i0 < N; ++i0) {
    int m0 = static_cast<int>(L[i0].cuts.size());
    for (int k0 = 0; k0 <= m0; ++k0) {
      for (int dir0 : {1, -1}) {
        if (visited[he_id(i0, k0, dir0)]) continue;
        CellPolygon2d face;
        face.rho = rho;
        int i = i0, k = k0, dir = dir0;
        for (std::size_t guard = 0;; ++guard) {
          if (guard > 4 * seg_total + 8) throw NumericError("Arrangement2d: face traversal did not close");
          std::size_t id = he_id(i, k, dir);
          if (visited[id]) break;
          visited[id] = 1;
          int m = static_cast<int>(L[i].cuts.size());
          int start = dir > 0 ? k : k + 1;
          int stop = dir > 0 ? k + 1 : k;
          face.vertices.push_back(node_point(i, start));
          face.arc_after.push_back(false);
          if (stop == 0 || stop == m + 1) {
            face.vertices.push_back(node_point(i, stop));
            face.arc_after.push_back(true);
            int e = next_end[end_index(i, stop == 0 ? 0 : 1)];
            int j = ends[e].line;
            int mj = static_cast<int>(L[j].cuts.size());
            if (ends[e].which == 0) {
              i = j, k = 0, dir = 1;
            } else {
              i = j, k = mj, dir = -1;
            }
          } else {
            const VertexRec& v = V[L[i].cuts[stop - 1].second];
            int slot = v.line[0] == i ? 1 : 0;
            int j = v.line[slot];
            int pj = v.pos[slot];
            Point2 a = dir * L[i].dir;
            int nd = cross(a, L[j].dir) > 0.0 ? 1 : -1;
            i = j;
            dir = nd;
            k = nd > 0 ? pj : pj - 1;
          }
        }
        arr.faces_.push_back(std::move(face));
      }
    }
  }
  return arr;
}

Point2 Arrangement2d::witness(std::size_t f) const {
  const CellPolygon2d& c = faces_.at(f);
  if (c.full_disc) return Point2(0.0, 0.0);
  Point2 sum(0.0, 0.0);
  double cnt = 0.0;
  const std::size_t n = c.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum += c.vertices[i];
    cnt += 1.0;
    if (c.arc_after[i]) {
      const Point2& a = c.vertices[i];
      const Point2& b = c.vertices[(i + 1) % n];
      double th0 = std::atan2(a.y(), a.x());
      double th = std::atan2(b.y(), b.x()) - th0;
      while (th <= 0.0) th += 2.0 * std::numbers::pi;
      double mid = th0 + 0.5 * th;
      sum += c.rho * Point2(std::cos(mid), std::sin(mid));
      cnt += 1.0;
    }
  }
  return sum / cnt;
}

long Arrangement2d::locate(const Point2& p) const {
  for (std::size_t f = 0; f < faces_.size(); ++f)
    if (faces_[f].contains(p, 0.0)) return static_cast<long>(f);
  return -1;
}

}  // namespace hypertess
