#include "hypertess/encounter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "hypertess/arcs.hpp"
#include "hypertess/errors.hpp"
#include "hypertess/tessellation.hpp"

namespace hypertess {

namespace {

double angle_between(const Vector& a, const Vector& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

}  // namespace

std::vector<Vector> cap_centers(int d) {
  if (d < 2 || d > 20) throw UsageError("cap_centers: need 2 <= d <= 20");
  std::vector<Vector> out;
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (long mask = 0; mask < (1L << d); ++mask) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = (mask >> (d - 1 - i)) & 1 ? -c : c;
    out.push_back(v);
  }
  return out;
}

double r0(int d) {
  if (d < 2) throw UsageError("r0: d must be >= 2");
  return 2.0 * std::atanh(std::sqrt(1.0 - 1.0 / d));
}

double epsilon_rays(int d) { return std::acos(1.0 - 2.0 / d) / 2.0; }

double epsilon_walls_miss(int d, double a) {
  return (std::acos(std::sqrt(1.0 - 1.0 / d)) - std::acos(a)) / 2.0;
}

double epsilon_walls_cover(double b, double r) { return std::acos(b / std::tanh(r)) / 2.0; }

void validate(int d, const EncounterConfig& c) {
  if (d < 2) throw ConfigError("encounter config: d must be >= 2");
  if (!(c.r > r0(d))) throw ConfigError("encounter config: need r > r0(d) = " + num(r0(d)));
  if (!(std::tanh(r0(d)) < c.a)) throw ConfigError("encounter config: need a > tanh(r0(d)) = " + num(std::tanh(r0(d))));
  if (!(c.a < c.b)) throw ConfigError("encounter config: need a < b");
  if (!(c.b < std::tanh(c.r))) throw ConfigError("encounter config: need b < tanh(r) = " + num(std::tanh(c.r)));
  if (!(c.epsilon > 0.0)) throw ConfigError("encounter config: need epsilon > 0");
  if (!(c.epsilon < epsilon_rays(d)))
    throw ConfigError("encounter config: need epsilon < arccos(1-2/d)/2 = " + num(epsilon_rays(d)));
  if (!(c.epsilon < epsilon_walls_miss(d, c.a)))
    throw ConfigError("encounter config: need epsilon < (arccos(sqrt(1-1/d)) - arccos(a))/2 = " +
                      num(epsilon_walls_miss(d, c.a)));
  if (!(c.epsilon < epsilon_walls_cover(c.b, c.r)))
    throw ConfigError("encounter config: need epsilon < arccos(b/tanh r)/2 = " + num(epsilon_walls_cover(c.b, c.r)));
  if (!(c.R > c.r)) throw ConfigError("encounter config: need R > r");
  if (!(c.point_intensity > 0.0)) throw ConfigError("encounter config: need point_intensity > 0");
}

std::vector<Vector> equatorial_mesh(int d, double pitch) {
  if (d < 2) throw UsageError("equatorial_mesh: d must be >= 2");
  if (!(pitch > 0.0)) throw UsageError("equatorial_mesh: pitch must be positive");
  std::vector<Vector> mesh;
  auto embed = [d](int skip, const Vector& w) {
    Vector v(d);
    for (int a = 0, b = 0; a < d; ++a) v[a] = a == skip ? 0.0 : w[b++];
    return v;
  };
  for (int i = 0; i < d; ++i) {
    if (d == 2) {
      for (double s : {1.0, -1.0}) {
        Vector w(1);
        w[0] = s;
        mesh.push_back(embed(i, w));
      }
    } else if (d == 3) {
      long m = static_cast<long>(std::ceil(2.0 * std::numbers::pi / pitch));
      for (long k = 0; k < m; ++k) {
        double th = 2.0 * std::numbers::pi * k / m;
        Vector w(2);
        w << std::cos(th), std::sin(th);
        mesh.push_back(embed(i, w));
      }
    } else {
      // grid on the faces of the cube [-1,1]^{d-1}, projected radially
      const int q = d - 1;
      double pc = pitch / std::sqrt(static_cast<double>(q - 1));
      long m = static_cast<long>(std::ceil(2.0 / pc));
      if (std::pow(static_cast<double>(m), q - 1) * 2 * q * d > 2e7)
        throw UsageError("equatorial_mesh: mesh too fine for this dimension");
      for (int face = 0; face < q; ++face) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<long> idx(q - 1, 0);
          while (true) {
            Vector w(q);
            for (int a = 0, b = 0; a < q; ++a) w[a] = a == face ? sgn : -1.0 + (idx[b++] + 0.5) * (2.0 / m);
            mesh.push_back(embed(i, w.normalized()));
            int b = q - 2;
            while (b >= 0 && idx[b] == m - 1) idx[b--] = 0;
            if (b < 0) break;
            ++idx[b];
          }
        }
      }
    }
  }
  return mesh;
}

std::vector<Vector> cover_equatorial_set(int d, double eps) {
  std::vector<Vector> mesh = equatorial_mesh(d, eps / 4.0);
  std::vector<Vector> centers;
  const double spacing = 0.75 * eps;
  for (const Vector& u : mesh) {
    bool near = false;
    for (const Vector& c : centers)
      if (angle_between(u, c) <= spacing) {
        near = true;
        break;
      }
    if (!near) centers.push_back(u);
  }
  return centers;
}

std::vector<Hyperplane> build_walls(int d, const EncounterConfig& config, std::uint64_t seed) {
  validate(d, config);
  std::vector<Vector> centers = cover_equatorial_set(d, config.epsilon);
  std::vector<Hyperplane> walls;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    WallSet w{centers[i], config.epsilon, config.a, config.b};
    walls.push_back(sample_wall(d, w, derive_seed(seed, i)));
  }
  return walls;
}

bool walls_cover_G(const std::vector<Hyperplane>& walls, int d, double r, double eps) {
  const double rr = std::tanh(r);
  for (const Vector& u : equatorial_mesh(d, eps / 16.0)) {
    Vector end = rr * u;
    Vector o = Vector::Zero(d);
    bool hit = false;
    for (const Hyperplane& H : walls)
      if (segment_crosses(H, o, end)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool walls_miss_caps(const std::vector<Hyperplane>& walls, int d, double eps) {
  for (const Vector& v : cap_centers(d))
    for (const Hyperplane& H : walls)
      if (angle_between(H.normal(), v) - eps < std::acos(H.offset())) return false;
  return true;
}

DetectionResult detect_encounter_points(const ProcessSample& sample, const std::vector<KleinPoint>& points, double r,
                                        double h) {
  for (const KleinPoint& y : points) {
    if (y.dim() != sample.d) throw UsageError("detect_encounter_points: dimension mismatch");
    if (!(dist_from_origin(y.coords()) + r < sample.window_radius))
      throw UsageError("detect_encounter_points: points must lie in B(o, R - r)");
  }
  const std::size_t n = points.size();
  DetectionResult res;
  res.components.assign(n, -1);
  std::vector<char> isolated(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist(points[i], points[j]) < 2.0 * r) isolated[i] = isolated[j] = 0;
  bool any = std::find(isolated.begin(), isolated.end(), 1) != isolated.end();
  if (!any) return res;
  std::optional<ProbeGraph> graph;
  if (sample.d != 2) graph = build_probe_graph(sample, h);
  for (std::size_t i = 0; i < n; ++i) {
    if (!isolated[i]) continue;
    try {
      int c = sample.d == 2 ? unbounded_components_outside_ball(sample, points[i], r)
                            : unbounded_components_outside_ball(*graph, sample, points[i], r);
      res.components[i] = c;
      if (c >= 3) res.encounter.push_back(static_cast<int>(i));
    } catch (const DegenerateError&) {
      ++res.indeterminate;
    } catch (const ResolutionError&) {
      ++res.indeterminate;
    }
  }
  return res;
}

std::vector<std::pair<int, int>> build_forest(const ProcessSample& sample, const std::vector<int>& encounter,
                                              const std::vector<KleinPoint>& points,
                                              const std::vector<double>& labels, double r, double h) {
  if (labels.size() != points.size()) throw UsageError("build_forest: one label per point");
  std::set<std::pair<int, int>> edges;
  if (encounter.size() < 2) return {};
  std::optional<ProbeGraph> graph;
  if (sample.d != 2) graph = build_probe_graph(sample, h);

  for (int yi : encounter) {
    const KleinPoint& y = points.at(yi);
    // best candidate per unbounded piece: (distance, label, index)
    std::map<int, std::tuple<double, double, int>> best;
    auto offer = [&](int piece, int zi) {
      auto cand = std::make_tuple(dist(y, points[zi]), labels[zi], zi);
      auto it = best.find(piece);
      if (it == best.end() || cand < it->second) best[piece] = cand;
    };
    if (sample.d == 2) {
      OutsideComponents2d comps = outside_components_2d(sample, y, r);
      for (int zi : encounter) {
        if (zi == yi) continue;
        bool same_cell = true;
        for (const Hyperplane& H : sample.hyperplanes)
          if (segment_crosses(H, y, points[zi])) {
            same_cell = false;
            break;
          }
        if (!same_cell) continue;
        int piece = comps.arc_of(points[zi]);
        if (piece >= 0 && comps.reaches_window[piece]) offer(piece, zi);
      }
    } else {
      OutsideComponentsProbe comps = outside_components_probe(*graph, sample, y, r);
      for (int zi : encounter) {
        if (zi == yi) continue;
        int node = -1;
        try {
          node = probe_seed(*graph, sample, points[zi]);
        } catch (const ResolutionError&) {
          continue;
        }
        int piece = comps.component[node];
        if (piece >= 0 && comps.reaches_window[piece]) offer(piece, zi);
      }
    }
    for (const auto& [piece, cand] : best) {
      int zi = std::get<2>(cand);
      edges.emplace(std::min(yi, zi), std::max(yi, zi));
    }
  }
  return {edges.begin(), edges.end()};
}

EncounterRate encounter_rate(int d, double gamma, const EncounterConfig& config, long n, std::uint64_t seed,
                             Execution exec) {
  if (n < 2) throw UsageError("encounter_rate: n must be >= 2");
  if (!(config.R > config.r) || !(config.r > 0.0)) throw UsageError("encounter_rate: need 0 < r < R");
  if (!(config.point_intensity > 0.0)) throw UsageError("encounter_rate: point intensity must be positive");
  const double RY = config.R - config.r - 1e-9;
  const double volY = ball_volume(d, RY);
  std::vector<long> found(n, 0), npts(n, 0), indet(n, 0);
  auto one = [&](long i) {
    std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(i));
    ProcessSample s = sample_process(d, gamma, config.R, sub);
    Rng rng(derive_seed(sub, 0x7e11));
    std::poisson_distribution<long> count(config.point_intensity * volY);
    long m = count(rng);
    std::vector<KleinPoint> pts;
    for (long k = 0; k < m; ++k) pts.push_back(random_ball_point(d, RY, rng));
    DetectionResult det = detect_encounter_points(s, pts, config.r);
    found[i] = static_cast<long>(det.encounter.size());
    npts[i] = m;
    indet[i] = det.indeterminate;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 2)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  Moments m;
  long windows_hit = 0;
  EncounterRate out;
  for (long i = 0; i < n; ++i) {
    m.add(static_cast<double>(found[i]));
    windows_hit += found[i] > 0;
    out.points += npts[i];
    out.detected += found[i];
    out.indeterminate += indet[i];
  }
  out.windows = n;
  out.window_fraction = static_cast<double>(windows_hit) / n;
  out.window_fraction_se = std::sqrt(out.window_fraction * (1.0 - out.window_fraction) / n);
  out.rate.name = "encounter_rate";
  out.rate.parameters = {{"d", d},        {"gamma", gamma},     {"R", config.R},
                         {"r", config.r}, {"point_intensity", config.point_intensity}};
  out.rate.estimate = m.mean() / volY;
  out.rate.standard_error = m.se() / volY;
  out.rate.n = n;
  out.rate.seed = seed;
  out.rate.extras = {{"window_fraction", out.window_fraction},
                     {"window_fraction_se", out.window_fraction_se},
                     {"isolation_probability", std::exp(-config.point_intensity * ball_volume(d, 2.0 * config.r))},
                     {"points", static_cast<double>(out.points)},
                     {"detected", static_cast<double>(out.detected)},
                     {"indeterminate", static_cast<double>(out.indeterminate)}};
  return out;
}

std::vector<bool> cap_ray_events_2d(const ProcessSample& sample, double eps) {
  if (sample.d != 2) throw UsageError("cap_ray_events_2d: planar samples only");
  const double rho = sample.window_rho();
  std::vector<std::pair<double, double>> forbidden;
  for (const Hyperplane& H : sample.hyperplanes) {
    if (side(H, KleinPoint::origin(2)) == 0) throw DegenerateError("cap_ray_events_2d: o lies on a line");
    forbidden.emplace_back(std::atan2(H.normal()[1], H.normal()[0]), std::acos(std::min(1.0, H.offset() / rho)));
  }
  std::vector<Arc> visible = uncovered_arcs(forbidden);
  std::vector<bool> out;
  for (const Vector& v : cap_centers(2)) {
    Arc cap{normalize_angle(std::atan2(v[1], v[0]) - eps), 2.0 * eps};
    bool hit = false;
    for (const Arc& a : visible)
      if (a.length >= 2.0 * std::numbers::pi || a.contains(cap.start) || cap.contains(a.start) ||
          a.contains(cap.mid())) {
        hit = true;
        break;
      }
    out.push_back(hit);
  }
  return out;
}

}  // namespace hypertess
