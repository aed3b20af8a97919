#include "hypertess/estimators.hpp"

#include <cmath>
#include <numbers>

#include "hypertess/arrangement2d.hpp"
#include "hypertess/errors.hpp"

namespace hypertess {

double Moments::variance() const {
  if (n < 2) return 0.0;
  double m = mean();
  double v = (sum2 - n * m * m) / (n - 1.0);
  return v > 0.0 ? v : 0.0;
}

double Moments::se() const { return n > 0 ? std::sqrt(variance() / n) : 0.0; }

double EstimateReport::z_score() const {
  if (!target) return 0.0;
  if (standard_error == 0.0) return estimate == *target ? 0.0 : INFINITY;
  return (estimate - *target) / standard_error;
}

double EstimateReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras)
    if (k == key) return v;
  throw UsageError("EstimateReport: no extra named " + key);
}

namespace {

template <class Body>
void replicate(long n, Execution exec, Body&& body) {
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

EstimateReport same_cell_report(const char* name, int d, double gamma, double s, long n, std::uint64_t seed,
                                long hits) {
  EstimateReport rep;
  rep.name = name;
  rep.parameters = {{"d", d}, {"gamma", gamma}, {"s", s}};
  double p = static_cast<double>(hits) / n;
  rep.estimate = p;
  rep.standard_error = std::sqrt(p * (1.0 - p) / n);
  rep.target = std::exp(-gamma * s);
  rep.n = n;
  rep.seed = seed;
  rep.extras = {{"target_separation_rate", std::exp(-gamma * separation_rate(d) * s)},
                {"separation_rate", separation_rate(d)}};
  return rep;
}

bool no_separating(const ProcessSample& sample, const Vector& x, const Vector& y) {
  for (const Hyperplane& H : sample.hyperplanes)
    if (segment_crosses(H, x, y)) return false;
  return true;
}

}  // namespace

EstimateReport two_point(int d, double gamma, double s, long n, std::uint64_t seed, Execution exec) {
  if (!(s > 0.0)) throw UsageError("two_point: s must be positive");
  if (n < 2) throw UsageError("two_point: n must be >= 2");
  const double R = s + 0.25;
  Vector x = Vector::Zero(d), y = Vector::Zero(d);
  y[0] = std::tanh(s);
  std::vector<char> same(n, 0);
  replicate(n, exec, [&](long i) {
    ProcessSample smp = sample_process(d, gamma, R, derive_seed(seed, static_cast<std::uint64_t>(i)));
    same[i] = no_separating(smp, x, y) ? 1 : 0;
  });
  long hits = 0;
  for (char c : same) hits += c;
  EstimateReport rep = same_cell_report("two_point", d, gamma, s, n, seed, hits);
  rep.parameters.emplace_back("R", R);
  return rep;
}

EstimateReport two_point_placed(int d, double gamma, double s, double max_shift, long n, std::uint64_t seed,
                                Execution exec) {
  if (!(s > 0.0)) throw UsageError("two_point_placed: s must be positive");
  if (n < 2) throw UsageError("two_point_placed: n must be >= 2");
  std::vector<char> same(n, 0);
  replicate(n, exec, [&](long i) {
    std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(derive_seed(sub, 0x9a1d));
    Isometry g = random_isometry(d, max_shift, rng);
    Vector e = Vector::Zero(d);
    e[0] = std::tanh(s);
    KleinPoint x = g.apply(KleinPoint::origin(d));
    KleinPoint y = g.apply(KleinPoint(e));
    double R = std::max(dist_from_origin(x.coords()), dist_from_origin(y.coords())) + 0.25;
    ProcessSample smp = sample_process(d, gamma, R, sub);
    same[i] = no_separating(smp, x.coords(), y.coords()) ? 1 : 0;
  });
  long hits = 0;
  for (char c : same) hits += c;
  EstimateReport rep = same_cell_report("two_point_placed", d, gamma, s, n, seed, hits);
  rep.parameters.emplace_back("max_shift", max_shift);
  return rep;
}

EstimateReport vertex_intensity_2d(double gamma, double R_count, double R_window, long n, std::uint64_t seed,
                                   Execution exec) {
  if (!(R_count > 0.0) || R_window < R_count) throw UsageError("vertex_intensity_2d: need 0 < R_count <= R_window");
  if (n < 2) throw UsageError("vertex_intensity_2d: n must be >= 2");
  const double rc = std::tanh(R_count);
  std::vector<long> counts(n, 0);
  replicate(n, exec, [&](long i) {
    ProcessSample smp = sample_process(2, gamma, R_window, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto& L = smp.hyperplanes;
    long c = 0;
    for (std::size_t a = 0; a < L.size(); ++a) {
      for (std::size_t b = a + 1; b < L.size(); ++b) {
        const Vector& u = L[a].normal();
        const Vector& v = L[b].normal();
        double det = u[0] * v[1] - u[1] * v[0];
        if (det == 0.0) continue;
        double x = (L[a].offset() * v[1] - L[b].offset() * u[1]) / det;
        double y = (u[0] * L[b].offset() - v[0] * L[a].offset()) / det;
        if (x * x + y * y < rc * rc) ++c;
      }
    }
    counts[i] = c;
  });
  Moments m;
  for (long c : counts) m.add(static_cast<double>(c));
  const double area = ball_volume(2, R_count);
  EstimateReport rep;
  rep.name = "vertex_intensity_2d";
  rep.parameters = {{"gamma", gamma}, {"R_count", R_count}, {"R_window", R_window}};
  rep.estimate = m.mean() / area;
  rep.standard_error = m.se() / area;
  rep.target = gamma * gamma / std::numbers::pi;
  rep.n = n;
  rep.seed = seed;
  rep.extras = {{"mean_count", m.mean()}, {"edge_intensity", 2.0 * rep.estimate}};
  return rep;
}

CellStats cell_stats_2d(double gamma, double R, double margin, long n, std::uint64_t seed, Execution exec) {
  if (!(margin > 0.0) || !(R > margin)) throw UsageError("cell_stats_2d: need 0 < margin < R");
  if (n < 2) throw UsageError("cell_stats_2d: n must be >= 2");
  const double inner = std::tanh(R - margin);
  std::vector<long> counts(n, 0), cut(n, 0);
  std::vector<Moments> areas(n);
  replicate(n, exec, [&](long i) {
    ProcessSample smp = sample_process(2, gamma, R, derive_seed(seed, static_cast<std::uint64_t>(i)));
    Arrangement2d arr = Arrangement2d::build(smp.hyperplanes, smp.window_rho());
    for (const CellPolygon2d& f : arr.faces()) {
      if (f.full_disc) continue;
      if (f.has_arc()) {
        // clipped cells only matter as a diagnostic when their centre is inside
        if (hyperbolic_barycenter(f.vertices).norm() < inner) ++cut[i];
        continue;
      }
      if (!(hyperbolic_barycenter(f.vertices).norm() < inner)) continue;
      ++counts[i];
      areas[i].add(hyperbolic_polygon_area(f.vertices));
    }
  });
  Moments c, a;
  long cut_total = 0;
  for (long i = 0; i < n; ++i) {
    c.add(static_cast<double>(counts[i]));
    a.merge(areas[i]);
    cut_total += cut[i];
  }
  const double vol = ball_volume(2, R - margin);
  const double D = (2.0 * gamma * gamma - 1.0) / (2.0 * std::numbers::pi);
  CellStats out;
  out.counted_cells = a.n;
  out.cut_cells = cut_total;
  auto base = [&](const char* name) {
    EstimateReport r;
    r.name = name;
    r.parameters = {{"gamma", gamma}, {"R", R}, {"margin", margin}};
    r.n = n;
    r.seed = seed;
    return r;
  };
  out.face_intensity = base("face_intensity_2d");
  out.face_intensity.estimate = c.mean() / vol;
  out.face_intensity.standard_error = c.se() / vol;
  out.face_intensity.target = D;
  out.face_intensity.extras = {{"cut_cells", static_cast<double>(cut_total)},
                               {"counted_cells", static_cast<double>(a.n)}};
  out.mean_area = base("mean_bounded_cell_area_2d");
  out.mean_area.estimate = a.mean();
  out.mean_area.standard_error = a.se();
  out.mean_area.target = 1.0 / D;
  out.mean_area.extras = {{"intensity_times_area", out.face_intensity.estimate * a.mean()},
                          {"counted_cells", static_cast<double>(a.n)}};
  return out;
}

std::vector<MixingPoint> mixing_decay(int d, double r, double gamma, const std::vector<double>& separations) {
  if (!(r > 0.0)) throw UsageError("mixing_decay: r must be positive");
  std::vector<MixingPoint> out;
  for (double s : separations) {
    if (!(s >= 0.0)) throw UsageError("mixing_decay: separations must be >= 0");
    MixingPoint p;
    p.separation = s;
    p.mu_joint = mu_joint_balls_at_distance(d, s, r);
    p.p_disjoint = std::exp(-gamma * p.mu_joint);
    out.push_back(p);
  }
  return out;
}

}  // namespace hypertess
