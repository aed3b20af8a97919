#include "hypertess/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hypertess/arrangement2d.hpp"
#include "hypertess/errors.hpp"
#include "hypertess/tessellation.hpp"

namespace hypertess {

double gamma_crit(int d) {
  if (d < 2) throw UsageError("gamma_crit: d must be >= 2");
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  double ratio = std::exp(std::lgamma(0.5 * (d - 1)) - std::lgamma(0.5 * d));
  if (d < 60) ratio = std::tgamma(0.5 * (d - 1)) / std::tgamma(0.5 * d);
  return (d - 1.0) * (d - 1.0) * sqrt_pi * ratio;
}

double gamma_crit_face(int d, int k) {
  if (d < 3 || k < 2 || k > d - 1) throw UsageError("gamma_crit_face: need 2 <= k <= d-1");
  return (k - 1.0) / (d - 1.0) * gamma_crit(d);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError("bad grid entry");
    } catch (const std::logic_error&) {
      throw UsageError("grid '" + text + "': expected a:b:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError("grid '" + text + "': expected a:b:step with a <= b and step > 0");
  std::vector<double> g;
  long steps = std::lround(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long i = 0; i <= steps; ++i) g.push_back(parts[0] + i * parts[2]);
  return g;
}

bool zero_cell_reaches_window(const ProcessSample& sample, double h) {
  if (sample.d == 2) {
    const double rho = sample.window_rho();
    std::vector<Point2> poly = clip_polygon(sample.hyperplanes, Point2(0.0, 0.0));
    for (const Point2& p : poly)
      if (p.norm() > rho + 1e-9) return true;
    return false;
  }
  ProbeGraph g = build_probe_graph(sample, h, Execution::serial);
  return component_of(g, sample, KleinPoint::origin(sample.d)).unbounded_in_window;
}

namespace {

// outcome: 1 reaches, 0 does not, -1 indeterminate
template <class Draw, class Test>
int resampled(std::uint64_t base_seed, Draw&& draw, Test&& test) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto s = draw(attempt == 0 ? base_seed : derive_seed(base_seed, attempt));
    try {
      return test(s) ? 1 : 0;
    } catch (const DegenerateError&) {
      if (attempt > 16) throw;
    } catch (const ResolutionError&) {
      return -1;
    }
  }
}

}  // namespace

CrossingEstimate crossing_probability(int d, double gamma, double R, double h, long n, std::uint64_t seed,
                                      Execution exec) {
  if (n < 1) throw UsageError("crossing_probability: n must be >= 1");
  CrossingEstimate e;
  e.d = d;
  e.gamma = gamma;
  e.R = R;
  e.h = h;
  e.n = n;
  e.seed = seed;
  long hits = 0, indet = 0;
  auto one = [&](long i) {
    return resampled(
        derive_seed(seed, static_cast<std::uint64_t>(i)),
        [&](std::uint64_t s) { return sample_process(d, gamma, R, s); },
        [&](const ProcessSample& s) { return zero_cell_reaches_window(s, h); });
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : hits, indet)
    for (long i = 0; i < n; ++i) {
      int r = one(i);
      hits += r == 1;
      indet += r < 0;
    }
  } else {
    for (long i = 0; i < n; ++i) {
      int r = one(i);
      hits += r == 1;
      indet += r < 0;
    }
  }
  e.hits = hits;
  e.indeterminate = indet;
  long good = n - indet;
  if (indet * 100 >= n && indet > 0)
    throw ResolutionError("crossing_probability: indeterminate fraction reached 1%");
  e.p_hat = good > 0 ? static_cast<double>(hits) / good : 0.0;
  e.se = good > 0 ? std::sqrt(e.p_hat * (1.0 - e.p_hat) / good) : 0.0;
  return e;
}

SweepResult sweep(int d, double R, double h, const std::vector<double>& gammas, long n, std::uint64_t seed,
                  Execution exec) {
  if (gammas.empty()) throw UsageError("sweep: empty intensity grid");
  if (n < 1) throw UsageError("sweep: n must be >= 1");
  for (double g : gammas)
    if (!(g > 0.0)) throw UsageError("sweep: intensities must be positive");
  SweepResult res;
  res.d = d;
  res.R = R;
  res.h = h;
  res.n = n;
  res.seed = seed;
  res.gammas = gammas;
  const std::size_t m = gammas.size();
  const double gmax = *std::max_element(gammas.begin(), gammas.end());
  std::vector<long> hits(m, 0), indet(m, 0);

  auto one = [&](long i, std::vector<long>& H, std::vector<long>& I) {
    std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(i));
    for (std::uint64_t attempt = 0;; ++attempt) {
      MarkedSample ms = sample_marked_process(d, gmax, R, attempt == 0 ? base : derive_seed(base, attempt));
      std::vector<int> out(m, 0);
      try {
        for (std::size_t k = 0; k < m; ++k) {
          try {
            out[k] = zero_cell_reaches_window(ms.at(gammas[k]), h) ? 1 : 0;
          } catch (const ResolutionError&) {
            out[k] = -1;
          }
        }
      } catch (const DegenerateError&) {
        if (attempt > 16) throw;
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) {
        H[k] += out[k] == 1;
        I[k] += out[k] < 0;
      }
      return;
    }
  };

  if (exec == Execution::parallel) {
#pragma omp parallel
    {
      std::vector<long> H(m, 0), I(m, 0);
#pragma omp for schedule(dynamic, 4)
      for (long i = 0; i < n; ++i) one(i, H, I);
#pragma omp critical
      for (std::size_t k = 0; k < m; ++k) {
        hits[k] += H[k];
        indet[k] += I[k];
      }
    }
  } else {
    for (long i = 0; i < n; ++i) one(i, hits, indet);
  }

  for (std::size_t k = 0; k < m; ++k) {
    if (indet[k] * 100 >= n && indet[k] > 0)
      throw ResolutionError("sweep: indeterminate fraction reached 1% at gamma " + std::to_string(gammas[k]));
    long good = n - indet[k];
    double p = good > 0 ? static_cast<double>(hits[k]) / good : 0.0;
    res.p_hat.push_back(p);
    res.se.push_back(good > 0 ? std::sqrt(p * (1.0 - p) / good) : 0.0);
    res.indeterminate.push_back(indet[k]);
  }
  return res;
}

namespace {

// first down-crossing of level 0.5, linearly interpolated; bracket gets the grid cell
double down_crossing(const std::vector<double>& x, const std::vector<double>& y, bool& ok,
                     std::size_t* bracket = nullptr) {
  ok = false;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    if (y[k] >= 0.5 && y[k + 1] < 0.5) {
      ok = true;
      if (bracket) *bracket = k;
      double f = (y[k] - 0.5) / (y[k] - y[k + 1]);
      return x[k] + f * (x[k + 1] - x[k]);
    }
  }
  return 0.0;
}

}  // namespace

ThresholdInterval estimate_threshold(const SweepResult& s) {
  const std::size_t m = s.gammas.size();
  if (m < 2) throw UsageError("estimate_threshold: need at least two grid points");
  std::vector<double> lower(m), upper(m);
  for (std::size_t k = 0; k < m; ++k) {
    lower[k] = s.p_hat[k] - 2.0 * s.se[k];
    upper[k] = s.p_hat[k] + 2.0 * s.se[k];
  }
  bool ok = false;
  ThresholdInterval t;
  t.R = s.R;
  std::size_t k = 0;
  t.center = down_crossing(s.gammas, s.p_hat, ok, &k);
  if (!ok) {
    auto [mn, mx] = std::minmax_element(s.p_hat.begin(), s.p_hat.end());
    std::ostringstream msg;
    msg << "estimate_threshold: p_hat never crosses 0.5 on the grid [" << s.gammas.front() << ", "
        << s.gammas.back() << "] at R = " << s.R << "; p_hat range [" << *mn << ", " << *mx << "]";
    throw NumericError(msg.str());
  }
  bool ok_lo = false, ok_hi = false;
  t.lo = down_crossing(s.gammas, lower, ok_lo);
  if (!ok_lo || t.lo > t.center) t.lo = lower.front() < 0.5 ? s.gammas.front() : t.center;
  t.hi = down_crossing(s.gammas, upper, ok_hi);
  if (!ok_hi || t.hi < t.center) t.hi = upper.back() >= 0.5 ? s.gammas.back() : t.center;
  // the curve between grid points is unobserved
  t.lo = std::min(t.lo, s.gammas[k]);
  t.hi = std::max(t.hi, s.gammas[k + 1]);
  return t;
}

int count_window_components(const ProcessSample& sample, double h) {
  ProbeGraph g = build_probe_graph(sample, h);
  std::vector<int> lab = g.labels();
  int ncomp = 0;
  for (int l : lab) ncomp = std::max(ncomp, l + 1);
  std::vector<char> touches(ncomp, 0);
  std::vector<int> rep(ncomp, -1);
  for (std::size_t v = 0; v < lab.size(); ++v) {
    if (rep[lab[v]] < 0) rep[lab[v]] = static_cast<int>(v);
    if (!touches[lab[v]] && node_reaches_window(g, sample, static_cast<int>(v))) touches[lab[v]] = 1;
  }
  // cells are convex, so lattice pieces sharing a sign vector are one cell
  std::set<std::vector<signed char>> cells;
  for (int c = 0; c < ncomp; ++c)
    if (touches[c]) cells.insert(sign_vector(sample, KleinPoint(g.position(rep[c]))));
  return static_cast<int>(cells.size());
}

namespace {

bool arc_meets_cap(const Point2& a, const Point2& b, double cap_half) {
  double th0 = std::atan2(a.y(), a.x());
  double len = std::atan2(b.y(), b.x()) - th0;
  while (len <= 0.0) len += 2.0 * std::numbers::pi;
  Arc arc{normalize_angle(th0), len};
  Arc cap{normalize_angle(-cap_half), 2.0 * cap_half};
  return arc.contains(cap.start) || arc.contains(cap.mid()) || cap.contains(arc.start) ||
         cap.contains(arc.mid()) || arc.length >= 2.0 * std::numbers::pi;
}

}  // namespace

namespace {

// planar cells meeting the open disc of Euclidean radius inner: one face of the
// arrangement of lines cutting that disc per cell, completed against all lines
template <class Visit>
void cells_meeting_disc(const std::vector<Hyperplane>& lines, double rho, double inner, Visit&& visit) {
  std::vector<Hyperplane> near;
  for (const Hyperplane& h : lines)
    if (h.offset() < inner) near.push_back(h);
  Arrangement2d arr = Arrangement2d::build(near, inner);
  for (std::size_t i = 0; i < arr.faces().size(); ++i) {
    Point2 w = arr.witness(i);
    visit(w, clip_cell(lines, w, rho));
  }
}

}  // namespace

int count_crossing_cells_2d(const ProcessSample& sample, double inner_radius) {
  if (sample.d != 2) throw UsageError("count_crossing_cells_2d: planar samples only");
  if (!(inner_radius > 0.0 && inner_radius < sample.window_radius))
    throw UsageError("count_crossing_cells_2d: need 0 < inner radius < R");
  int count = 0;
  cells_meeting_disc(sample.hyperplanes, sample.window_rho(), std::tanh(inner_radius),
                     [&](const Point2&, const CellPolygon2d& c) { count += c.has_arc(); });
  return count;
}

bool half_space_crossing_2d(const ProcessSample& sample, double inner_radius, double cap_half_angle) {
  if (sample.d != 2) throw UsageError("half_space_crossing_2d: planar samples only");
  if (!(inner_radius > 0.0 && inner_radius < sample.window_radius))
    throw UsageError("half_space_crossing_2d: need 0 < inner radius < R");
  std::vector<Hyperplane> lines = sample.hyperplanes;
  Vector e1 = Vector::Zero(2);
  e1[0] = 1.0;
  lines.emplace_back(e1, 0.0);
  bool found = false;
  cells_meeting_disc(lines, sample.window_rho(), std::tanh(inner_radius), [&](const Point2& w, const CellPolygon2d& f) {
    if (found || w.x() <= 0.0 || !f.has_arc()) return;
    if (f.full_disc) {
      found = true;
      return;
    }
    const std::size_t n = f.vertices.size();
    for (std::size_t k = 0; k < n; ++k)
      if (f.arc_after[k] && arc_meets_cap(f.vertices[k], f.vertices[(k + 1) % n], cap_half_angle)) found = true;
  });
  return found;
}

}  // namespace hypertess
