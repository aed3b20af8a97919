#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hypertess/arrangement2d.hpp"
#include "hypertess/errors.hpp"
#include "hypertess/estimate.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/percolation.hpp"
#include "hypertess/probe_graph.hpp"
#include "hypertess/sections.hpp"
#include "hypertess/tessellation.hpp"

using namespace hypertess;
using std::numbers::pi;

namespace {

ProcessSample manual(int d, double R, std::vector<Hyperplane> hs) {
  ProcessSample s;
  s.d = d;
  s.gamma = 1.0;
  s.window_radius = R;
  s.hyperplanes = std::move(hs);
  return s;
}

std::vector<Hyperplane> box2(double t) {
  std::vector<Hyperplane> hs;
  for (int i = 0; i < 2; ++i)
    for (double sg : {1.0, -1.0}) {
      Vector u = Vector::Zero(2);
      u[i] = sg;
      hs.emplace_back(u, t);
    }
  return hs;
}

// direct evaluation of (d-1)^2 sqrt(pi) Gamma((d-1)/2) / Gamma(d/2) by half-integer recursion
double gamma_crit_oracle(int d) {
  auto half_gamma = [](int m) {  // Gamma(m/2)
    double g = (m % 2 == 0) ? 1.0 : std::sqrt(pi);
    for (int j = (m % 2 == 0 ? 2 : 1); j < m; j += 2) g *= j / 2.0;
    return g;
  };
  return (d - 1.0) * (d - 1.0) * std::sqrt(pi) * half_gamma(d - 1) / half_gamma(d);
}

}  // namespace

TEST_CASE("critical intensities") {
  CHECK(gamma_crit(2) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(gamma_crit(3) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(gamma_crit(4) == doctest::Approx(9 * pi / 2).epsilon(1e-14));
  for (int d = 2; d <= 12; ++d) CHECK(gamma_crit(d) == doctest::Approx(gamma_crit_oracle(d)).epsilon(1e-12));
  CHECK(gamma_crit(80) == doctest::Approx(gamma_crit_oracle(80)).epsilon(1e-10));
  CHECK_THROWS_AS(gamma_crit(1), UsageError);

  CHECK(gamma_crit_face(3, 2) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(gamma_crit_face(4, 3) == doctest::Approx(3 * pi).epsilon(1e-14));
  CHECK(gamma_crit_face(4, 2) == doctest::Approx(3 * pi / 2).epsilon(1e-14));
  CHECK(gamma_crit_face(3, 2) == doctest::Approx(pi / section_constant(3, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_crit_face(3, 3), UsageError);
  CHECK_THROWS_AS(gamma_crit_face(4, 1), UsageError);
}

TEST_CASE("face thresholds equal section-rescaled thresholds") {
  for (int d = 3; d <= 8; ++d)
    for (int k = 2; k < d; ++k)
      CHECK(gamma_crit_face(d, k) * section_constant(d, k) == doctest::Approx(gamma_crit(k)).epsilon(1e-10));
}

TEST_CASE("grid parsing") {
  std::vector<double> g = parse_grid("2.0:4.4:0.4");
  REQUIRE(g.size() == 7);
  CHECK(g.front() == 2.0);
  CHECK(g.back() == doctest::Approx(4.4));
  CHECK(parse_grid("1:1:0.5").size() == 1);
  CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
  CHECK_THROWS_AS(parse_grid("3:2:1"), UsageError);
  CHECK_THROWS_AS(parse_grid("1:2:0"), UsageError);
  CHECK_THROWS_AS(parse_grid("a:2:1"), UsageError);
}

TEST_CASE("threshold from a synthetic step") {
  SweepResult s;
  s.R = 5.0;
  s.n = 100;
  for (double g = 1.0; g <= 5.0; g += 0.5) {
    s.gammas.push_back(g);
    double p = g < 3.2 ? 0.9 : 0.1;
    s.p_hat.push_back(p);
    s.se.push_back(std::sqrt(p * (1 - p) / 100));
    s.indeterminate.push_back(0);
  }
  ThresholdInterval t = estimate_threshold(s);
  CHECK(t.lo <= 3.2);
  CHECK(t.hi >= 3.2);
  CHECK(t.lo <= t.center);
  CHECK(t.center <= t.hi);
  CHECK(t.R == 5.0);
  for (double& p : s.p_hat) p = 0.9;
  CHECK_THROWS_AS(estimate_threshold(s), Error);
}

TEST_CASE("crossing probability extremes") {
  CrossingEstimate low = crossing_probability(2, 1e-4, 3.0, 0.01, 200, 1);
  CHECK(low.p_hat > 0.99);
  CrossingEstimate high = crossing_probability(2, 20.0, 3.0, 0.01, 1000, 2);
  CHECK(high.p_hat < 0.01);
  CHECK(high.n == 1000);
  CHECK(high.indeterminate == 0);
  CHECK(high.se == doctest::Approx(std::sqrt(high.p_hat * (1 - high.p_hat) / 1000)));
  CHECK_THROWS_AS(crossing_probability(2, 1.0, 3.0, 0.01, 0, 1), UsageError);
}

TEST_CASE("crossing probability is reproducible and independent of scheduling") {
  CrossingEstimate a = crossing_probability(2, 2.0, 3.0, 0.01, 300, 77, Execution::parallel);
  CrossingEstimate b = crossing_probability(2, 2.0, 3.0, 0.01, 300, 77, Execution::serial);
  CHECK(a.hits == b.hits);
  CHECK(a.p_hat == b.p_hat);
}

TEST_CASE("exact and probe window crossing agree in the plane") {
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    ProcessSample s = sample_process(2, 2.0, 2.0, derive_seed(31, k));
    bool exact = zero_cell_reaches_window(s, 0.01);
    CHECK(exact == zero_cell_polygon(s).unbounded_in_window);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("coupled sweep is monotone") {
  std::vector<double> grid = parse_grid("0.5:4.5:0.5");
  SweepResult s = sweep(2, 3.0, 0.01, grid, 400, 5);
  REQUIRE(s.p_hat.size() == grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(s.p_hat[i] <= s.p_hat[i - 1]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(s.p_hat[i] >= 0.0);
    CHECK(s.p_hat[i] <= 1.0);
  }
  // exact per-sample monotonicity on one marked stream
  for (int k = 0; k < 100; ++k) {
    MarkedSample m = sample_marked_process(2, 6.0, 3.0, derive_seed(6, k));
    bool prev = true;
    for (double g : grid) {
      bool r = zero_cell_reaches_window(m.at(g), 0.01);
      if (!prev) CHECK_FALSE(r);
      prev = r;
    }
  }
  SweepResult t = sweep(2, 3.0, 0.01, grid, 400, 5, Execution::serial);
  CHECK(t.p_hat == s.p_hat);
}

TEST_CASE("window components against the exact arrangement") {
  CHECK(count_window_components(manual(2, 2.0, {}), 0.02) == 1);
  // square of walls: the central cell and four side caps reach the circle
  CHECK(count_window_components(manual(2, 3.0, box2(0.75)), 0.01) == 5);
  for (int k = 0; k < 30; ++k) {
    ProcessSample s = sample_process(2, 1.0, 1.5, derive_seed(44, k));
    Arrangement2d arr = Arrangement2d::build(s.hyperplanes, s.window_rho());
    int exact = 0;
    for (const CellPolygon2d& f : arr.faces()) exact += f.has_arc();
    int probe = count_window_components(s, 0.005);
    CHECK(probe <= exact);
    CHECK(probe >= 1);
  }
}

TEST_CASE("crossing cells show the two phases") {
  // cells meeting B(o, 1/2) that reach the window circle
  double lowest_sub = INFINITY, highest_super = 0.0;
  double prev_super = INFINITY;
  for (double R : {3.0, 5.0, 7.0}) {
    Moments sub, super;
    for (int i = 0; i < 200; ++i) {
      sub.add(count_crossing_cells_2d(sample_process(2, 1.0, R, derive_seed(60, i)), 0.5));
      super.add(count_crossing_cells_2d(sample_process(2, 6.0, R, derive_seed(61, i)), 0.5));
    }
    MESSAGE("R " << R << ": gamma 1 mean " << sub.mean() << ", gamma 6 mean " << super.mean());
    lowest_sub = std::min(lowest_sub, sub.mean());
    highest_super = std::max(highest_super, super.mean());
    CHECK(super.mean() <= prev_super);
    prev_super = super.mean();
  }
  CHECK(lowest_sub > 1.0);
  CHECK(highest_super < 0.05);
  CHECK_THROWS_AS(count_crossing_cells_2d(manual(2, 2.0, {}), 2.5), UsageError);
  CHECK(count_crossing_cells_2d(manual(2, 2.0, {}), 0.5) == 1);
  CHECK(count_crossing_cells_2d(manual(2, 3.0, box2(0.75)), 0.5) == 1);
}

TEST_CASE("crossing cells against the full arrangement") {
  for (int k = 0; k < 40; ++k) {
    ProcessSample s = sample_process(2, 2.0, 3.0, derive_seed(64, k));
    Arrangement2d arr = Arrangement2d::build(s.hyperplanes, s.window_rho());
    const double inner = std::tanh(0.7);
    int expected = 0;
    for (const CellPolygon2d& f : arr.faces()) {
      if (!f.has_arc()) continue;
      bool meets = f.full_disc || f.contains(Point2(0, 0), 0.0);
      for (std::size_t i = 0; i < f.vertices.size() && !meets; ++i) {
        if (f.arc_after[i]) continue;
        Point2 a = f.vertices[i], e = f.vertices[(i + 1) % f.vertices.size()] - a;
        double t = std::clamp(-a.dot(e) / e.squaredNorm(), 0.0, 1.0);
        meets = (a + t * e).norm() < inner;
      }
      expected += meets;
    }
    CHECK(count_crossing_cells_2d(s, 0.7) == expected);
  }
}

TEST_CASE("half-space crossing at low intensity") {
  int hits = 0;
  for (int i = 0; i < 500; ++i) hits += half_space_crossing_2d(sample_process(2, 1.0, 6.0, derive_seed(70, i)), 1.0, pi / 3);
  MESSAGE("half-space crossings: " << hits << " of 500");
  CHECK(hits > 250);
  int dense = 0;
  for (int i = 0; i < 200; ++i) dense += half_space_crossing_2d(sample_process(2, 8.0, 4.0, derive_seed(71, i)), 1.0, pi / 3);
  CHECK(dense < hits * 2 / 5);
  CHECK(half_space_crossing_2d(manual(2, 3.0, {}), 1.0, pi / 3));
}
