#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <numbers>

#include "hypertess/errors.hpp"
#include "hypertess/estimate.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/sections.hpp"

using namespace hypertess;
using std::numbers::pi;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Monte Carlo integral of the Klein density 2 cosh^{d-1}(tau) dtau sigma(du) over tau in [0, T]
// restricted to hyperplanes accepted by pred; returns {mean, se}
template <class Pred>
std::pair<double, double> klein_mc(int d, double T, long n, std::uint64_t seed, Pred pred) {
  Rng rng(seed);
  Moments m;
  for (long i = 0; i < n; ++i) {
    Vector u = random_direction(d, rng);
    double tau = T * uniform01(rng);
    double w = 2.0 * std::pow(std::cosh(tau), d - 1) * T;
    m.add(pred(u, std::tanh(tau)) ? w : 0.0);
  }
  return {m.mean(), m.se()};
}

// hyperboloid formula for the distance from c to the chord <u, x> = t
double plane_distance(const Vector& u, double t, const Vector& c) {
  double num = u.dot(c) - t;
  return std::asinh(std::fabs(num) / (std::sqrt(1.0 - c.squaredNorm()) * std::sqrt(1.0 - t * t)));
}

// closed form of int_0^tau cosh^2
double cosh2_int(double tau) { return tau / 2.0 + std::sinh(2.0 * tau) / 4.0; }

}  // namespace

TEST_CASE("hitting measure of centred balls") {
  CHECK(mu_hit_ball(2, 0.0) == 0.0);
  CHECK(mu_hit_ball(2, 1.0) == doctest::Approx(2.0 * std::sinh(1.0)).epsilon(1e-13));
  CHECK(mu_hit_ball(2, 1.0) == doctest::Approx(2.3504024).epsilon(1e-7));
  CHECK(mu_hit_ball(3, 1.0) == doctest::Approx(1.0 + std::sinh(2.0) / 2.0).epsilon(1e-13));
  CHECK(mu_hit_ball(3, 1.0) == doctest::Approx(2.8134302).epsilon(1e-7));
  double prev = 0.0;
  for (double r = 0.5; r < 8; r += 0.5) {
    CHECK(mu_hit_ball(4, r) > prev);
    prev = mu_hit_ball(4, r);
  }
}

TEST_CASE("hitting measure is invariant under isometries") {
  for (int d : {2, 3}) {
    Rng rng(100 + d);
    for (int k = 0; k < 3; ++k) {
      Isometry g = random_isometry(d, 1.5, rng);
      KleinPoint c = g.apply(KleinPoint::origin(d));
      double T = dist(KleinPoint::origin(d), c) + 1.05;
      auto [mean, se] = klein_mc(d, T, 100000, 7 * d + k,
                                 [&](const Vector& u, double t) { return plane_distance(u, t, c.coords()) < 1.0; });
      CHECK(std::fabs(mean - mu_hit_ball(d, 1.0)) < 3.5 * se);
    }
  }
}

TEST_CASE("separating mass against the Klein density") {
  CHECK(separation_rate(2) == doctest::Approx(2.0 / pi));
  CHECK(separation_rate(3) == doctest::Approx(0.5));
  KleinPoint o2 = KleinPoint::origin(2);
  CHECK(mu_separating(o2, o2) == 0.0);
  for (int d : {2, 3}) {
    KleinPoint o = KleinPoint::origin(d);
    for (double s : {0.5, 1.0, 2.0}) {
      Vector dir = Vector::Zero(d);
      dir[0] = 1.0;
      dir[1] = 0.7;
      KleinPoint x = KleinPoint::polar(dir, 0.3);
      KleinPoint y = Isometry::translation_along_axis(d, 1, s).apply(x);
      double T = std::max(dist(o, x), dist(o, y)) + 0.1;
      auto [mean, se] = klein_mc(d, T, 400000, 31 * d + static_cast<int>(4 * s), [&](const Vector& u, double t) {
        return (u.dot(x.coords()) - t) * (u.dot(y.coords()) - t) < 0.0;
      });
      double value = mu_separating(x, y);
      CHECK(value == doctest::Approx(separation_rate(d) * dist(x, y)).epsilon(1e-12));
      CHECK(std::fabs(mean - value) < 3.5 * se);
      CHECK(std::fabs(mean - value) < 0.01 * value + 3.5 * se);
    }
  }
}

TEST_CASE("process counts are Poisson with the hitting-measure mean") {
  Moments m;
  for (int i = 0; i < 10000; ++i) m.add(static_cast<double>(sample_process(2, 1.0, 1.0, derive_seed(9, i)).hyperplanes.size()));
  double mean = 2.0 * std::sinh(1.0);
  CHECK(std::fabs(m.mean() - mean) < 3.0 * m.se());
  CHECK(m.variance() == doctest::Approx(mean).epsilon(0.05));
  int empty = 0;
  for (int i = 0; i < 200; ++i) empty += sample_process(2, 1e-6, 1.0, derive_seed(10, i)).hyperplanes.empty();
  CHECK(empty >= 199);
}

TEST_CASE("sampled hyperplanes respect the window") {
  ProcessSample s = sample_process(3, 2.0, 2.5, 77);
  CHECK(s.window_rho() == doctest::Approx(std::tanh(2.5)));
  for (const Hyperplane& h : s.hyperplanes) CHECK(h.offset() < s.window_rho());
  CHECK_THROWS_AS(sample_process(2, -1.0, 1.0, 1), UsageError);
  CHECK_THROWS_AS(sample_process(2, 1.0, 0.0, 1), UsageError);
}

TEST_CASE("offset marginal in the plane") {
  const double R = 1.0;
  std::vector<double> ts;
  for (int i = 0; ts.size() < 10000; ++i)
    for (const Hyperplane& h : sample_process(2, 1.0, R, derive_seed(12, i)).hyperplanes) ts.push_back(h.offset());
  ts.resize(10000);
  // (1 - t^2)^{-3/2} integrates to t / sqrt(1 - t^2)
  double ks = ks_distance(ts, [&](double t) { return t / std::sqrt(1.0 - t * t) / std::sinh(R); });
  CHECK(ks < 0.02);
  // the plain artanh law is a different distribution and must be rejected
  CHECK(ks_distance(ts, [](double t) { return std::atanh(t); }) > 0.02);
}

TEST_CASE("offset inversion") {
  Rng rng(4);
  std::vector<double> taus;
  for (int i = 0; i < 10000; ++i) taus.push_back(std::atanh(sample_offset(3, 0.2, 1.7, rng)));
  double lo = cosh2_int(0.2), hi = cosh2_int(1.7);
  CHECK(ks_distance(taus, [&](double x) { return (cosh2_int(x) - lo) / (hi - lo); }) < 0.02);
  for (double target : {0.0, 0.3, 1.0, 2.5}) {
    double tau = invert_cosh_power_integral(3, target, 0.0, 3.0);
    CHECK(cosh2_int(tau) == doctest::Approx(target).epsilon(1e-11));
  }
}

TEST_CASE("superposition of independent samples") {
  // counts of gamma 1.5 against counts of gamma 0.5 plus gamma 1.0
  const int n = 4000;
  std::map<int, std::pair<int, int>> table;
  for (int i = 0; i < n; ++i) {
    int a = static_cast<int>(sample_process(2, 1.5, 1.0, derive_seed(50, i)).hyperplanes.size());
    int b = static_cast<int>(sample_process(2, 0.5, 1.0, derive_seed(51, i)).hyperplanes.size() +
                             sample_process(2, 1.0, 1.0, derive_seed(52, i)).hyperplanes.size());
    table[std::min(a, 8)].first++;
    table[std::min(b, 8)].second++;
  }
  double chi2 = 0.0;
  int cells = 0;
  for (auto& [k, ab] : table) {
    double tot = ab.first + ab.second;
    if (tot == 0) continue;
    double e = tot / 2.0;
    chi2 += (ab.first - e) * (ab.first - e) / e + (ab.second - e) * (ab.second - e) / e;
    ++cells;
  }
  boost::math::chi_squared dist(cells - 1);
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.01);
}

TEST_CASE("reproducible samples") {
  ProcessSample a = sample_process(3, 1.3, 2.0, 12345), b = sample_process(3, 1.3, 2.0, 12345);
  REQUIRE(a.hyperplanes.size() == b.hyperplanes.size());
  for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) CHECK(a.hyperplanes[i] == b.hyperplanes[i]);
  ProcessSample c = sample_process(3, 1.3, 2.0, 12346);
  CHECK_FALSE((c.hyperplanes.size() == a.hyperplanes.size() &&
               std::equal(a.hyperplanes.begin(), a.hyperplanes.end(), c.hyperplanes.begin())));
}

TEST_CASE("marked sample thins to the target intensity") {
  MarkedSample m = sample_marked_process(2, 4.0, 1.5, 8);
  ProcessSample low = m.at(1.0), high = m.at(3.0);
  CHECK(low.gamma == 1.0);
  CHECK(low.hyperplanes.size() <= high.hyperplanes.size());
  for (const Hyperplane& h : low.hyperplanes)
    CHECK(std::find(high.hyperplanes.begin(), high.hyperplanes.end(), h) != high.hyperplanes.end());
  Moments c;
  for (int i = 0; i < 3000; ++i)
    c.add(static_cast<double>(sample_marked_process(2, 4.0, 1.0, derive_seed(3, i)).at(1.0).hyperplanes.size()));
  CHECK(std::fabs(c.mean() - 2.0 * std::sinh(1.0)) < 3.0 * c.se());
}

TEST_CASE("wall sampling") {
  Vector center(3);
  center << 1.0, 1.0, 1.0;
  center.normalize();
  WallSet w{center, 0.3, 0.2, 0.6};
  Rng rng(61);
  std::vector<double> taus;
  for (int i = 0; i < 10000; ++i) {
    Hyperplane h = sample_wall(3, w, rng);
    CHECK(h.offset() > 0.2);
    CHECK(h.offset() < 0.6);
    CHECK(std::acos(std::clamp(h.normal().dot(center), -1.0, 1.0)) < 0.3);
    taus.push_back(std::atanh(h.offset()));
  }
  double lo = cosh2_int(std::atanh(0.2)), hi = cosh2_int(std::atanh(0.6));
  CHECK(ks_distance(taus, [&](double x) { return (cosh2_int(x) - lo) / (hi - lo); }) < 0.03);
  Hyperplane a = sample_wall(3, w, 99ULL), b = sample_wall(3, w, 99ULL);
  CHECK(a == b);
}

TEST_CASE("joint hitting measure of two balls") {
  KleinPoint o = KleinPoint::origin(2);
  CHECK(mu_joint_balls(2, o, o, 1.0) == doctest::Approx(2.0 * std::sinh(1.0)).epsilon(1e-9));
  KleinPoint x(v2(0.2, 0.1)), y(v2(-0.4, 0.3));
  CHECK(mu_joint_balls(2, x, y, 1.0) == doctest::Approx(mu_joint_balls(2, y, x, 1.0)).epsilon(1e-9));
  CHECK(mu_joint_balls(2, x, y, 1.0) == doctest::Approx(mu_joint_balls_at_distance(2, dist(x, y), 1.0)).epsilon(1e-8));
  double prev = INFINITY;
  for (double s : {0.0, 2.0, 4.0, 8.0, 16.0}) {
    double v = mu_joint_balls_at_distance(2, s, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(mu_joint_balls_at_distance(2, 20.0, 1.0) < 1e-3);
  CHECK(mu_joint_balls(2, o, Isometry::translation_along_axis(2, 1, 5.0).apply(o), 1.0) ==
        doctest::Approx(mu_joint_balls_at_distance(2, 5.0, 1.0)).epsilon(1e-8));

  // Monte Carlo over the Klein density
  for (int d : {2, 3}) {
    KleinPoint a = KleinPoint::origin(d);
    KleinPoint b = Isometry::translation_along_axis(d, 1, 1.5).apply(a);
    auto [mean, se] = klein_mc(d, 2.6, 200000, 5 + d, [&](const Vector& u, double t) {
      return plane_distance(u, t, a.coords()) < 1.0 && plane_distance(u, t, b.coords()) < 1.0;
    });
    CHECK(std::fabs(mean - mu_joint_balls(d, a, b, 1.0)) < 3.5 * se);
  }
}
