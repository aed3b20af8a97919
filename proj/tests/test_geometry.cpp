#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypertess/errors.hpp"
#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

using namespace hypertess;
using std::numbers::pi;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector e(int d, int i) {
  Vector v = Vector::Zero(d);
  v[i] = 1.0;
  return v;
}

// arcosh(-<X,Y>) on the hyperboloid, computed from scratch
double hyperboloid_dist(const Vector& x, const Vector& y) {
  double a = 1.0 / std::sqrt(1.0 - x.squaredNorm());
  double b = 1.0 / std::sqrt(1.0 - y.squaredNorm());
  double inner = a * b * (1.0 - x.dot(y));
  return std::acosh(std::max(1.0, inner));
}

// composite Simpson on [0, T]
template <class F>
double simpson(F f, double T, int m = 20000) {
  double h = T / m, s = f(0.0) + f(T);
  for (int i = 1; i < m; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("distance examples") {
  KleinPoint o = KleinPoint::origin(2);
  CHECK(dist(o, o) == 0.0);
  CHECK(dist(o, KleinPoint(v2(0.5, 0))) == doctest::Approx(0.5493061443340549).epsilon(1e-14));
  KleinPoint a(v2(0.3, 0)), b(v2(-0.3, 0));
  CHECK(dist(a, b) == doctest::Approx(2 * std::atanh(0.3)).epsilon(1e-14));
  CHECK(dist(a, b) == doctest::Approx(hyperboloid_dist(a.coords(), b.coords())).epsilon(1e-12));
}

TEST_CASE("distance agrees with the hyperboloid formula and stays accurate near the sphere") {
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    int d = 2 + k % 4;
    KleinPoint x = random_ball_point(d, 3.0, rng), y = random_ball_point(d, 3.0, rng);
    CHECK(dist(x, y) == doctest::Approx(hyperboloid_dist(x.coords(), y.coords())).epsilon(1e-8));
  }
  // nearby points where arcosh loses half the digits: compare with artanh along a diameter
  KleinPoint p(v2(0.999, 0)), q(v2(0.999 + 1e-9, 0));
  CHECK(dist(p, q) == doctest::Approx(std::atanh(0.999 + 1e-9) - std::atanh(0.999)).epsilon(1e-6));
}

TEST_CASE("metric properties on random triples") {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    int d = 2 + k % 3;
    KleinPoint x = random_ball_point(d, 4.0, rng), y = random_ball_point(d, 4.0, rng),
               z = random_ball_point(d, 4.0, rng);
    CHECK(dist(x, y) == dist(y, x));
    CHECK(dist(x, z) <= dist(x, y) + dist(y, z) + 1e-9);
    CHECK(dist(x, y) >= 0.0);
  }
}

TEST_CASE("point and plane validation") {
  CHECK_THROWS_AS(KleinPoint(v2(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(KleinPoint(v2(0.8, 0.8)), DomainError);
  CHECK_THROWS_AS(Hyperplane(e(2, 0), 1.0), DomainError);
  CHECK_THROWS_AS(Hyperplane(Vector::Zero(2), 0.1), UsageError);
  KleinPoint o = KleinPoint::origin(2);
  CHECK_THROWS_AS(dist(o, KleinPoint::origin(3)), UsageError);
}

TEST_CASE("canonical hyperplane form") {
  Hyperplane h(v2(-2.0, 0.0), -1.0);  // the same chord as H(e1, 0.5)
  CHECK(h.normal()[0] == doctest::Approx(1.0));
  CHECK(h.offset() == doctest::Approx(0.5));
  Hyperplane z(v2(0.0, -1.0), 0.0);
  CHECK(z.normal()[1] == 1.0);
  CHECK(z.offset() == 0.0);
  Hyperplane again(h.normal(), h.offset());
  CHECK(again == h);
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Vector u = random_direction(3, rng);
    double t = 2.0 * uniform01(rng) - 1.0;
    Hyperplane a(u, 0.9 * t);
    Hyperplane b(a.normal(), a.offset());
    CHECK(a == b);
    CHECK(a.offset() >= 0.0);
    CHECK(std::fabs(a.normal().norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("side and crossing examples") {
  Hyperplane h(v2(1, 0), 0.5);
  CHECK(side(h, KleinPoint::origin(2)) == -1);
  CHECK(side(h, KleinPoint(v2(0.5, 0))) == 0);
  CHECK(side(h, KleinPoint(v2(0.9, 0))) == 1);
  KleinPoint o = KleinPoint::origin(2);
  CHECK(segment_crosses(h, o, KleinPoint(v2(0.9, 0))));
  CHECK_FALSE(segment_crosses(h, o, KleinPoint(v2(-0.9, 0))));
  CHECK(segment_crosses(h, KleinPoint(v2(0.5, 0.1)), KleinPoint(v2(0.5, -0.1))));
}

TEST_CASE("ray_hits examples and brute-force agreement") {
  Hyperplane h(v2(1, 0), 0.5);
  CHECK(ray_hits(h, v2(1, 0)));
  CHECK_FALSE(ray_hits(h, v2(-1, 0)));
  double a = pi / 3 - 0.01;
  CHECK(ray_hits(h, v2(std::cos(a), std::sin(a))));

  Rng rng(21);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    int d = 2 + k % 3;
    Vector u = random_direction(d, rng), w = random_direction(d, rng);
    double t = 0.99 * uniform01(rng);
    if (std::fabs(std::acos(std::clamp(w.dot(u), -1.0, 1.0)) - std::acos(t)) <= 1e-6) continue;
    // parametric: <u, s w> = t for some s in [0, 1 - 1e-9]
    double dn = w.dot(u);
    bool direct = dn > 0.0 && t / dn <= 1.0 - 1e-9;
    CHECK(ray_hits(Hyperplane(u, t), w) == direct);
    ++checked;
  }
  CHECK(checked > 990);
}

TEST_CASE("cut caps") {
  Hyperplane h(v2(1, 0), 0.5);
  auto inf = cut_cap_at_radius(h, INFINITY);
  REQUIRE(inf);
  CHECK(inf->radius == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK_FALSE(cut_cap_at_radius(Hyperplane(v2(1, 0), 0.9), 1.0));
  auto half = cut_cap_at_radius(Hyperplane(v2(1, 0), 0.0), 0.7);
  REQUIRE(half);
  CHECK(half->radius == doctest::Approx(pi / 2).epsilon(1e-14));
  double prev = 0.0;
  for (double r : {2.0, 4.0, 8.0, 16.0}) {
    auto c = cut_cap_at_radius(h, r);
    REQUIRE(c);
    CHECK(c->radius > prev);
    prev = c->radius;
  }
  CHECK(std::acos(0.5) - prev < 1e-3);
  CHECK(std::acos(0.5) - prev >= 0.0);
  // membership of the cut cap matches the ray reaching the plane before radius r
  Rng rng(8);
  for (int k = 0; k < 300; ++k) {
    Vector u = random_direction(3, rng), w = random_direction(3, rng);
    double t = 0.7 * uniform01(rng), r = 1.5;
    auto c = cut_cap_at_radius(Hyperplane(u, t), r);
    bool direct = w.dot(u) > 0.0 && t / w.dot(u) < std::tanh(r);
    CHECK((c && c->contains(w)) == direct);
  }
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume(2, 0.0) == 0.0);
  CHECK(ball_volume(2, 2.0) == doctest::Approx(2 * pi * (std::cosh(2.0) - 1)).epsilon(1e-14));
  CHECK(ball_volume(2, 2.0) == doctest::Approx(17.35540).epsilon(1e-6));
  CHECK(ball_volume(3, 1.0) == doctest::Approx(pi * (std::sinh(2.0) - 2.0)).epsilon(1e-10));
  CHECK(ball_volume(3, 1.0) == doctest::Approx(5.1109327).epsilon(1e-7));
  // d = 4: 2 pi^2 (cosh^3/3 - cosh + 2/3)
  double c = std::cosh(1.3);
  CHECK(ball_volume(4, 1.3) == doctest::Approx(2 * pi * pi * (c * c * c / 3 - c + 2.0 / 3)).epsilon(1e-10));
  double prev = 0.0;
  for (double r = 0.25; r < 6; r += 0.25) {
    CHECK(ball_volume(3, r) > prev);
    prev = ball_volume(3, r);
  }
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(sphere_area(4) == doctest::Approx(2 * pi * pi));
}

TEST_CASE("power integrals against Simpson") {
  for (int n = 0; n <= 6; ++n) {
    for (double T : {0.3, 1.0, 2.5}) {
      double sh = simpson([n](double x) { return std::pow(std::sinh(x), n); }, T);
      double ch = simpson([n](double x) { return std::pow(std::cosh(x), n); }, T);
      CHECK(sinh_power_integral(n, T) == doctest::Approx(sh).epsilon(1e-10));
      CHECK(cosh_power_integral(n, T) == doctest::Approx(ch).epsilon(1e-10));
    }
  }
  CHECK(cosh_power_integral(2, -1.0) == doctest::Approx(-cosh_power_integral(2, 1.0)));
}

TEST_CASE("translations") {
  KleinPoint x(v2(0.2, -0.4));
  KleinPoint same = Isometry::translation_along_axis(2, 1, 0.0).apply(x);
  CHECK((same.coords() - x.coords()).norm() < 1e-15);
  for (double s : {0.5, 1.0, 3.0, -2.0}) {
    KleinPoint m = Isometry::translation_along_axis(3, 1, s).apply(KleinPoint::origin(3));
    CHECK(m[0] == doctest::Approx(std::tanh(s)).epsilon(1e-14));
    CHECK(std::fabs(m[1]) < 1e-15);
    CHECK(dist(KleinPoint::origin(3), m) == doctest::Approx(std::fabs(s)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(Isometry::translation_along_axis(2, 3, 1.0), UsageError);
}

TEST_CASE("Lorentz isometries preserve the form and distances") {
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    int d = 2 + k % 3;
    Isometry g = Isometry::translation_along_axis(d, 1 + k % d, 2.0 * uniform01(rng) - 1.0) *
                 Isometry::rotation(d, 1, 2, 6.0 * uniform01(rng)) * random_isometry(d, 2.0, rng);
    CHECK(g.form_defect() < 1e-10);
    KleinPoint x = random_ball_point(d, 2.0, rng), y = random_ball_point(d, 2.0, rng);
    CHECK(dist(g.apply(x), g.apply(y)) == doctest::Approx(dist(x, y)).epsilon(1e-9));
    Isometry id = g * g.inverse();
    CHECK((id.lorentz() - Matrix::Identity(d + 1, d + 1)).cwiseAbs().maxCoeff() < 1e-9);
  }
  Matrix bad = Matrix::Identity(3, 3);
  bad(1, 1) = 2.0;
  CHECK_THROWS_AS(Isometry::from_matrix(bad), DomainError);
}

TEST_CASE("to_origin and rotation_taking") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    int d = 2 + k % 3;
    KleinPoint c = random_ball_point(d, 3.0, rng);
    CHECK(Isometry::to_origin(c).apply(c).norm() < 1e-9);
    Vector a = random_direction(d, rng), b = random_direction(d, rng);
    KleinPoint pa(0.5 * a);
    KleinPoint img = Isometry::rotation_taking(a, b).apply(pa);
    CHECK((img.coords() - 0.5 * b).norm() < 1e-12);
  }
  Vector a = e(3, 0);
  KleinPoint img = Isometry::rotation_taking(a, -a).apply(KleinPoint(0.5 * a));
  CHECK((img.coords() + 0.5 * a).norm() < 1e-12);
}

TEST_CASE("isometries move hyperplanes with their points") {
  Rng rng(29);
  for (int k = 0; k < 100; ++k) {
    int d = 2 + k % 3;
    Hyperplane h(random_direction(d, rng), 0.8 * uniform01(rng));
    Isometry g = random_isometry(d, 1.5, rng);
    Hyperplane gh = g.apply(h);
    // points on h: foot plus tangent offsets
    for (int j = 0; j < 5; ++j) {
      Vector w = random_direction(d, rng);
      w -= w.dot(h.normal()) * h.normal();
      Vector p = h.offset() * h.normal() + 0.3 * std::sqrt(1 - h.offset() * h.offset()) * uniform01(rng) *
                                                 (w.norm() > 0 ? Vector(w.normalized()) : Vector(w));
      KleinPoint gp = g.apply(KleinPoint(p));
      CHECK(std::fabs(gh.normal().dot(gp.coords()) - gh.offset()) < 1e-9);
    }
  }
}

TEST_CASE("distance to a hyperplane against a brute-force scan") {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    Hyperplane h(random_direction(2, rng), 0.9 * uniform01(rng));
    KleinPoint c = random_ball_point(2, 2.0, rng);
    Vector foot = h.offset() * h.normal();
    Vector tang = v2(-h.normal()[1], h.normal()[0]);
    double half = std::sqrt(1 - h.offset() * h.offset());
    double best = INFINITY;
    for (int j = -20000; j <= 20000; ++j) {
      Vector p = foot + (half * j / 20001.0) * tang;
      best = std::min(best, hyperboloid_dist(c.coords(), p));
    }
    CHECK(distance_to_hyperplane(h, c) == doctest::Approx(best).epsilon(1e-5));
    CHECK(hits_ball(h, c, best + 1e-3));
    CHECK_FALSE(hits_ball(h, c, best - 1e-3));
  }
}

TEST_CASE("segment against an off-centre ball") {
  Rng rng(37);
  for (int k = 0; k < 100; ++k) {
    KleinPoint c = random_ball_point(2, 2.0, rng);
    KleinPoint x = random_ball_point(2, 3.0, rng), y = random_ball_point(2, 3.0, rng);
    double rho = 0.2 + uniform01(rng);
    double best = INFINITY;
    for (int j = 0; j <= 20000; ++j) {
      Vector p = x.coords() + (j / 20000.0) * (y.coords() - x.coords());
      best = std::min(best, hyperboloid_dist(c.coords(), p));
    }
    if (std::fabs(best - rho) < 1e-3) continue;
    CHECK(segment_meets_ball(x.coords(), y.coords(), c, rho) == (best < rho));
  }
}
