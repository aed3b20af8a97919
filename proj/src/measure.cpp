#include "hypertess/measure.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

// Solve F(x) = target on [lo, hi] for increasing F with derivative f.
template <class F, class Fp>
double invert_increasing(F&& Fn, Fp&& f, double target, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    double g = Fn(x) - target;
    if (g > 0.0)
      b = x;
    else
      a = x;
    double step = g / f(x);
    double nx = x - step;
    if (!(nx > a && nx < b)) nx = 0.5 * (a + b);  // bisection fallback
    if (std::fabs(nx - x) <= 1e-12 * std::max(1.0, std::fabs(x)) || b - a <= 1e-15) return nx;
    x = nx;
  }
  throw NumericError("inverse CDF: no convergence");
}

}  // namespace

double ProcessSample::window_rho() const { return std::tanh(window_radius); }

ProcessSample MarkedSample::at(double gamma) const {
  ProcessSample s;
  s.d = base.d;
  s.gamma = gamma;
  s.window_radius = base.window_radius;
  s.seed = base.seed;
  for (std::size_t i = 0; i < marks.size(); ++i)
    if (marks[i] <= gamma) s.hyperplanes.push_back(base.hyperplanes[i]);
  return s;
}

Vector random_direction(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  double n = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = normal(rng);
    n = v.norm();
  } while (n == 0.0);
  return v / n;
}

KleinPoint random_ball_point(int d, double R, Rng& rng) {
  Vector dir = random_direction(d, rng);
  double total = sinh_power_integral(d - 1, R);
  double target = uniform01(rng) * total;
  double tau = invert_increasing([d](double x) { return sinh_power_integral(d - 1, x); },
                                 [d](double x) { return std::max(std::pow(std::sinh(x), d - 1), 1e-300); },
                                 target, 0.0, R);
  double rho = std::tanh(tau);
  if (rho >= 1.0) rho = std::nextafter(1.0, 0.0);
  return KleinPoint(dir * rho);
}

Isometry random_isometry(int d, double max_shift, Rng& rng) {
  Vector a = random_direction(d, rng);
  Vector b = random_direction(d, rng);
  Vector c = random_direction(d, rng);
  double s = max_shift * uniform01(rng);
  return Isometry::boost(c, s) * Isometry::rotation_taking(a, b);
}

double mu_hit_ball(int d, double r) {
  if (d < 1) throw UsageError("mu_hit_ball: bad dimension");
  if (!(r >= 0.0)) throw UsageError("mu_hit_ball: r must be >= 0");
  return 2.0 * cosh_power_integral(d - 1, r);
}

double separation_rate(int d) {
  if (d < 1) throw UsageError("separation_rate: bad dimension");
  // mean |<u, e1>| under the uniform law on S^{d-1}
  return std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5 * (d + 1))) / std::sqrt(std::numbers::pi);
}

double mu_separating(const KleinPoint& x, const KleinPoint& y) {
  return separation_rate(x.dim()) * dist(x, y);
}

double invert_cosh_power_integral(int d, double target, double lo, double hi) {
  return invert_increasing([d](double x) { return cosh_power_integral(d - 1, x); },
                           [d](double x) { return std::pow(std::cosh(x), d - 1); }, target, lo, hi);
}

double sample_offset(int d, double tau_lo, double tau_hi, Rng& rng) {
  double Glo = cosh_power_integral(d - 1, tau_lo);
  double Ghi = cosh_power_integral(d - 1, tau_hi);
  double target = Glo + uniform01(rng) * (Ghi - Glo);
  double tau = invert_cosh_power_integral(d, target, tau_lo, tau_hi);
  return std::tanh(tau);
}

namespace {

void check_process_args(int d, double gamma, double R) {
  if (d < 2) throw UsageError("sample_process: d must be >= 2");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw UsageError("sample_process: gamma must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) throw UsageError("sample_process: window radius must be positive");
}

Hyperplane draw_hyperplane(int d, double R, double rho, Rng& rng) {
  Vector u = random_direction(d, rng);
  double t = sample_offset(d, 0.0, R, rng);
  if (t >= rho) t = std::nextafter(rho, 0.0);
  return Hyperplane(u, t);
}

}  // namespace

ProcessSample sample_process(int d, double gamma, double window_radius, std::uint64_t seed) {
  check_process_args(d, gamma, window_radius);
  ProcessSample s;
  s.d = d;
  s.gamma = gamma;
  s.window_radius = window_radius;
  s.seed = seed;
  Rng rng(seed);
  std::poisson_distribution<long> count(gamma * mu_hit_ball(d, window_radius));
  long n = count(rng);
  double rho = std::tanh(window_radius);
  s.hyperplanes.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) s.hyperplanes.push_back(draw_hyperplane(d, window_radius, rho, rng));
  return s;
}

MarkedSample sample_marked_process(int d, double gamma_max, double window_radius, std::uint64_t seed) {
  check_process_args(d, gamma_max, window_radius);
  MarkedSample m;
  m.base.d = d;
  m.base.gamma = gamma_max;
  m.base.window_radius = window_radius;
  m.base.seed = seed;
  Rng rng(seed);
  std::poisson_distribution<long> count(gamma_max * mu_hit_ball(d, window_radius));
  long n = count(rng);
  double rho = std::tanh(window_radius);
  for (long i = 0; i < n; ++i) {
    m.base.hyperplanes.push_back(draw_hyperplane(d, window_radius, rho, rng));
    m.marks.push_back(gamma_max * uniform01(rng));
  }
  return m;
}

Hyperplane sample_wall(int d, const WallSet& wall, Rng& rng) {
  if (wall.center.size() != d) throw UsageError("sample_wall: center dimension mismatch");
  if (!(0.0 < wall.offset_low && wall.offset_low < wall.offset_high && wall.offset_high < 1.0))
    throw UsageError("sample_wall: need 0 < a < b < 1");
  if (!(wall.cap_radius > 0.0 && wall.cap_radius < std::numbers::pi))
    throw UsageError("sample_wall: cap radius must lie in (0, pi)");
  Vector c = wall.center.normalized();
  double cos_eps = std::cos(wall.cap_radius);
  Vector u;
  // rejection on the sphere
  for (long tries = 0;; ++tries) {
    if (tries > 100000000L) throw NumericError("sample_wall: cap too small for rejection");
    u = random_direction(d, rng);
    double c_ang = std::min(1.0, std::max(-1.0, u.dot(c)));
    if (c_ang > cos_eps && std::acos(c_ang) < wall.cap_radius) break;
  }
  double lo = std::atanh(wall.offset_low), hi = std::atanh(wall.offset_high);
  double t = sample_offset(d, lo, hi, rng);
  t = std::min(std::max(t, std::nextafter(wall.offset_low, 1.0)), std::nextafter(wall.offset_high, 0.0));
  return Hyperplane(u, t);
}

Hyperplane sample_wall(int d, const WallSet& wall, std::uint64_t seed) {
  Rng rng(seed);
  return sample_wall(d, wall, rng);
}

namespace {

struct JointIntegrand {
  int d;
  double r, s;
  double sech_s, one_minus_tanh_s, sinh_r;

  // endpoints of the tau-interval of H(u, tau) hitting the far ball, u1 = cos(theta)
  void far_interval(double theta, double& lo, double& hi) const {
    // a = cos(theta) tanh(s); 1 -+ a assembled without cancellation
    double c = std::cos(theta);
    double sh = std::sin(0.5 * theta), ch = std::cos(0.5 * theta);
    double one_minus = 2.0 * sh * sh + c * one_minus_tanh_s;
    double one_plus = 2.0 * ch * ch - c * one_minus_tanh_s;
    double alpha = 0.5 * std::log(one_plus / one_minus);
    double w = std::asinh(sinh_r * sech_s / std::sqrt(one_minus * one_plus));
    lo = alpha - w;
    hi = alpha + w;
  }

  double overlap(double theta) const {
    double lo, hi;
    far_interval(theta, lo, hi);
    double a = std::max(-r, lo), b = std::min(r, hi);
    if (!(b > a)) return 0.0;
    return cosh_power_integral(d - 1, b) - cosh_power_integral(d - 1, a);
  }

  double g(int which, double theta) const {
    double lo, hi;
    far_interval(theta, lo, hi);
    switch (which) {
      case 0: return hi - r;
      case 1: return lo + r;
      case 2: return lo - r;
      default: return hi + r;
    }
  }
};

}  // namespace

double mu_joint_balls(int d, const KleinPoint& x, const KleinPoint& y, double r) {
  if (x.dim() != d || y.dim() != d) throw UsageError("mu_joint_balls: dimension mismatch");
  return mu_joint_balls_at_distance(d, dist(x, y), r);
}

double mu_joint_balls_at_distance(int d, double s, double r) {
  if (d < 2) throw UsageError("mu_joint_balls: d must be >= 2");
  if (!(r > 0.0)) throw UsageError("mu_joint_balls: r must be positive");
  if (!(s >= 0.0)) throw UsageError("mu_joint_balls: distance must be >= 0");
  if (s == 0.0) return mu_hit_ball(d, r);

  JointIntegrand J{d, r, s, 1.0 / std::cosh(s), 2.0 / (std::exp(2.0 * s) + 1.0), std::sinh(r)};
  const double pi = std::numbers::pi;
  // normalized marginal of arccos(u1) under uniform u on S^{d-1}
  double wnorm = std::sqrt(pi) * std::exp(std::lgamma(0.5 * (d - 1)) - std::lgamma(0.5 * d));
  auto weight = [d, wnorm](double th) { return d == 2 ? 1.0 / wnorm : std::pow(std::sin(th), d - 2) / wnorm; };

  // kinks: where an endpoint of the far interval meets +-r
  std::vector<double> cuts{0.0, pi};
  // uniform scan plus geometric points toward both ends, where the support
  // shrinks like e^{-s} for distant balls
  std::vector<double> scan;
  const int grid = 4096;
  for (int k = 0; k <= grid; ++k) scan.push_back(pi * k / grid);
  for (int j = 13; j <= 90; ++j) {
    scan.push_back(std::ldexp(pi, -j));
    scan.push_back(pi - std::ldexp(pi, -j));
  }
  std::sort(scan.begin(), scan.end());
  for (int which = 0; which < 4; ++which) {
    double prev = J.g(which, scan[0]);
    for (std::size_t k = 1; k < scan.size(); ++k) {
      double th = scan[k];
      double cur = J.g(which, th);
      if ((prev < 0.0) != (cur < 0.0)) {
        double a = scan[k - 1], b = th, ga = prev;
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
          double m = 0.5 * (a + b);
          double gm = J.g(which, m);
          if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
          } else {
            b = m;
          }
        }
        cuts.push_back(0.5 * (a + b));
      }
      prev = cur;
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b - a < 1e-15) continue;
    double err = 0.0;
    auto f = [&](double th) { return J.overlap(th) * weight(th); };
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13, &err);
    total += v;
    err_total += err;
  }
  double scale = mu_hit_ball(d, r);
  if (!(err_total <= 1e-9 * scale))
    throw NumericError("mu_joint_balls: quadrature error " + std::to_string(err_total) + " above tolerance");
  return total;
}

}  // namespace hypertess
