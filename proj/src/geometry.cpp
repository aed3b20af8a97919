#include "hypertess/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

Matrix minkowski(int d) {
  Matrix J = Matrix::Identity(d + 1, d + 1);
  J(0, 0) = -1.0;
  return J;
}

double clamp_unit(double c) { return c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c); }

}  // namespace

KleinPoint::KleinPoint(Vector coords) : x_(std::move(coords)) {
  if (x_.size() < 1) throw UsageError("KleinPoint: empty coordinate vector");
  if (!(x_.squaredNorm() < 1.0))
    throw DomainError("KleinPoint: norm " + std::to_string(x_.norm()) + " is not < 1");
}

KleinPoint KleinPoint::origin(int d) {
  if (d < 1) throw UsageError("KleinPoint::origin: bad dimension");
  return KleinPoint(Vector::Zero(d));
}

KleinPoint KleinPoint::polar(const Vector& dir, double s) {
  double n = dir.norm();
  if (n == 0.0) throw UsageError("KleinPoint::polar: zero direction");
  return KleinPoint(dir * (std::tanh(s) / n));
}

Vector KleinPoint::lift() const {
  const int d = dim();
  Vector X(d + 1);
  double w = 1.0 / std::sqrt(1.0 - x_.squaredNorm());
  X[0] = w;
  X.tail(d) = x_ * w;
  return X;
}

KleinPoint KleinPoint::from_hyperboloid(const Vector& X) {
  if (!(X[0] > 0.0)) throw DomainError("from_hyperboloid: point not on the upper sheet");
  Vector x = X.tail(X.size() - 1) / X[0];
  // rounding can push far points to the sphere; pull them back inside
  double n2 = x.squaredNorm();
  if (n2 >= 1.0) x *= std::nextafter(1.0, 0.0) / std::sqrt(n2);
  return KleinPoint(std::move(x));
}

Hyperplane::Hyperplane(const Vector& normal, double offset) {
  double n = normal.norm();
  if (normal.size() < 1 || !(n > 0.0) || !std::isfinite(n))
    throw UsageError("Hyperplane: normal must be a nonzero finite vector");
  // already-unit normals are kept bitwise so re-canonicalising is a no-op
  if (std::fabs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) n = 1.0;
  u_ = normal / n;
  t_ = offset / n;
  if (!(std::fabs(t_) < 1.0)) throw DomainError("Hyperplane: chord misses the unit ball");
  bool flip = t_ < 0.0;
  if (t_ == 0.0) {
    for (int i = 0; i < u_.size(); ++i) {
      if (u_[i] != 0.0) {
        flip = u_[i] < 0.0;
        break;
      }
    }
  }
  if (flip) {
    u_ = -u_;
    t_ = -t_;
  }
  if (t_ == 0.0) t_ = 0.0;  // drop -0
}

Vector Hyperplane::lorentz_normal() const {
  Vector N(u_.size() + 1);
  N[0] = t_;
  N.tail(u_.size()) = u_;
  return N;
}

bool Cap::contains(const Vector& w) const {
  return std::acos(clamp_unit(w.dot(center))) < radius;
}

int side(const Hyperplane& h, const Vector& x) {
  if (x.size() != h.normal().size()) throw UsageError("side: dimension mismatch");
  double v = h.normal().dot(x) - h.offset();
  if (std::fabs(v) <= kSideTolerance) return 0;
  return v > 0.0 ? 1 : -1;
}

int side(const Hyperplane& h, const KleinPoint& x) { return side(h, x.coords()); }

bool segment_crosses(const Hyperplane& h, const Vector& x, const Vector& y) {
  int a = side(h, x);
  int b = side(h, y);
  return a * b <= 0;
}

bool segment_crosses(const Hyperplane& h, const KleinPoint& x, const KleinPoint& y) {
  return segment_crosses(h, x.coords(), y.coords());
}

bool ray_hits(const Hyperplane& h, const Vector& w) {
  if (w.size() != h.normal().size()) throw UsageError("ray_hits: dimension mismatch");
  return std::acos(clamp_unit(w.dot(h.normal()))) < std::acos(h.offset());
}

std::optional<Cap> cut_cap_at_radius(const Hyperplane& h, double r) {
  if (!(r > 0.0)) throw UsageError("cut_cap_at_radius: r must be positive");
  double rho = std::isinf(r) ? 1.0 : std::tanh(r);
  if (!(h.offset() < rho)) return std::nullopt;
  return Cap{h.normal(), std::acos(clamp_unit(h.offset() / rho))};
}

double dist_from_origin(const Vector& x) { return std::atanh(x.norm()); }

double dist(const KleinPoint& x, const KleinPoint& y) {
  if (x.dim() != y.dim()) throw UsageError("dist: dimension mismatch");
  if (x.coords() == y.coords()) return 0.0;
  // -<X,Y>_L = (1 - <x,y>) / sqrt((1-|x|^2)(1-|y|^2)); use the sinh form of
  // arcosh to stay accurate for nearby points
  double a = 1.0 - x.coords().squaredNorm();
  double b = 1.0 - y.coords().squaredNorm();
  double diff2 = (x.coords() - y.coords()).squaredNorm();
  double cross = x.coords().squaredNorm() * y.coords().squaredNorm() -
                 x.coords().dot(y.coords()) * x.coords().dot(y.coords());
  if (cross < 0.0) cross = 0.0;
  // cosh D - 1 = (|x-y|^2 - (|x|^2|y|^2 - <x,y>^2)) / (sqrt(ab)(1 - <x,y> + sqrt(ab)))
  double sab = std::sqrt(a * b);
  double num = diff2 - cross;
  if (num < 0.0) num = 0.0;
  double cm1 = num / (sab * (1.0 - x.coords().dot(y.coords()) + sab));
  // arcosh(1 + c) = log1p(c + sqrt(c(c+2)))
  return std::log1p(cm1 + std::sqrt(cm1 * (cm1 + 2.0)));
}

double sphere_area(int j) {
  if (j < 1) throw UsageError("sphere_area: j must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(0.5 * j);
}

double ball_volume(int d, double r) {
  if (d < 1) throw UsageError("ball_volume: bad dimension");
  if (!(r >= 0.0)) throw UsageError("ball_volume: r must be >= 0");
  if (r == 0.0) return 0.0;
  if (d == 1) return 2.0 * r;
  if (d == 2) return 2.0 * std::numbers::pi * (std::cosh(r) - 1.0);
  double err = 0.0;
  auto f = [d](double s) { return std::pow(std::sinh(s), d - 1); };
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, r, 20, 1e-12, &err);
  if (!(err <= 1e-10 * std::fabs(v))) throw NumericError("ball_volume: quadrature tolerance not met");
  return sphere_area(d) * v;
}

double sinh_power_integral(int n, double tau) {
  if (n < 0) throw UsageError("sinh_power_integral: negative power");
  if (n == 0) return tau;
  if (n == 1) return std::cosh(tau) - 1.0;
  double sh = std::sinh(tau), ch = std::cosh(tau);
  return std::pow(sh, n - 1) * ch / n - (n - 1.0) / n * sinh_power_integral(n - 2, tau);
}

double cosh_power_integral(int n, double tau) {
  if (n < 0) throw UsageError("cosh_power_integral: negative power");
  if (n == 0) return tau;
  if (n == 1) return std::sinh(tau);
  double sh = std::sinh(tau), ch = std::cosh(tau);
  return std::pow(ch, n - 1) * sh / n + (n - 1.0) / n * cosh_power_integral(n - 2, tau);
}

Isometry::Isometry(int d) : m_(Matrix::Identity(d + 1, d + 1)) {
  if (d < 1) throw UsageError("Isometry: bad dimension");
}

Isometry Isometry::from_matrix(Matrix lorentz) {
  if (lorentz.rows() != lorentz.cols() || lorentz.rows() < 2)
    throw UsageError("Isometry: matrix must be square of size d+1");
  Isometry g(static_cast<int>(lorentz.rows()) - 1);
  g.m_ = std::move(lorentz);
  if (g.form_defect() > 1e-10 || !(g.m_(0, 0) > 0.0))
    throw DomainError("Isometry: matrix does not preserve the upper hyperboloid");
  return g;
}

Isometry Isometry::translation_along_axis(int d, int axis, double s) {
  if (axis < 1 || axis > d) throw UsageError("translation_along_axis: axis out of range");
  Isometry g(d);
  g.m_(0, 0) = std::cosh(s);
  g.m_(axis, axis) = std::cosh(s);
  g.m_(0, axis) = std::sinh(s);
  g.m_(axis, 0) = std::sinh(s);
  return g;
}

Isometry Isometry::boost(const Vector& direction, double s) {
  const int d = static_cast<int>(direction.size());
  double n = direction.norm();
  Isometry g(d);
  if (n == 0.0 || s == 0.0) return g;
  Vector u = direction / n;
  double ch = std::cosh(s), sh = std::sinh(s);
  g.m_(0, 0) = ch;
  g.m_.block(0, 1, 1, d) = sh * u.transpose();
  g.m_.block(1, 0, d, 1) = sh * u;
  g.m_.block(1, 1, d, d) = Matrix::Identity(d, d) + (ch - 1.0) * u * u.transpose();
  return g;
}

Isometry Isometry::rotation(int d, int i, int j, double angle) {
  if (i < 1 || i > d || j < 1 || j > d || i == j) throw UsageError("rotation: bad plane");
  Isometry g(d);
  double c = std::cos(angle), s = std::sin(angle);
  g.m_(i, i) = c;
  g.m_(j, j) = c;
  g.m_(i, j) = -s;
  g.m_(j, i) = s;
  return g;
}

Isometry Isometry::rotation_taking(const Vector& from, const Vector& to) {
  const int d = static_cast<int>(from.size());
  if (to.size() != from.size()) throw UsageError("rotation_taking: dimension mismatch");
  Vector a = from.normalized(), b = to.normalized();
  Isometry g(d);
  double c = clamp_unit(a.dot(b));
  Vector w = b - c * a;
  double wn = w.norm();
  bool antipodal = false;
  if (wn < 1e-15) {
    if (c > 0.0) return g;
    antipodal = true;
    // antipodal: rotate by pi in a plane containing a
    Vector e = Vector::Zero(d);
    int k = 0;
    for (int i = 1; i < d; ++i)
      if (std::fabs(a[i]) < std::fabs(a[k])) k = i;
    e[k] = 1.0;
    w = e - e.dot(a) * a;
    wn = w.norm();
  }
  w /= wn;
  double theta = antipodal ? std::numbers::pi : std::atan2(wn, c);
  // R = I + sin(th)(w a^T - a w^T) + (cos(th)-1)(a a^T + w w^T)
  Matrix R = Matrix::Identity(d, d) + std::sin(theta) * (w * a.transpose() - a * w.transpose()) +
             (std::cos(theta) - 1.0) * (a * a.transpose() + w * w.transpose());
  g.m_.block(1, 1, d, d) = R;
  return g;
}

Isometry Isometry::to_origin(const KleinPoint& c) {
  double n = c.norm();
  if (n == 0.0) return Isometry(c.dim());
  return boost(c.coords(), -std::atanh(n));
}

Isometry Isometry::operator*(const Isometry& other) const {
  if (dim() != other.dim()) throw UsageError("Isometry: dimension mismatch");
  Isometry g(dim());
  g.m_ = m_ * other.m_;
  return g;
}

Isometry Isometry::inverse() const {
  Matrix J = minkowski(dim());
  Isometry g(dim());
  g.m_ = J * m_.transpose() * J;
  return g;
}

KleinPoint Isometry::apply(const KleinPoint& x) const {
  if (x.dim() != dim()) throw UsageError("Isometry::apply: dimension mismatch");
  return KleinPoint::from_hyperboloid(m_ * x.lift());
}

Vector Isometry::apply_coords(const Vector& x) const {
  const int d = dim();
  Vector X(d + 1);
  X[0] = 1.0;
  X.tail(d) = x;
  Vector Y = m_ * X;
  return Y.tail(d) / Y[0];
}

Hyperplane Isometry::apply(const Hyperplane& h) const {
  if (h.dim() != dim()) throw UsageError("Isometry::apply: dimension mismatch");
  Vector N = m_ * h.lorentz_normal();
  return Hyperplane(N.tail(dim()), N[0]);
}

double Isometry::form_defect() const {
  Matrix J = minkowski(dim());
  return (m_.transpose() * J * m_ - J).cwiseAbs().maxCoeff();
}

double distance_to_hyperplane(const Hyperplane& h, const KleinPoint& c) {
  if (h.dim() != c.dim()) throw UsageError("distance_to_hyperplane: dimension mismatch");
  double a = std::fabs(h.normal().dot(c.coords()) - h.offset());
  double sh = a / (std::sqrt(1.0 - c.coords().squaredNorm()) * std::sqrt(1.0 - h.offset() * h.offset()));
  return std::asinh(sh);
}

bool hits_ball(const Hyperplane& h, const KleinPoint& c, double rho) {
  Hyperplane moved = Isometry::to_origin(c).apply(h);
  return moved.offset() < std::tanh(rho);
}

bool segment_meets_ball(const Vector& x, const Vector& y, const KleinPoint& c, double rho) {
  Isometry g = Isometry::to_origin(c);
  Vector a = g.apply_coords(x);
  Vector b = g.apply_coords(y);
  Vector ab = b - a;
  double L2 = ab.squaredNorm();
  double s = L2 > 0.0 ? -a.dot(ab) / L2 : 0.0;
  s = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
  return (a + s * ab).norm() < std::tanh(rho);
}

}  // namespace hypertess
