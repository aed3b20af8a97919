#pragma once

#include <Eigen/Dense>
#include <optional>

namespace hypertess {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

constexpr double kSideTolerance = 1e-12;

// Point of H^d in Klein coordinates, ||coords|| < 1.
class KleinPoint {
 public:
  KleinPoint() = default;
  explicit KleinPoint(Vector coords);  // throws DomainError / UsageError

  static KleinPoint origin(int d);
  // point at hyperbolic distance s from o in direction dir (dir need not be unit)
  static KleinPoint polar(const Vector& dir, double s);

  int dim() const { return static_cast<int>(x_.size()); }
  const Vector& coords() const { return x_; }
  double operator[](int i) const { return x_[i]; }
  double norm() const { return x_.norm(); }

  // (1, x) / sqrt(1 - |x|^2) on the upper sheet
  Vector lift() const;
  static KleinPoint from_hyperboloid(const Vector& X);

 private:
  Vector x_;
};

// Chord {x : <u,x> = t} of the unit ball, canonical form t >= 0 and, when
// t == 0, first nonzero coordinate of u positive.
class Hyperplane {
 public:
  Hyperplane() = default;
  // normalizes u, canonicalizes the sign; throws DomainError when |t|/|u| >= 1
  Hyperplane(const Vector& normal, double offset);

  int dim() const { return static_cast<int>(u_.size()); }
  const Vector& normal() const { return u_; }
  double offset() const { return t_; }

  // the same plane written as (t, u) for the Lorentz action
  Vector lorentz_normal() const;

  bool operator==(const Hyperplane& o) const { return t_ == o.t_ && u_ == o.u_; }

 private:
  Vector u_;
  double t_ = 0.0;
};

// open cap {w : arccos<w, center> < radius} on S^{d-1}
struct Cap {
  Vector center;
  double radius = 0.0;

  bool contains(const Vector& w) const;
};

int side(const Hyperplane& h, const Vector& x);
int side(const Hyperplane& h, const KleinPoint& x);
bool segment_crosses(const Hyperplane& h, const Vector& x, const Vector& y);
bool segment_crosses(const Hyperplane& h, const KleinPoint& x, const KleinPoint& y);
bool ray_hits(const Hyperplane& h, const Vector& w);
std::optional<Cap> cut_cap_at_radius(const Hyperplane& h, double r);

double dist(const KleinPoint& x, const KleinPoint& y);
double dist_from_origin(const Vector& x);

// surface area of the unit sphere S^{j-1} in R^j
double sphere_area(int j);
double ball_volume(int d, double r);

// integral over [0, tau] of sinh^n
double sinh_power_integral(int n, double tau);
// integral over [0, tau] of cosh^n, odd in tau
double cosh_power_integral(int n, double tau);

class Isometry {
 public:
  explicit Isometry(int d);  // identity
  static Isometry from_matrix(Matrix lorentz);  // validates the form

  static Isometry translation_along_axis(int d, int axis, double s);  // axis is 1-based
  static Isometry boost(const Vector& direction, double s);
  static Isometry rotation(int d, int i, int j, double angle);  // 1-based plane (i, j)
  static Isometry rotation_taking(const Vector& from, const Vector& to);
  // boost taking c to the origin
  static Isometry to_origin(const KleinPoint& c);

  int dim() const { return static_cast<int>(m_.rows()) - 1; }
  const Matrix& lorentz() const { return m_; }

  Isometry operator*(const Isometry& other) const;
  Isometry inverse() const;

  KleinPoint apply(const KleinPoint& x) const;
  Vector apply_coords(const Vector& x) const;
  Hyperplane apply(const Hyperplane& h) const;

  // max |M^T J M - J|
  double form_defect() const;

 private:
  Matrix m_;
};

// hyperbolic distance from c to the plane h, via the closed form
double distance_to_hyperplane(const Hyperplane& h, const KleinPoint& c);
// h meets the open hyperbolic ball B(c, rho)
bool hits_ball(const Hyperplane& h, const KleinPoint& c, double rho);

// the closed Euclidean segment [x,y] meets the Klein image of the open ball B(c, rho)
bool segment_meets_ball(const Vector& x, const Vector& y, const KleinPoint& c, double rho);

}  // namespace hypertess
