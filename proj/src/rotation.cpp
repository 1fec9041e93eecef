#include "symquot/rotation.hpp"

#include <cmath>
#include <string>

namespace symquot {

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(n) || n == 0.0) {
    throw std::invalid_argument("quaternion must be finite and nonzero");
  }
  return Rotation(Eigen::Quaterniond(w / n, x / n, y / n, z / n));
}

Rotation Rotation::from_quaternion(const Eigen::Quaterniond& q) {
  return from_quaternion(q.w(), q.x(), q.y(), q.z());
}

Rotation Rotation::from_matrix(const Mat3& m, double tol) {
  if (!m.allFinite()) throw std::invalid_argument("rotation matrix must be finite");
  const double orth = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (orth > tol || std::abs(det - 1.0) > tol) {
    throw std::invalid_argument("matrix is not a rotation (orthogonality defect " +
                                std::to_string(orth) + ", det " + std::to_string(det) + ")");
  }
  return from_quaternion(Eigen::Quaterniond(m));
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("rotation axis must be nonzero");
  const double h = 0.5 * angle;
  const Vec3 v = axis * (std::sin(h) / n);
  return from_quaternion(std::cos(h), v.x(), v.y(), v.z());
}

Rotation Rotation::exp(const Vec3& omega) {
  const double theta = omega.norm();
  if (theta < 1e-300) return identity();
  return from_axis_angle(omega, theta);
}

Rotation Rotation::exp_skew(const Mat3& s) { return exp(vee(s)); }

Rotation Rotation::from_euler_zyz(double alpha, double beta, double gamma) {
  const Vec3 ez = Vec3::UnitZ();
  const Vec3 ey = Vec3::UnitY();
  return from_axis_angle(ez, alpha) * from_axis_angle(ey, beta) * from_axis_angle(ez, gamma);
}

Mat3 Rotation::matrix() const { return q_.toRotationMatrix(); }

std::array<double, 4> Rotation::canonical_quaternion() const {
  std::array<double, 4> c{q_.w(), q_.x(), q_.y(), q_.z()};
  double sign = 1.0;
  for (double v : c) {
    if (v != 0.0) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& v : c) v *= sign;
  return c;
}

Vec3 Rotation::log() const {
  const auto c = canonical_quaternion();
  const Vec3 v(c[1], c[2], c[3]);
  const double s = v.norm();
  if (s < 1e-300) return Vec3::Zero();
  const double theta = 2.0 * std::atan2(s, c[0]);
  return v * (theta / s);
}

double Rotation::angle() const {
  const double s = q_.vec().norm();
  return 2.0 * std::atan2(s, std::abs(q_.w()));
}

Rotation Rotation::inverse() const { return Rotation(q_.conjugate()); }

Rotation Rotation::operator*(const Rotation& rhs) const {
  return Rotation((q_ * rhs.q_).normalized());
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  return Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)));
}

double geodesic_distance(const Rotation& r1, const Rotation& r2) {
  const Mat3 m = r1.matrix().transpose() * r2.matrix();
  const double arg = 0.5 * (m.trace() - 1.0);
  if (!(arg >= -1.0 - 1e-9 && arg <= 1.0 + 1e-9)) {
    throw ConsistencyError("geodesic_distance: arccos argument " + std::to_string(arg) +
                           " outside [-1, 1] beyond round-off");
  }
  return (r1.inverse() * r2).angle();
}

}  // namespace symquot
