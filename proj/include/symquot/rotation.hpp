#pragma once

#include <array>
#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace symquot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Raised when an input admits no unique answer (zero target, rank-deficient
// alignment problem, ...).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a computed quantity violates an invariant by more than round-off.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Element of SO(3), stored as a unit quaternion (w, x, y, z).
///
/// Composition renormalizes; rotation matrices are materialized on demand.
/// The quaternion sign is not canonical unless `canonical_quaternion()` is used.
class Rotation {
 public:
  Rotation() = default;

  static Rotation identity() { return {}; }

  /// Normalizes the input; throws std::invalid_argument on a zero or
  /// non-finite quaternion.
  static Rotation from_quaternion(double w, double x, double y, double z);
  static Rotation from_quaternion(const Eigen::Quaterniond& q);

  /// Rejects matrices with |RᵀR − I| or |det R − 1| above `tol`.
  static Rotation from_matrix(const Mat3& m, double tol = 1e-9);

  /// Right-handed rotation by `angle` radians about `axis` (any nonzero length).
  static Rotation from_axis_angle(const Vec3& axis, double angle);

  /// Exponential of the skew matrix [omega]_x: angle |omega| about omega/|omega|.
  static Rotation exp(const Vec3& omega);

  /// Exponential of a 3x3 skew-symmetric matrix.
  static Rotation exp_skew(const Mat3& s);

  /// R = Rz(alpha) Ry(beta) Rz(gamma).
  static Rotation from_euler_zyz(double alpha, double beta, double gamma);

  Mat3 matrix() const;
  const Eigen::Quaterniond& quaternion() const { return q_; }

  /// Quaternion with w >= 0; for w == 0 the first nonzero of (x, y, z) is positive.
  std::array<double, 4> canonical_quaternion() const;

  /// Axis-angle vector (angle in [0, pi]).
  Vec3 log() const;

  /// Rotation angle in [0, pi].
  double angle() const;

  Rotation inverse() const;
  Vec3 apply(const Vec3& v) const { return q_ * v; }

  Rotation operator*(const Rotation& rhs) const;
  Vec3 operator*(const Vec3& v) const { return apply(v); }

 private:
  explicit Rotation(const Eigen::Quaterniond& q) : q_(q) {}

  Eigen::Quaterniond q_ = Eigen::Quaterniond::Identity();
};

/// Skew matrix [v]_x with [v]_x w = v × w.
Mat3 skew(const Vec3& v);

/// Inverse of `skew` applied to the skew part of `m`.
Vec3 vee(const Mat3& m);

/// Rotation angle between two rotations, arccos((tr(r1ᵀ r2) − 1) / 2).
///
/// Evaluated through the relative quaternion so that angles near 0 and pi keep
/// full precision. The trace-based arccos argument is checked against
/// [−1 − 1e-9, 1 + 1e-9]; a value outside raises ConsistencyError.
double geodesic_distance(const Rotation& r1, const Rotation& r2);

}  // namespace symquot
