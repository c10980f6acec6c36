#pragma once

#include <Eigen/Core>

#include "rigidkit/errors.hpp"

namespace rigidkit {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

namespace tol {
/// Max of ||R^T R - I||_F and |det R - 1| accepted for a rotation.
inline constexpr double kOrthogonality = 1e-9;
/// Below this angle exp/log coefficients switch to their Taylor series.
inline constexpr double kSmallAngle = 1e-8;
/// Above pi - kNearPi the log map recovers the axis from the symmetric part.
inline constexpr double kNearPi = 1e-4;
inline constexpr double kQuaternionNorm = 1e-6;
inline constexpr double kSkew = 1e-9;
/// Distance of |pitch| from pi/2 at which Euler extraction reports gimbal lock.
inline constexpr double kGimbal = 1e-7;
}  // namespace tol

/// Distance of `m` from SO(3) as max(||m^T m - I||_F, |det m - 1|).
double orthogonality_error(const Mat3& m);

/// Element of SO(3). Construction validates orthogonality and det = +1.
class RotationMatrix {
public:
  RotationMatrix() : m_(Mat3::Identity()) {}

  /// Throws NotARotation if `m` is farther than tol::kOrthogonality from SO(3).
  explicit RotationMatrix(const Mat3& m);

  static RotationMatrix identity() { return RotationMatrix(); }

  /// Skips validation. Only for matrices produced by closed-form rotation
  /// formulas whose output is orthogonal to rounding error.
  static RotationMatrix from_trusted(const Mat3& m);

  const Mat3& matrix() const noexcept { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  RotationMatrix transpose() const { return from_trusted(m_.transpose()); }

  /// Product, re-projected onto SO(3) when accumulated drift exceeds tolerance.
  RotationMatrix operator*(const RotationMatrix& rhs) const;
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

private:
  Mat3 m_;
};

/// Scalar-first Hamilton quaternion (w, x, y, z), stored unit-norm with w >= 0.
class UnitQuaternion {
public:
  UnitQuaternion() : q_(1.0, 0.0, 0.0, 0.0) {}

  /// Renormalizes and flips to canonical sign. Throws NotUnitQuaternion when
  /// the norm is off by more than tol::kQuaternionNorm.
  UnitQuaternion(double w, double x, double y, double z);

  static UnitQuaternion identity() { return UnitQuaternion(); }

  double w() const noexcept { return q_[0]; }
  double x() const noexcept { return q_[1]; }
  double y() const noexcept { return q_[2]; }
  double z() const noexcept { return q_[3]; }
  Vec3 vec() const { return q_.tail<3>(); }
  /// (w, x, y, z)
  const Vec4& coeffs() const noexcept { return q_; }

  friend bool operator==(const UnitQuaternion& a, const UnitQuaternion& b) { return a.q_ == b.q_; }

private:
  Vec4 q_;
};

/// Axis-angle vector: direction is the axis, norm the angle in radians.
class RotationVector {
public:
  RotationVector() : r_(Vec3::Zero()) {}
  explicit RotationVector(const Vec3& r) : r_(r) {}
  RotationVector(double x, double y, double z) : r_(x, y, z) {}

  const Vec3& value() const noexcept { return r_; }
  double angle() const { return r_.norm(); }

private:
  Vec3 r_;
};

enum class EulerConvention {
  /// yaw about z, then pitch about the new y, then roll about the new x.
  ZYX_intrinsic,
  /// roll about fixed x, then pitch about fixed y, then yaw about fixed z.
  XYZ_extrinsic,
};

/// Angles are (roll, pitch, yaw) in radians: rotations about x, y and z.
/// Both conventions describe R = Rz(yaw) * Ry(pitch) * Rx(roll).
struct EulerAngles {
  Vec3 angles = Vec3::Zero();
  EulerConvention convention = EulerConvention::ZYX_intrinsic;

  double roll() const { return angles[0]; }
  double pitch() const { return angles[1]; }
  double yaw() const { return angles[2]; }
};

struct EulerDecomposition {
  EulerAngles euler;
  /// Set when |pitch| is within tol::kGimbal of pi/2; roll is then 0 and yaw
  /// carries the combined free angle.
  bool gimbal_lock = false;
};

/// Cross-product matrix: hat3(v) * u == v.cross(u).
Mat3 hat3(const Vec3& v);
/// Inverse of hat3. Throws NotSkewSymmetric if ||S + S^T||_F >= tol::kSkew.
Vec3 vee3(const Mat3& s);

/// Rodrigues' formula.
RotationMatrix so3_exp(const RotationVector& r);
/// Principal logarithm, angle in [0, pi].
RotationVector so3_log(const RotationMatrix& rot);

RotationMatrix quat_to_matrix(const UnitQuaternion& q);
/// Shepperd's method; canonical sign.
UnitQuaternion matrix_to_quat(const RotationMatrix& rot);
/// Hamilton product a * b (apply b first, then a).
UnitQuaternion quat_compose(const UnitQuaternion& a, const UnitQuaternion& b);
UnitQuaternion quat_inverse(const UnitQuaternion& q);

RotationMatrix euler_to_matrix(const EulerAngles& e);
EulerDecomposition matrix_to_euler(const RotationMatrix& rot, EulerConvention convention);

Vec3 rotate(const RotationMatrix& rot, const Vec3& v);

/// Nearest rotation in Frobenius norm (SVD projection).
/// Throws DegenerateMatrix for singular input or input more than 0.5 away from SO(3).
RotationMatrix orthonormalize(const Mat3& m);

/// Angle of the relative rotation a^T b, in [0, pi].
double geodesic_distance(const RotationMatrix& a, const RotationMatrix& b);

}  // namespace rigidkit
