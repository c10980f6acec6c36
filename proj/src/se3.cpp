#include "rigidkit/se3.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <string>

namespace rigidkit {

namespace {

// Homogeneous-row tolerance and the largest rotation drift from_matrix4 will repair.
constexpr double kHomogeneousRow = 1e-9;
constexpr double kRepairLimit = 1e-4;

// theta - sin(theta) cancels badly for small angles; below this use the series.
constexpr double kJacobianSeriesAngle = 1e-2;

// Left Jacobian of SO(3): V(w) = I + b [w]x + c [w]x^2.
Mat3 left_jacobian(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double b, c;
  if (theta < tol::kSmallAngle) {
    b = 0.5 - theta2 / 24.0;
    c = 1.0 / 6.0 - theta2 / 120.0;
  } else {
    // (1 - cos)/theta^2 via the half-angle form, which has no cancellation.
    const double sinc_half = std::sin(0.5 * theta) / (0.5 * theta);
    b = 0.5 * sinc_half * sinc_half;
    if (theta < kJacobianSeriesAngle) {
      c = 1.0 / 6.0 - theta2 / 120.0 + theta2 * theta2 / 5040.0 - theta2 * theta2 * theta2 / 362880.0;
    } else {
      c = (theta - std::sin(theta)) / (theta2 * theta);
    }
  }
  const Mat3 k = hat3(w);
  return Mat3::Identity() + b * k + c * k * k;
}

Mat3 left_jacobian_inverse(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double d;
  if (theta < tol::kSmallAngle) {
    d = 1.0 / 12.0 + theta2 / 720.0;
  } else {
    // 1/theta^2 - (1 + cos)/(2 theta sin), written with cot(theta/2) to stay finite at pi.
    const double half = 0.5 * theta;
    d = 1.0 / theta2 - std::cos(half) / (2.0 * theta * std::sin(half));
  }
  const Mat3 k = hat3(w);
  return Mat3::Identity() - 0.5 * k + d * k * k;
}

}  // namespace

AdjointMatrix::AdjointMatrix(const Transform& t) {
  const Mat3& r = t.rotation.matrix();
  a_.setZero();
  a_.topLeftCorner<3, 3>() = r;
  a_.topRightCorner<3, 3>() = hat3(t.translation) * r;
  a_.bottomRightCorner<3, 3>() = r;
}

Transform compose(const Transform& a, const Transform& b) {
  return Transform(a.rotation * b.rotation, a.rotation * b.translation + a.translation);
}

Transform inverse(const Transform& t) {
  const RotationMatrix rt = t.rotation.transpose();
  return Transform(rt, -(rt * t.translation));
}

Vec3 transform_point(const Transform& t, const Vec3& p) { return t.rotation * p + t.translation; }

Vec3 transform_direction(const Transform& t, const Vec3& v) { return t.rotation * v; }

Transform se3_exp(const Twist& xi) {
  return Transform(so3_exp(RotationVector(xi.w)), left_jacobian(xi.w) * xi.v);
}

Twist se3_log(const Transform& t) {
  const Vec3 w = so3_log(t.rotation).value();
  return Twist(left_jacobian_inverse(w) * t.translation, w);
}

AdjointMatrix adjoint(const Transform& t) { return AdjointMatrix(t); }

Twist adjoint_apply_twist(const Transform& t, const Twist& xi) {
  const Vec3 rw = t.rotation * xi.w;
  return Twist(t.rotation * xi.v + t.translation.cross(rw), rw);
}

Wrench transform_wrench(const Transform& t, const Wrench& h) {
  const Vec3 rf = t.rotation * h.f;
  return Wrench(rf, t.rotation * h.tau + t.translation.cross(rf));
}

Mat4 to_matrix4(const Transform& t) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = t.rotation.matrix();
  m.topRightCorner<3, 1>() = t.translation;
  return m;
}

Transform from_matrix4(const Mat4& m) {
  const Eigen::RowVector4d expected(0.0, 0.0, 0.0, 1.0);
  const double row_err = (m.row(3) - expected).cwiseAbs().maxCoeff();
  if (!(row_err <= kHomogeneousRow)) {
    throw InvalidHomogeneousRow("last row of homogeneous matrix is not (0, 0, 0, 1)");
  }
  const Mat3 block = m.topLeftCorner<3, 3>();
  const Vec3 t = m.topRightCorner<3, 1>();
  if (!block.allFinite() || !t.allFinite()) throw NotARotation("homogeneous matrix has non-finite entries");

  const double err = orthogonality_error(block);
  if (err <= tol::kOrthogonality) return Transform(RotationMatrix(block), t);
  if (err < kRepairLimit) return Transform(orthonormalize(block), t);
  throw NotARotation("rotation block deviates from SO(3) by " + std::to_string(err) +
                     ", beyond the repair limit 1e-4");
}

}  // namespace rigidkit
