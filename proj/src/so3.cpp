#include "rigidkit/so3.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

namespace rigidkit {

namespace {

constexpr double kPi = std::numbers::pi;

// Flip so that w >= 0, and for w == 0 the first nonzero vector component is positive.
Vec4 canonical_sign(const Vec4& q) {
  for (int i = 0; i < 4; ++i) {
    if (q[i] > 0.0) return q;
    if (q[i] < 0.0) return -q;
  }
  return q;
}

Vec3 canonical_sign(const Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (v[i] > 0.0) return v;
    if (v[i] < 0.0) return -v;
  }
  return v;
}

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return m;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return m;
}

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return m;
}

void check_convention(EulerConvention convention) {
  switch (convention) {
    case EulerConvention::ZYX_intrinsic:
    case EulerConvention::XYZ_extrinsic:
      return;
  }
  throw UnsupportedConvention("unsupported Euler convention tag " +
                              std::to_string(static_cast<int>(convention)));
}

}  // namespace

double orthogonality_error(const Mat3& m) {
  const double ortho = (m.transpose() * m - Mat3::Identity()).norm();
  const double det = std::abs(m.determinant() - 1.0);
  return std::max(ortho, det);
}

RotationMatrix::RotationMatrix(const Mat3& m) : m_(m) {
  if (!m.allFinite()) throw NotARotation("rotation matrix has non-finite entries");
  const double err = orthogonality_error(m);
  if (!(err <= tol::kOrthogonality)) {
    throw NotARotation("matrix is not a rotation (orthogonality error " + std::to_string(err) + ")");
  }
}

RotationMatrix RotationMatrix::from_trusted(const Mat3& m) {
  assert(orthogonality_error(m) <= 1e-6);
  RotationMatrix r;
  r.m_ = m;
  return r;
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& rhs) const {
  const Mat3 p = m_ * rhs.m_;
  if (orthogonality_error(p) > tol::kOrthogonality) return orthonormalize(p);
  return from_trusted(p);
}

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z) : q_(w, x, y, z) {
  const double n = q_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::kQuaternionNorm) {
    throw NotUnitQuaternion("quaternion norm " + std::to_string(n) + " is not 1");
  }
  q_ = canonical_sign(Vec4(q_ / n));
}

Mat3 hat3(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Vec3 vee3(const Mat3& s) {
  if (!((s + s.transpose()).norm() < tol::kSkew)) {
    throw NotSkewSymmetric("matrix is not skew-symmetric");
  }
  return Vec3(s(2, 1), s(0, 2), s(1, 0));
}

RotationMatrix so3_exp(const RotationVector& r) {
  const Vec3& w = r.value();
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a, b;
  if (theta < tol::kSmallAngle) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 k = hat3(w);
  return RotationMatrix::from_trusted(Mat3::Identity() + a * k + b * k * k);
}

RotationVector so3_log(const RotationMatrix& rot) {
  const Mat3& m = rot.matrix();
  // sin(theta) * axis
  const Vec3 s = 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  const double c = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
  const double sn = s.norm();
  const double theta = std::atan2(sn, c);

  if (theta < tol::kSmallAngle) return RotationVector(s * (1.0 + theta * theta / 6.0));
  if (theta < kPi - tol::kNearPi) return RotationVector(s * (theta / sn));

  // Near pi: (R + R^T)/2 = c*I + (1 - c)*n*n^T; take the best-conditioned column.
  const Mat3 nn = (0.5 * (m + m.transpose()) - c * Mat3::Identity()) / (1.0 - c);
  Eigen::Index k = 0;
  nn.diagonal().maxCoeff(&k);
  Vec3 n = nn.col(k) / std::sqrt(std::max(nn(k, k), 0.0));
  n.normalize();
  const double sign_hint = n.dot(s);
  if (std::abs(sign_hint) < 1e-12) {
    n = canonical_sign(n);
  } else if (sign_hint < 0.0) {
    n = -n;
  }
  return RotationVector(theta * n);
}

RotationMatrix quat_to_matrix(const UnitQuaternion& q) {
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  Mat3 m;
  m << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
       2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
       2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y);
  return RotationMatrix::from_trusted(m);
}

UnitQuaternion matrix_to_quat(const RotationMatrix& rot) {
  const Mat3& m = rot.matrix();
  const double tr = m.trace();
  Vec4 q;
  if (tr >= m(0, 0) && tr >= m(1, 1) && tr >= m(2, 2)) {
    const double w = 0.5 * std::sqrt(1.0 + tr);
    const double f = 0.25 / w;
    q << w, (m(2, 1) - m(1, 2)) * f, (m(0, 2) - m(2, 0)) * f, (m(1, 0) - m(0, 1)) * f;
  } else if (m(0, 0) >= m(1, 1) && m(0, 0) >= m(2, 2)) {
    const double x = 0.5 * std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2));
    const double f = 0.25 / x;
    q << (m(2, 1) - m(1, 2)) * f, x, (m(0, 1) + m(1, 0)) * f, (m(0, 2) + m(2, 0)) * f;
  } else if (m(1, 1) >= m(2, 2)) {
    const double y = 0.5 * std::sqrt(1.0 - m(0, 0) + m(1, 1) - m(2, 2));
    const double f = 0.25 / y;
    q << (m(0, 2) - m(2, 0)) * f, (m(0, 1) + m(1, 0)) * f, y, (m(1, 2) + m(2, 1)) * f;
  } else {
    const double z = 0.5 * std::sqrt(1.0 - m(0, 0) - m(1, 1) + m(2, 2));
    const double f = 0.25 / z;
    q << (m(1, 0) - m(0, 1)) * f, (m(0, 2) + m(2, 0)) * f, (m(1, 2) + m(2, 1)) * f, z;
  }
  q.normalize();
  return UnitQuaternion(q[0], q[1], q[2], q[3]);
}

UnitQuaternion quat_compose(const UnitQuaternion& a, const UnitQuaternion& b) {
  const Vec3 av = a.vec(), bv = b.vec();
  const double w = a.w() * b.w() - av.dot(bv);
  const Vec3 v = a.w() * bv + b.w() * av + av.cross(bv);
  const double n = std::sqrt(w * w + v.squaredNorm());
  return UnitQuaternion(w / n, v.x() / n, v.y() / n, v.z() / n);
}

UnitQuaternion quat_inverse(const UnitQuaternion& q) {
  return UnitQuaternion(q.w(), -q.x(), -q.y(), -q.z());
}

RotationMatrix euler_to_matrix(const EulerAngles& e) {
  check_convention(e.convention);
  return RotationMatrix::from_trusted(rot_z(e.yaw()) * rot_y(e.pitch()) * rot_x(e.roll()));
}

EulerDecomposition matrix_to_euler(const RotationMatrix& rot, EulerConvention convention) {
  check_convention(convention);
  const Mat3& m = rot.matrix();
  EulerDecomposition out;
  out.euler.convention = convention;

  const double pitch = std::atan2(-m(2, 0), std::hypot(m(0, 0), m(1, 0)));
  if (kPi / 2.0 - std::abs(pitch) < tol::kGimbal) {
    // Roll and yaw are not separable; pin roll to zero.
    out.gimbal_lock = true;
    const double p = pitch > 0.0 ? kPi / 2.0 : -kPi / 2.0;
    out.euler.angles = Vec3(0.0, p, std::atan2(-m(0, 1), m(1, 1)));
    return out;
  }
  out.euler.angles = Vec3(std::atan2(m(2, 1), m(2, 2)), pitch, std::atan2(m(1, 0), m(0, 0)));
  return out;
}

Vec3 rotate(const RotationMatrix& rot, const Vec3& v) { return rot.matrix() * v; }

RotationMatrix orthonormalize(const Mat3& m) {
  if (!m.allFinite()) throw DegenerateMatrix("matrix has non-finite entries");
  const Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3& sv = svd.singularValues();
  if (sv[2] < 1e-9) {
    throw DegenerateMatrix("matrix is singular (smallest singular value " + std::to_string(sv[2]) + ")");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Vec3 d(1.0, 1.0, (u * v.transpose()).determinant() > 0.0 ? 1.0 : -1.0);
  const Mat3 r = u * d.asDiagonal() * v.transpose();
  const double dist = (m - r).norm();
  if (dist > 0.5) {
    throw DegenerateMatrix("matrix is too far from any rotation (Frobenius distance " +
                           std::to_string(dist) + ")");
  }
  return RotationMatrix::from_trusted(r);
}

double geodesic_distance(const RotationMatrix& a, const RotationMatrix& b) {
  return so3_log(a.transpose() * b).angle();
}

}  // namespace rigidkit
