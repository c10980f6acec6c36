#pragma once

#include "rigidkit/so3.hpp"

namespace rigidkit {

/// Rigid-body motion x -> R x + t.
struct Transform {
  RotationMatrix rotation;
  Vec3 translation = Vec3::Zero();

  Transform() = default;
  Transform(const RotationMatrix& r, const Vec3& t) : rotation(r), translation(t) {}

  static Transform identity() { return Transform(); }
};

/// se(3) element, stored linear part first: (v, w).
struct Twist {
  Vec3 v = Vec3::Zero();
  Vec3 w = Vec3::Zero();

  Twist() = default;
  Twist(const Vec3& linear, const Vec3& angular) : v(linear), w(angular) {}
  static Twist from_vector(const Vec6& xi) { return Twist(xi.head<3>(), xi.tail<3>()); }

  Vec6 vector() const {
    Vec6 xi;
    xi << v, w;
    return xi;
  }
};

/// Force first, then moment: (f, tau).
struct Wrench {
  Vec3 f = Vec3::Zero();
  Vec3 tau = Vec3::Zero();

  Wrench() = default;
  Wrench(const Vec3& force, const Vec3& torque) : f(force), tau(torque) {}

  Vec6 vector() const {
    Vec6 h;
    h << f, tau;
    return h;
  }
};

/// Ad_T acting on (v, w)-ordered twists: [[R, [t]x R], [0, R]].
class AdjointMatrix {
public:
  explicit AdjointMatrix(const Transform& t);

  const Mat6& matrix() const noexcept { return a_; }
  Twist operator*(const Twist& xi) const { return Twist::from_vector(a_ * xi.vector()); }

private:
  Mat6 a_;
};

Transform compose(const Transform& a, const Transform& b);
Transform inverse(const Transform& t);

Vec3 transform_point(const Transform& t, const Vec3& p);
Vec3 transform_direction(const Transform& t, const Vec3& v);

Transform se3_exp(const Twist& xi);
Twist se3_log(const Transform& t);

AdjointMatrix adjoint(const Transform& t);
/// Ad_T xi without forming the 6x6 matrix.
Twist adjoint_apply_twist(const Transform& t, const Twist& xi);
/// Co-adjoint action; keeps f.v + tau.w invariant when paired with adjoint_apply_twist.
Wrench transform_wrench(const Transform& t, const Wrench& h);

/// Homogeneous form [[R, t], [0 0 0 1]].
Mat4 to_matrix4(const Transform& t);
/// Throws InvalidHomogeneousRow if the last row is not (0,0,0,1) within 1e-9.
/// A rotation block within 1e-4 of SO(3) is projected back onto it; anything
/// farther throws NotARotation.
Transform from_matrix4(const Mat4& m);

}  // namespace rigidkit
