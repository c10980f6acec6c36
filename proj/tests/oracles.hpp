#pragma once

// Independent reference computations and random generators for the test
// suites. Nothing here calls into the closed-form library code paths.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "rigidkit/se3.hpp"

namespace oracle {

using rigidkit::Mat3;
using rigidkit::Mat4;
using rigidkit::Vec3;

inline constexpr double kPi = std::numbers::pi;

/// Truncated power series sum_{k=0}^{terms} a^k / k!.
template <typename Matrix>
Matrix series_exp(const Matrix& a, int terms = 30) {
  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  for (int k = 1; k <= terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// Cross-product matrix written out componentwise from u x v.
inline Mat3 skew(const Vec3& v) {
  Mat3 s;
  for (int c = 0; c < 3; ++c) {
    Vec3 e = Vec3::Zero();
    e[c] = 1.0;
    const Vec3 col(v[1] * e[2] - v[2] * e[1], v[2] * e[0] - v[0] * e[2], v[0] * e[1] - v[1] * e[0]);
    s.col(c) = col;
  }
  return s;
}

inline Mat3 so3_series(const Vec3& w) { return series_exp(skew(w)); }

/// 4x4 matrix exponential of the se(3) element [[w^, v], [0, 0]].
inline Mat4 se3_series(const Vec3& v, const Vec3& w) {
  Mat4 a = Mat4::Zero();
  a.topLeftCorner<3, 3>() = skew(w);
  a.topRightCorner<3, 1>() = v;
  return series_exp(a);
}

inline Mat3 rx(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix();
}
inline Mat3 ry(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix();
}
inline Mat3 rz(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix();
}

inline double frob(const Mat3& a) { return a.norm(); }

/// Rotation invariants as stated for RotationMatrix.
inline bool is_rotation(const Mat3& r, double tol = 1e-9) {
  return (r.transpose() * r - Mat3::Identity()).norm() < tol && std::abs(r.determinant() - 1.0) < tol;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal(double sigma) {
    return sigma > 0.0 ? std::normal_distribution<double>(0.0, sigma)(gen_) : 0.0;
  }

  Vec3 unit() {
    Vec3 v;
    do {
      v = Vec3(normal(1.0), normal(1.0), normal(1.0));
    } while (v.norm() < 1e-6);
    return v.normalized();
  }

  Vec3 normal3(double sigma) { return Vec3(normal(sigma), normal(sigma), normal(sigma)); }
  Vec3 box(double half) { return Vec3(uniform(-half, half), uniform(-half, half), uniform(-half, half)); }

  /// Rotation vector with uniformly random axis and angle in [lo, hi].
  Vec3 rotvec(double lo, double hi) { return unit() * uniform(lo, hi); }

  rigidkit::RotationMatrix rotation() {
    return rigidkit::RotationMatrix(Eigen::AngleAxisd(uniform(0.0, kPi), unit()).toRotationMatrix());
  }

  rigidkit::Transform transform(double half_extent = 1.0) {
    return rigidkit::Transform(rotation(), box(half_extent));
  }

  std::mt19937_64& engine() { return gen_; }

private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
