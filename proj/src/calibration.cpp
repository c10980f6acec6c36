#include "rigidkit/calibration.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>

namespace rigidkit {

namespace {

constexpr double kCollinearRatio = 1e-9;
constexpr double kPivotMaxCondition = 1e8;
constexpr double kParallelAxes = 1e-6;  // rad
constexpr double kRankDeficient = 1e-12;

double rms(const std::vector<double>& r) {
  if (r.empty()) return 0.0;
  double acc = 0.0;
  for (double x : r) acc += x * x;
  return std::sqrt(acc / static_cast<double>(r.size()));
}

double axis_angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

// (M^T M)^(-1/2) M^T, or nothing when M is rank deficient or would yield a reflection.
std::optional<Mat3> inverse_sqrt_polar(const Mat3& m) {
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(m.transpose() * m);
  const Vec3& lambda = eig.eigenvalues();  // ascending
  if (!(lambda[0] > kRankDeficient * lambda[2]) || !(m.determinant() > 0.0)) return std::nullopt;
  const Mat3& v = eig.eigenvectors();
  const Vec3 inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
  return Mat3(v * inv_sqrt.asDiagonal() * v.transpose() * m.transpose());
}

}  // namespace

RegistrationResult register_point_sets(std::span<const Vec3> source, std::span<const Vec3> target) {
  if (source.size() != target.size()) {
    throw SizeMismatch("point sets differ in size (" + std::to_string(source.size()) + " vs " +
                       std::to_string(target.size()) + ")");
  }
  const std::size_t n = source.size();
  if (n < 3) throw TooFewPoints("registration needs at least 3 point pairs, got " + std::to_string(n));

  Vec3 p_mean = Vec3::Zero(), q_mean = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    p_mean += source[i];
    q_mean += target[i];
  }
  p_mean /= static_cast<double>(n);
  q_mean /= static_cast<double>(n);

  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < n; ++i) h += (source[i] - p_mean) * (target[i] - q_mean).transpose();

  const Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3& sv = svd.singularValues();
  if (sv[1] <= kCollinearRatio * sv[0]) {
    throw DegenerateGeometry("points are collinear or coincident; rotation about their line is undetermined");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  const Vec3 d(1.0, 1.0, (v * u.transpose()).determinant() > 0.0 ? 1.0 : -1.0);
  const RotationMatrix rot(v * d.asDiagonal() * u.transpose());

  RegistrationResult out;
  out.transform = Transform(rot, q_mean - rot * p_mean);
  out.per_point_residuals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.per_point_residuals.push_back((transform_point(out.transform, source[i]) - target[i]).norm());
  }
  out.rms_error = rms(out.per_point_residuals);
  return out;
}

PivotResult pivot_calibrate(std::span<const PoseSample> samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw TooFewPoses("pivot calibration needs at least 3 poses, got " + std::to_string(n));

  Eigen::MatrixXd a(3 * n, 6);
  Eigen::VectorXd b(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(3 * i);
    a.block<3, 3>(row, 0) = samples[i].pose.rotation.matrix();
    a.block<3, 3>(row, 3) = -Mat3::Identity();
    b.segment<3>(row) = -samples[i].pose.translation;
  }

  const Eigen::SelfAdjointEigenSolver<Mat6> eig(a.transpose() * a, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()[0];
  const double lmax = eig.eigenvalues()[5];
  if (!(lmin * kPivotMaxCondition > lmax)) {
    throw DegenerateMotion("pivot normal matrix condition number exceeds 1e8; poses lack rotational diversity");
  }

  const Vec6 x = a.colPivHouseholderQr().solve(b);

  PivotResult out;
  out.tip_offset = x.head<3>();
  out.pivot_point = x.tail<3>();
  out.per_pose_residuals.reserve(n);
  for (const auto& s : samples) {
    out.per_pose_residuals.push_back(
        (s.pose.rotation * out.tip_offset + s.pose.translation - out.pivot_point).norm());
  }
  out.rms_error = rms(out.per_pose_residuals);
  return out;
}

HandEyeResult hand_eye_calibrate(std::span<const Transform> a_list, std::span<const Transform> b_list) {
  if (a_list.size() != b_list.size()) {
    throw SizeMismatch("motion lists differ in size (" + std::to_string(a_list.size()) + " vs " +
                       std::to_string(b_list.size()) + ")");
  }
  const std::size_t n = a_list.size();
  if (n < 2) throw TooFewMotions("hand-eye calibration needs at least 2 motion pairs, got " + std::to_string(n));

  std::vector<Vec3> alpha, beta;
  alpha.reserve(n);
  beta.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha.push_back(so3_log(a_list[i].rotation).value());
    beta.push_back(so3_log(b_list[i].rotation).value());
  }

  // Identifiability: at least two non-parallel rotation axes.
  std::size_t ref = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (alpha[i].norm() > alpha[ref].norm()) ref = i;
  }
  std::size_t partner = ref;
  double spread = 0.0;
  if (alpha[ref].norm() > 1e-12) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == ref || alpha[i].norm() <= 1e-12) continue;
      const double ang = axis_angle_between(alpha[ref], alpha[i]);
      if (ang > spread) {
        spread = ang;
        partner = i;
      }
    }
  }
  if (!(spread >= kParallelAxes)) {
    throw DegenerateMotion("all rotation axes are parallel (spread " + std::to_string(spread) +
                           " rad < 1e-6); X is not unique");
  }

  Mat3 m = Mat3::Zero();
  for (std::size_t i = 0; i < n; ++i) m += beta[i] * alpha[i].transpose();

  auto rx_raw = inverse_sqrt_polar(m);
  if (!rx_raw) {
    // Coplanar axes: the cross product of two motions is a third exact correspondence.
    const Vec3 ac = alpha[ref].cross(alpha[partner]);
    const Vec3 bc = beta[ref].cross(beta[partner]);
    rx_raw = inverse_sqrt_polar(m + bc * ac.transpose());
    if (!rx_raw) throw DegenerateMotion("rotation axes do not determine the hand-eye rotation");
  }
  const RotationMatrix rx = orthonormalize(*rx_raw);

  Eigen::MatrixXd c(3 * n, 3);
  Eigen::VectorXd d(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(3 * i);
    c.block<3, 3>(row, 0) = a_list[i].rotation.matrix() - Mat3::Identity();
    d.segment<3>(row) = rx * b_list[i].translation - a_list[i].translation;
  }
  const Vec3 tx = c.colPivHouseholderQr().solve(d);

  HandEyeResult out;
  out.x = Transform(rx, tx);
  out.rotation_residuals.reserve(n);
  out.translation_residuals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(3 * i);
    out.rotation_residuals.push_back(geodesic_distance(a_list[i].rotation * rx, rx * b_list[i].rotation));
    out.translation_residuals.push_back((c.block<3, 3>(row, 0) * tx - d.segment<3>(row)).norm());
  }
  out.rotation_rms = rms(out.rotation_residuals);
  out.translation_rms = rms(out.translation_residuals);
  return out;
}

}  // namespace rigidkit
