#pragma once

#include <span>
#include <vector>

#include "rigidkit/se3.hpp"

namespace rigidkit {

/// One recorded pose of a tracked body in the tracker (world) frame.
struct PoseSample {
  Transform pose;
};

struct RegistrationResult {
  Transform transform;
  double rms_error = 0.0;
  std::vector<double> per_point_residuals;
};

struct PivotResult {
  Vec3 tip_offset = Vec3::Zero();   // tool frame
  Vec3 pivot_point = Vec3::Zero();  // world frame
  double rms_error = 0.0;
  std::vector<double> per_pose_residuals;
};

struct HandEyeResult {
  Transform x;
  double rotation_rms = 0.0;     // radians
  double translation_rms = 0.0;  // length units
  std::vector<double> rotation_residuals;
  std::vector<double> translation_residuals;
};

/// Least-squares rigid transform T minimizing sum |T p_i - q_i|^2 (SVD method).
/// Correspondence is by index.
///
/// Throws TooFewPoints for fewer than three pairs, SizeMismatch when the
/// sets differ in length and DegenerateGeometry when the source points are
/// (nearly) collinear, i.e. the two smallest singular values of the
/// cross-covariance are both below 1e-9 of the largest.
RegistrationResult register_point_sets(std::span<const Vec3> source, std::span<const Vec3> target);

/// Tip offset g and pivot b from poses satisfying R_i g + t_i = b.
///
/// Stacks [R_i | -I] (g; b) = -t_i and solves it with column-pivoted QR.
/// Throws TooFewPoses (< 3) and DegenerateMotion when the normal matrix has
/// condition number above 1e8, which happens when the rotations lack diversity.
PivotResult pivot_calibrate(std::span<const PoseSample> samples);

/// Solves A_i X = X B_i for X from paired relative motions.
///
/// Rotation first, as R_X = (M^T M)^(-1/2) M^T with M = sum b_i a_i^T over the
/// rotation logs, then translation by stacking (R_Ai - I) t_X = R_X t_Bi - t_Ai.
/// Throws TooFewMotions (< 2 pairs), SizeMismatch and DegenerateMotion when all
/// rotation axes of the A_i are parallel within 1e-6 rad.
HandEyeResult hand_eye_calibrate(std::span<const Transform> a_list, std::span<const Transform> b_list);

}  // namespace rigidkit
