#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigidkit/se3.hpp"

namespace rigidkit::io {

/// One row of a pose file: `tx,ty,tz,qw,qx,qy,qz` (scalar-first quaternion).
struct PoseRecord {
  double tx = 0.0, ty = 0.0, tz = 0.0;
  double qw = 1.0, qx = 0.0, qy = 0.0, qz = 0.0;
  std::size_t line = 0;  // 1-based source line, 0 when not parsed from text

  Transform to_transform() const;
  static PoseRecord from_transform(const Transform& t);
};

/// One row of a point file: `x,y,z`.
struct PointRecord {
  double x = 0.0, y = 0.0, z = 0.0;
  std::size_t line = 0;

  Vec3 vec() const { return Vec3(x, y, z); }
};

inline constexpr const char* kPoseHeader = "tx,ty,tz,qw,qx,qy,qz";
inline constexpr const char* kPointHeader = "x,y,z";

/// Blank lines and lines starting with '#' are skipped; the header is allowed
/// as the first data line. Quaternions within 1e-3 of unit norm are
/// renormalized, others raise NonUnitQuaternion. Other problems raise ParseError.
std::vector<PoseRecord> parse_pose_csv(std::istream& in);
std::vector<PointRecord> parse_points_csv(std::istream& in);

/// Writes the header followed by one line per record at 17 significant digits.
void write_pose_csv(std::ostream& out, std::span<const PoseRecord> records);
void write_points_csv(std::ostream& out, std::span<const PointRecord> records);

/// Parses a single inline pose or twist given as comma-separated numbers.
PoseRecord parse_pose_text(const std::string& text);
Twist parse_twist_text(const std::string& text);

/// Consecutive motions T_i^-1 * T_{i+1}. Throws TooFewPoses for fewer than 2 poses.
std::vector<Transform> relative_motions(std::span<const Transform> poses);

/// `%.17g` formatting used for every number in CSV output and reports.
std::string format_number(double value);

struct ResidualStats {
  double rms = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  static ResidualStats of(std::span<const double> residuals);
};

/// Structured command output. Field order is fixed: tool_version, command,
/// result, residuals.
struct ResultReport {
  std::string tool_version;
  std::string command;
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  ResidualStats residuals;

  /// Pretty-printed JSON with numbers at 17 significant digits and a trailing newline.
  std::string to_json() const;
};

/// Serializes any JSON value with the report's number formatting.
std::string dump_json(const nlohmann::ordered_json& value);

nlohmann::ordered_json pose_json(const Transform& t);
nlohmann::ordered_json vec_json(const Vec3& v);

}  // namespace rigidkit::io
