#include "rigidkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace rigidkit::io {

namespace {

constexpr double kQuatRejectTolerance = 1e-3;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out.push_back(c);
  }
  return out;
}

// Splits a data line into exactly `expected` finite numbers.
std::vector<double> parse_fields(std::string_view text, std::size_t expected, std::size_t line) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start));
    double v = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc() || ptr != end) {
      throw ParseError(line, "non-numeric field '" + std::string(token) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line, "non-finite field '" + std::string(token) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() != expected) {
    throw ParseError(line, "expected " + std::to_string(expected) + " fields, found " +
                               std::to_string(values.size()));
  }
  return values;
}

// Calls `on_row(fields, line)` for every data line of a CSV stream.
template <typename OnRow>
void for_each_row(std::istream& in, std::string_view header, std::size_t fields, OnRow&& on_row) {
  std::string raw;
  std::size_t line = 0;
  bool first_data = true;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (first_data) {
      first_data = false;
      if (strip_spaces(text) == header) continue;
    }
    on_row(parse_fields(text, fields, line), line);
  }
}

PoseRecord make_pose(const std::vector<double>& f, std::size_t line) {
  const double norm = std::sqrt(f[3] * f[3] + f[4] * f[4] + f[5] * f[5] + f[6] * f[6]);
  if (std::abs(norm - 1.0) > kQuatRejectTolerance) throw NonUnitQuaternion(line, norm);
  PoseRecord r;
  r.tx = f[0];
  r.ty = f[1];
  r.tz = f[2];
  r.qw = f[3] / norm;
  r.qx = f[4] / norm;
  r.qy = f[5] / norm;
  r.qz = f[6] / norm;
  r.line = line;
  return r;
}

void dump_value(const nlohmann::ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += nlohmann::ordered_json(key).dump();
        out += ": ";
        dump_value(value, out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Flat numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && e.is_primitive();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_value(j[i], out, indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

Transform PoseRecord::to_transform() const {
  return Transform(quat_to_matrix(UnitQuaternion(qw, qx, qy, qz)), Vec3(tx, ty, tz));
}

PoseRecord PoseRecord::from_transform(const Transform& t) {
  const UnitQuaternion q = matrix_to_quat(t.rotation);
  PoseRecord r;
  r.tx = t.translation.x();
  r.ty = t.translation.y();
  r.tz = t.translation.z();
  r.qw = q.w();
  r.qx = q.x();
  r.qy = q.y();
  r.qz = q.z();
  return r;
}

std::vector<PoseRecord> parse_pose_csv(std::istream& in) {
  std::vector<PoseRecord> records;
  for_each_row(in, kPoseHeader, 7, [&](const std::vector<double>& f, std::size_t line) {
    records.push_back(make_pose(f, line));
  });
  return records;
}

std::vector<PointRecord> parse_points_csv(std::istream& in) {
  std::vector<PointRecord> records;
  for_each_row(in, kPointHeader, 3, [&](const std::vector<double>& f, std::size_t line) {
    records.push_back(PointRecord{f[0], f[1], f[2], line});
  });
  return records;
}

void write_pose_csv(std::ostream& out, std::span<const PoseRecord> records) {
  out << kPoseHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.tx) << ',' << format_number(r.ty) << ',' << format_number(r.tz) << ','
        << format_number(r.qw) << ',' << format_number(r.qx) << ',' << format_number(r.qy) << ','
        << format_number(r.qz) << '\n';
  }
}

void write_points_csv(std::ostream& out, std::span<const PointRecord> records) {
  out << kPointHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.x) << ',' << format_number(r.y) << ',' << format_number(r.z) << '\n';
  }
}

PoseRecord parse_pose_text(const std::string& text) {
  return make_pose(parse_fields(trim(text), 7, 1), 1);
}

Twist parse_twist_text(const std::string& text) {
  const auto f = parse_fields(trim(text), 6, 1);
  return Twist(Vec3(f[0], f[1], f[2]), Vec3(f[3], f[4], f[5]));
}

std::vector<Transform> relative_motions(std::span<const Transform> poses) {
  if (poses.size() < 2) {
    throw TooFewPoses("relative motions need at least 2 poses, got " + std::to_string(poses.size()));
  }
  std::vector<Transform> motions;
  motions.reserve(poses.size() - 1);
  for (std::size_t i = 0; i + 1 < poses.size(); ++i) {
    motions.push_back(compose(inverse(poses[i]), poses[i + 1]));
  }
  return motions;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ResidualStats ResidualStats::of(std::span<const double> residuals) {
  ResidualStats s;
  s.count = residuals.size();
  if (residuals.empty()) return s;
  double acc = 0.0;
  for (double r : residuals) {
    acc += r * r;
    s.max = std::max(s.max, r);
  }
  s.rms = std::sqrt(acc / static_cast<double>(residuals.size()));
  return s;
}

std::string dump_json(const nlohmann::ordered_json& value) {
  std::string out;
  dump_value(value, out, 0);
  return out;
}

std::string ResultReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool_version"] = tool_version;
  doc["command"] = command;
  doc["result"] = result;
  doc["residuals"] = {{"rms", residuals.rms}, {"max", residuals.max}, {"count", residuals.count}};
  return dump_json(doc) + "\n";
}

nlohmann::ordered_json pose_json(const Transform& t) {
  const PoseRecord r = PoseRecord::from_transform(t);
  return {{"tx", r.tx}, {"ty", r.ty}, {"tz", r.tz}, {"qw", r.qw}, {"qx", r.qx}, {"qy", r.qy}, {"qz", r.qz}};
}

nlohmann::ordered_json vec_json(const Vec3& v) { return nlohmann::ordered_json::array({v.x(), v.y(), v.z()}); }

}  // namespace rigidkit::io
