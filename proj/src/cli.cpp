#include "rigidkit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "rigidkit/calibration.hpp"
#include "rigidkit/io.hpp"

#ifndef RIGIDKIT_VERSION
#define RIGIDKIT_VERSION "0.0.0"
#endif

namespace rigidkit::cli {

namespace {

using io::ResultReport;
using Json = nlohmann::ordered_json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

std::vector<io::PoseRecord> read_poses(const std::string& path) {
  auto in = open_input(path);
  try {
    return io::parse_pose_csv(in);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<Vec3> read_points(const std::string& path) {
  auto in = open_input(path);
  std::vector<Vec3> points;
  try {
    for (const auto& r : io::parse_points_csv(in)) points.push_back(r.vec());
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
  return points;
}

std::vector<Transform> to_transforms(const std::vector<io::PoseRecord>& records) {
  std::vector<Transform> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.to_transform());
  return out;
}

Transform single_pose(const std::string& inline_pose, const std::string& file) {
  if (!inline_pose.empty()) return io::parse_pose_text(inline_pose).to_transform();
  const auto records = read_poses(file);
  if (records.size() != 1) {
    throw DataError(file + ": expected exactly one pose, found " + std::to_string(records.size()));
  }
  return records.front().to_transform();
}

Json twist_json(const Twist& xi) { return {{"v", io::vec_json(xi.v)}, {"w", io::vec_json(xi.w)}}; }

Json matrix4_json(const Mat4& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2), m(r, 3)}));
  return rows;
}

std::string summary_vec(const Vec3& v) {
  return "(" + io::format_number(v.x()) + ", " + io::format_number(v.y()) + ", " + io::format_number(v.z()) + ")";
}

ResultReport new_report(const std::string& command) {
  ResultReport r;
  r.tool_version = RIGIDKIT_VERSION;
  r.command = command;
  return r;
}

struct Options {
  std::string pose;
  std::string file;
  std::string to = "quat";
  std::vector<std::string> poses;
  std::vector<std::string> files;
  std::string twist;
  std::string first;
  std::string second;
};

ResultReport do_convert(const Options& o, std::ostream& err) {
  const Transform t = single_pose(o.pose, o.file);
  ResultReport rep = new_report("convert");
  rep.result["representation"] = o.to;
  if (o.to == "quat") {
    rep.result["pose"] = io::pose_json(t);
  } else if (o.to == "matrix4") {
    rep.result["matrix4"] = matrix4_json(to_matrix4(t));
  } else if (o.to == "euler-zyx") {
    const auto e = matrix_to_euler(t.rotation, EulerConvention::ZYX_intrinsic);
    rep.result["translation"] = io::vec_json(t.translation);
    rep.result["euler_zyx"] = {{"roll", e.euler.roll()}, {"pitch", e.euler.pitch()}, {"yaw", e.euler.yaw()}};
    rep.result["gimbal_lock"] = e.gimbal_lock;
    if (e.gimbal_lock) err << "warning: gimbal lock, roll fixed to 0\n";
  } else {
    rep.result["translation"] = io::vec_json(t.translation);
    rep.result["rotvec"] = io::vec_json(so3_log(t.rotation).value());
  }
  err << "converted pose to " << o.to << "\n";
  return rep;
}

ResultReport do_compose(const Options& o, std::ostream& err) {
  std::vector<Transform> chain;
  for (const auto& p : o.poses) chain.push_back(io::parse_pose_text(p).to_transform());
  for (const auto& f : o.files) {
    for (const auto& t : to_transforms(read_poses(f))) chain.push_back(t);
  }
  if (chain.empty()) throw DataError("compose: no poses given");
  Transform acc = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) acc = compose(acc, chain[i]);

  ResultReport rep = new_report("compose");
  rep.result["count"] = chain.size();
  rep.result["pose"] = io::pose_json(acc);
  err << "composed " << chain.size() << " poses; translation " << summary_vec(acc.translation) << "\n";
  return rep;
}

ResultReport do_exp(const Options& o, std::ostream& err) {
  const Twist xi = io::parse_twist_text(o.twist);
  const Transform t = se3_exp(xi);
  ResultReport rep = new_report("exp");
  rep.result["twist"] = twist_json(xi);
  rep.result["pose"] = io::pose_json(t);
  err << "exp: rotation angle " << io::format_number(xi.w.norm()) << " rad, translation "
      << summary_vec(t.translation) << "\n";
  return rep;
}

ResultReport do_log(const Options& o, std::ostream& err) {
  const Transform t = single_pose(o.pose, o.file);
  const Twist xi = se3_log(t);
  ResultReport rep = new_report("log");
  rep.result["pose"] = io::pose_json(t);
  rep.result["twist"] = twist_json(xi);
  err << "log: rotation angle " << io::format_number(xi.w.norm()) << " rad\n";
  return rep;
}

ResultReport do_register(const Options& o, std::ostream& err) {
  const auto source = read_points(o.first);
  const auto target = read_points(o.second);
  const RegistrationResult res = register_point_sets(source, target);
  ResultReport rep = new_report("register");
  rep.result["transform"] = io::pose_json(res.transform);
  rep.result["rms_error"] = res.rms_error;
  rep.result["per_point_residuals"] = res.per_point_residuals;
  rep.residuals = io::ResidualStats::of(res.per_point_residuals);
  err << "registered " << source.size() << " point pairs; rms " << io::format_number(res.rms_error) << "\n";
  return rep;
}

ResultReport do_pivot(const Options& o, std::ostream& err) {
  std::vector<PoseSample> samples;
  for (const auto& t : to_transforms(read_poses(o.first))) samples.push_back(PoseSample{t});
  const PivotResult res = pivot_calibrate(samples);
  ResultReport rep = new_report("pivot");
  rep.result["tip_offset"] = io::vec_json(res.tip_offset);
  rep.result["pivot_point"] = io::vec_json(res.pivot_point);
  rep.result["rms_error"] = res.rms_error;
  rep.residuals = io::ResidualStats::of(res.per_pose_residuals);
  err << "pivot: tip " << summary_vec(res.tip_offset) << ", pivot " << summary_vec(res.pivot_point)
      << ", rms " << io::format_number(res.rms_error) << "\n";
  return rep;
}

ResultReport do_handeye(const Options& o, std::ostream& err) {
  const auto a = io::relative_motions(to_transforms(read_poses(o.first)));
  const auto b = io::relative_motions(to_transforms(read_poses(o.second)));
  const HandEyeResult res = hand_eye_calibrate(a, b);
  ResultReport rep = new_report("handeye");
  rep.result["transform"] = io::pose_json(res.x);
  rep.result["motions"] = a.size();
  rep.result["rotation_rms"] = res.rotation_rms;
  rep.result["translation_rms"] = res.translation_rms;
  rep.residuals = io::ResidualStats::of(res.translation_residuals);
  err << "hand-eye from " << a.size() << " motion pairs; rotation rms " << io::format_number(res.rotation_rms)
      << " rad, translation rms " << io::format_number(res.translation_rms) << "\n";
  return rep;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid-body transforms and calibration solvers", "rigidkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RIGIDKIT_VERSION));

  Options o;

  auto* convert = app.add_subcommand("convert", "Print one pose in another representation");
  auto* cp = convert->add_option("--pose", o.pose, "Inline pose tx,ty,tz,qw,qx,qy,qz");
  auto* cf = convert->add_option("--file", o.file, "Pose CSV holding exactly one pose");
  cp->excludes(cf);
  convert->add_option("--to", o.to, "Output representation")
      ->check(CLI::IsMember({"matrix4", "quat", "euler-zyx", "rotvec"}));

  auto* compose_cmd = app.add_subcommand("compose", "Chain poses left to right (inline poses first, then files)");
  compose_cmd->add_option("--pose", o.poses, "Inline pose; repeatable")
      ->allow_extra_args(false);
  compose_cmd->add_option("files", o.files, "Pose CSV files");

  auto* exp_cmd = app.add_subcommand("exp", "Map a twist vx,vy,vz,wx,wy,wz to a pose");
  exp_cmd->add_option("--twist", o.twist, "Twist, linear part first")->required();

  auto* log_cmd = app.add_subcommand("log", "Map a pose to its twist");
  auto* lp = log_cmd->add_option("--pose", o.pose, "Inline pose tx,ty,tz,qw,qx,qy,qz");
  auto* lf = log_cmd->add_option("--file", o.file, "Pose CSV holding exactly one pose");
  lp->excludes(lf);

  auto* reg = app.add_subcommand("register", "Rigid registration of index-paired point sets");
  reg->add_option("source", o.first, "Source point CSV")->required();
  reg->add_option("target", o.second, "Target point CSV")->required();

  auto* pivot = app.add_subcommand("pivot", "Pivot calibration from a pose CSV");
  pivot->add_option("poses", o.first, "Pose CSV")->required();

  auto* handeye = app.add_subcommand("handeye", "Hand-eye calibration AX = XB from two absolute pose streams");
  handeye->add_option("a_poses", o.first, "Pose CSV of the A frame")->required();
  handeye->add_option("b_poses", o.second, "Pose CSV of the B frame")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if ((convert->parsed() || log_cmd->parsed()) && o.pose.empty() && o.file.empty()) {
      throw CLI::RequiredError("--pose or --file");
    }
    if (compose_cmd->parsed() && o.poses.empty() && o.files.empty()) {
      throw CLI::RequiredError("--pose or files");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << RIGIDKIT_VERSION << "\n";
    return kOk;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  std::ostringstream summary;
  try {
    ResultReport rep;
    if (convert->parsed()) rep = do_convert(o, summary);
    else if (compose_cmd->parsed()) rep = do_compose(o, summary);
    else if (exp_cmd->parsed()) rep = do_exp(o, summary);
    else if (log_cmd->parsed()) rep = do_log(o, summary);
    else if (reg->parsed()) rep = do_register(o, summary);
    else if (pivot->parsed()) rep = do_pivot(o, summary);
    else rep = do_handeye(o, summary);
    const std::string json = rep.to_json();
    err << summary.str();
    out << json;
    return kOk;
  } catch (const DegeneracyError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace rigidkit::cli
