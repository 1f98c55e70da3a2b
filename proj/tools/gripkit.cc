// gripkit: command-line front end for the gripper design models.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gripkit/calibration.h"
#include "gripkit/cam_path.h"
#include "gripkit/config.h"
#include "gripkit/csv.h"
#include "gripkit/error.h"
#include "gripkit/grasp_wrench.h"
#include "gripkit/leadscrew.h"
#include "gripkit/linkage.h"
#include "gripkit/pick_sim.h"
#include "gripkit/quantile.h"
#include "gripkit/svg_plot.h"
#include "gripkit/units.h"

using gripkit::Error;
using gripkit::ErrorCode;
using gripkit::format_number;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

struct Globals {
  std::string config_path;
  std::string out_dir;
  std::string format;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kConfigError:
    case ErrorCode::kParseError:
      return kExitUsage;
    case ErrorCode::kLpNumericalFailure:
    case ErrorCode::kCalibrationDiverged:
      return kExitNumerical;
    default:
      return kExitDomain;
  }
}

gripkit::GripperConfig load(const Globals& g) {
  if (g.config_path.empty()) {
    gripkit::GripperConfig cfg;
    cfg.validate();
    return cfg;
  }
  return gripkit::load_config(g.config_path);
}

// Writes to <out>/<stem>.<ext> when --out is set, else to stdout.
void emit(const Globals& g, const std::string& stem, const std::string& ext,
          const std::string& body) {
  if (g.out_dir.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(g.out_dir);
  const auto path = std::filesystem::path(g.out_dir) / (stem + "." + ext);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kConfigError, "cannot write '" + path.string() + "'");
  out << body;
}

std::string pick_format(const Globals& g, const std::string& fallback,
                        std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "format '" + f + "' not supported by this command");
}

std::string cell(double v) { return format_number(v); }

// "a:b:step" or "a:b".
void parse_range(const std::string& text, double& lo, double& hi, double& step) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad range '" + text + "'");
    }
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw Error(ErrorCode::kInvalidArgument, "range must be lo:hi[:step]");
  }
  lo = parts[0];
  hi = parts[1];
  if (parts.size() == 3) step = parts[2];
}

int cmd_transmission(const Globals& g, std::optional<std::string> range_text,
                     std::optional<double> x_min, std::optional<double> x_max, double step,
                     double f_out) {
  const auto cfg = load(g);
  gripkit::TravelRange range = cfg.travel;
  if (range_text) parse_range(*range_text, range.x_min, range.x_max, step);
  if (x_min) range.x_min = *x_min;
  if (x_max) range.x_max = *x_max;
  if (range.x_max < range.x_min) {
    throw Error(ErrorCode::kInvalidArgument, "empty travel range");
  }
  const auto rows = gripkit::sweep_transmission(cfg.linkage, range, step, f_out, cfg.screw);
  const std::string fmt = pick_format(g, "csv", {"csv", "json", "svg"});

  if (fmt == "csv") {
    std::ostringstream out;
    out << "x_mm,y_mm,gamma_deg,alpha_deg,theta_deg,alpha_plus_theta_deg,ratio,f_nut_N,"
           "t_motor_Nm\n";
    for (const auto& r : rows) {
      if (!r.feasible) {
        out << cell(r.x) << ",,,,,,,,\n";
        continue;
      }
      const auto& s = r.state;
      gripkit::write_csv_row(
          out, {cell(r.x), cell(s.y), cell(gripkit::rad_to_deg(s.gamma)),
                cell(gripkit::rad_to_deg(s.alpha)), cell(gripkit::rad_to_deg(s.theta)),
                cell(gripkit::rad_to_deg(s.alpha + s.theta)), cell(s.ratio), cell(r.f_nut),
                cell(r.t_motor)});
    }
    emit(g, "transmission", "csv", out.str());
  } else if (fmt == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"x_mm", r.x}, {"feasible", r.feasible}};
      if (r.feasible) {
        j["ratio"] = r.state.ratio;
        j["alpha_plus_theta_deg"] = gripkit::rad_to_deg(r.state.alpha + r.state.theta);
        j["f_nut_N"] = r.f_nut;
        j["t_motor_Nm"] = r.t_motor;
      } else {
        j["error"] = r.error;
      }
      arr.push_back(j);
    }
    emit(g, "transmission", "json", json{{"f_out_N", f_out}, {"rows", arr}}.dump(2) + "\n");
  } else {
    gripkit::Series ratio{"ratio", {}, {}, "black"};
    gripkit::Series angle{"alpha+theta", {}, {}, "green", true};
    gripkit::Series torque{"motor torque", {}, {}, "blue", true};
    for (const auto& r : rows) {
      if (!r.feasible) continue;
      ratio.x.push_back(r.x);
      ratio.y.push_back(r.state.ratio);
      angle.x.push_back(r.x);
      angle.y.push_back(gripkit::rad_to_deg(r.state.alpha + r.state.theta));
      torque.x.push_back(r.x);
      torque.y.push_back(r.t_motor);
    }
    emit(g, "transmission", "svg",
         gripkit::render_svg("Power transmission, F_out = " + cell(f_out) + " N", "nut travel x [mm]",
                             {{"ratio F_out/F_nut", {ratio}, {}},
                              {"alpha+theta [deg]", {angle}, {}},
                              {"T_motor [N m]", {torque}, {}}}));
  }

  for (const auto& r : rows) {
    if (!r.feasible) {
      std::cerr << "gripkit: x=" << cell(r.x) << " mm infeasible: " << r.error << "\n";
      return kExitDomain;
    }
  }
  return 0;
}

int cmd_bruise(const Globals& g, const std::string& anchor, std::optional<double> f_nut_opt,
               double step) {
  const auto cfg = load(g);
  double f_nut = 0.0;
  std::string anchor_desc;
  if (f_nut_opt) {
    f_nut = *f_nut_opt;
    if (!(f_nut >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "nut force must be >= 0");
    anchor_desc = cell(f_nut) + " N nut thrust";
  } else {
    const auto at = anchor.find('@');
    double force = 0.0;
    double x = 0.0;
    try {
      if (at == std::string::npos) throw std::invalid_argument(anchor);
      force = std::stod(anchor.substr(0, at));
      x = std::stod(anchor.substr(at + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "anchor must look like 18@58");
    }
    if (x < cfg.travel.x_min || x > cfg.travel.x_max) {
      throw Error(ErrorCode::kInvalidArgument,
                  "anchor x=" + cell(x) + " mm outside the clamp range");
    }
    f_nut = gripkit::anchored_nut_force(cfg.linkage, force, x);
    anchor_desc = cell(force) + " N at " + cell(x) + " mm";
  }
  const auto rows =
      gripkit::bruise_curve(cfg.linkage, cfg.travel, step, f_nut, cfg.bruise_threshold_N);
  bool exceeded = false;
  for (const auto& r : rows) exceeded = exceeded || r.exceeds;

  const std::string fmt = pick_format(g, "csv", {"csv", "json", "svg"});
  if (fmt == "csv") {
    std::ostringstream out;
    out << "x_mm,ratio,f_out_N,exceeds_threshold\n";
    for (const auto& r : rows) {
      gripkit::write_csv_row(out, {cell(r.x), cell(r.ratio), cell(r.f_out), r.exceeds ? "1" : "0"});
    }
    emit(g, "bruise", "csv", out.str());
  } else if (fmt == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"x_mm", r.x}, {"f_out_N", r.f_out}, {"exceeds_threshold", r.exceeds}});
    }
    emit(g, "bruise", "json",
         json{{"f_nut_N", f_nut},
              {"threshold_N", cfg.bruise_threshold_N},
              {"threshold_exceeded", exceeded},
              {"rows", arr}}
                 .dump(2) +
             "\n");
  } else {
    gripkit::Series s{"F_out", {}, {}, "black"};
    for (const auto& r : rows) {
      s.x.push_back(r.x);
      s.y.push_back(r.f_out);
    }
    emit(g, "bruise", "svg",
         gripkit::render_svg("Pad force, anchor " + anchor_desc, "nut travel x [mm]",
                             {{"F_out [N]", {s}, {cfg.bruise_threshold_N}}}));
  }
  if (exceeded) {
    std::cerr << "gripkit: pad force exceeds the bruise threshold of "
              << cell(cfg.bruise_threshold_N) << " N\n";
  }
  return 0;
}

int cmd_campath(const Globals& g, std::optional<double> radius, std::optional<double> clearance,
                int samples, int threads) {
  const auto cfg = load(g);
  gripkit::CamTrackSpec spec;
  if (cfg.cam.synthesize || radius || clearance) {
    spec = gripkit::build_default_tracks(radius.value_or(cfg.cam.fruit_radius_mm),
                                         clearance.value_or(cfg.cam.clearance_mm),
                                         cfg.cam.envelope);
  } else {
    json doc;
    try {
      doc = json::parse(gripkit::read_text_file(cfg.cam.spec_file));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kConfigError, cfg.cam.spec_file + ": " + e.what());
    }
    // Accept a bare spec or the full campath JSON output.
    if (doc.is_object() && doc.contains("spec") && doc.contains("report")) doc = doc.at("spec");
    spec = gripkit::cam_spec_from_json(doc);
  }
  std::vector<gripkit::FingerPose> poses;
  const auto report = gripkit::validate_path(spec, samples, threads, &poses);
  const std::string fmt = pick_format(g, "json", {"csv", "json", "svg"});

  if (fmt == "json") {
    emit(g, "campath", "json",
         json{{"report", gripkit::to_json(report)}, {"spec", gripkit::to_json(spec)}}.dump(2) +
             "\n");
  } else if (fmt == "csv") {
    std::ostringstream out;
    out << "u,inner_x,inner_z,outer_x,outer_z,tip_x,tip_z,region\n";
    for (std::size_t i = 0; i < poses.size(); ++i) {
      const auto& p = poses[i];
      const double u = static_cast<double>(i) / (samples - 1);
      gripkit::write_csv_row(out, {cell(u), cell(p.inner_pin.x()), cell(p.inner_pin.y()),
                                   cell(p.outer_pin.x()), cell(p.outer_pin.y()),
                                   cell(p.pad_tip.x()), cell(p.pad_tip.y()),
                                   gripkit::to_string(p.region)});
    }
    emit(g, "campath", "csv", out.str());
  } else {
    gripkit::Series inner{"inner pin", {}, {}, "blue"};
    gripkit::Series outer{"outer pin", {}, {}, "green"};
    gripkit::Series tip{"pad tip", {}, {}, "black", true};
    for (const auto& p : poses) {
      inner.x.push_back(p.inner_pin.x());
      inner.y.push_back(p.inner_pin.y());
      outer.x.push_back(p.outer_pin.x());
      outer.y.push_back(p.outer_pin.y());
      tip.x.push_back(p.pad_tip.x());
      tip.y.push_back(p.pad_tip.y());
    }
    gripkit::Series fruit{"fruit", {}, {}, "red"};
    for (int k = 0; k <= 180; ++k) {
      const double a = gripkit::deg_to_rad(-90.0 + k);
      fruit.x.push_back(spec.fruit_center_mm.x() + spec.fruit_radius_mm * std::cos(a));
      fruit.y.push_back(spec.fruit_center_mm.y() + spec.fruit_radius_mm * std::sin(a));
    }
    emit(g, "campath", "svg",
         gripkit::render_svg("Cam tracks and finger sweep", "radial x [mm]",
                             {{"axial z [mm]", {inner, outer, tip, fruit}, {spec.palm_plane_z_mm}}},
                             true));
  }
  if (report.interference) {
    std::cerr << "gripkit: finger sweep interferes with the fruit (clearance "
              << cell(report.min_clearance) << " mm)\n";
    return kExitDomain;
  }
  return 0;
}

int cmd_grasp(const Globals& g, const std::string& mode, double offset, double angle,
              const std::string& pull, std::optional<double> radius) {
  const auto cfg = load(g);
  gripkit::GraspScenario s;
  s.mode = gripkit::parse_grasp_mode(mode);
  s.pull_type = gripkit::parse_pull_type(pull);
  s.fruit_offset_mm = offset;
  s.pull_angle_deg = angle;
  s.fruit_radius_mm = radius.value_or(0.5 * cfg.proxy.fruit_diameter_mm);
  const auto contacts = gripkit::build_contacts(s, cfg.grasp_model);
  Eigen::Vector3d dir;
  Eigen::Vector3d point;
  gripkit::pull_geometry(s, &dir, &point);
  const auto sol = gripkit::solve_resistible_pull(contacts, dir, point);
  const double residual = gripkit::witness_residual(contacts, dir, point, sol);
  if (!(residual <= 1e-6)) {
    throw Error(ErrorCode::kLpNumericalFailure,
                "witness fails verification by " + cell(residual));
  }
  pick_format(g, "json", {"json"});
  json loads = json::array();
  for (std::size_t i = 0; i < contacts.contacts.size(); ++i) {
    const auto& c = contacts.contacts[i];
    const auto& l = sol.loads[i];
    loads.push_back(
        {{"kind", c.kind == gripkit::ContactKind::kFingerPad ? "finger_pad" : "suction_cup"},
         {"position_mm", {c.position.x(), c.position.y(), c.position.z()}},
         {"force_N", {l.force.x(), l.force.y(), l.force.z()}},
         {"moment_Nmm", {l.moment.x(), l.moment.y(), l.moment.z()}}});
  }
  emit(g, "grasp", "json",
       json{{"mode", gripkit::to_string(s.mode)},
            {"pull_type", gripkit::to_string(s.pull_type)},
            {"offset_mm", offset},
            {"angle_deg", angle},
            {"strength_N", sol.alpha},
            {"witness_residual", residual},
            {"witness", loads}}
               .dump(2) +
           "\n");
  return 0;
}

int cmd_calibrate(const Globals& g, const std::string& data, int threads) {
  const auto cfg = load(g);
  const auto reference = gripkit::load_reference_csv(data);
  gripkit::CalibrationOptions opts;
  opts.threads = threads;
  const auto fit = gripkit::calibrate(reference, cfg.grasp_model, opts);
  pick_format(g, "json", {"json"});
  json rows = json::array();
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const auto& r = reference[i];
    const auto& res = fit.residuals[i];
    rows.push_back({{"mode", gripkit::to_string(r.scenario.mode)},
                    {"offset_mm", r.scenario.fruit_offset_mm},
                    {"angle_deg", r.scenario.pull_angle_deg},
                    {"pull_type", gripkit::to_string(r.scenario.pull_type)},
                    {"measured_N", res.measured_N},
                    {"predicted_N", res.predicted_N},
                    {"relative_error", res.relative_error}});
  }
  emit(g, "calibration", "json",
       json{{"grasp_model", gripkit::to_json(fit.params)},
            {"mean_relative_error", fit.mean_relative_error},
            {"loss", fit.loss},
            {"iterations", fit.iterations},
            {"residuals", rows}}
               .dump(2) +
           "\n");
  return 0;
}

int cmd_simulate(const Globals& g, int trials, std::uint64_t seed, const std::string& mode,
                 int threads, std::optional<int> retries, const std::string& stats_path) {
  const auto cfg = load(g);
  gripkit::TrialStats stats;
  if (!stats_path.empty()) {
    json doc;
    try {
      doc = json::parse(gripkit::read_text_file(stats_path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kConfigError, stats_path + ": " + e.what());
    }
    stats = gripkit::trial_stats_from_json(doc);
  } else if (cfg.has_field_stats) {
    stats = cfg.field_stats;
  } else {
    throw Error(ErrorCode::kConfigError, "no field statistics: pass --stats or set field_stats");
  }

  const gripkit::FingerSweep sweep(
      gripkit::build_default_tracks(cfg.pick.sweep_fruit_radius_mm, cfg.pick.sweep_clearance_mm,
                                    cfg.cam.envelope),
      cfg.pick.sweep_samples);
  gripkit::CampaignOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.threads = threads;
  opt.engage_rule = cfg.pick.engage_rule;
  opt.cup_tolerance_mm = cfg.pick.cup_tolerance_mm;
  opt.occlusion_probability = cfg.pick.occlusion_probability;
  opt.retries = retries.value_or(cfg.pick.retries);
  opt.approach_limit_mm = cfg.pick.approach_limit_mm;
  opt.cup_stroke_mm = cfg.pick.cup_stroke_mm;
  opt.sweep = &sweep;
  const auto m = gripkit::parse_grasp_mode(mode);
  const auto res = gripkit::run_campaign(stats, cfg.grasp_model, m, opt);

  // With --out both files are written; otherwise --format picks one.
  const std::string fmt = pick_format(g, "json", {"json", "csv"});
  if (fmt == "json" || !g.out_dir.empty()) {
    json breakdown = json::object();
    for (auto o : {gripkit::PickOutcome::kPicked, gripkit::PickOutcome::kGraspSlip,
                   gripkit::PickOutcome::kNoEngage}) {
      const auto it = res.breakdown.find(o);
      breakdown[gripkit::to_string(o)] = it == res.breakdown.end() ? 0 : it->second;
    }
    emit(g, "simulate", "json",
         json{{"mode", gripkit::to_string(m)},
              {"trials", res.trials},
              {"seed", seed},
              {"retries", opt.retries},
              {"success_rate", res.success_rate},
              {"outcomes", breakdown}}
                 .dump(2) +
             "\n");
  }
  if (fmt == "csv" || !g.out_dir.empty()) {
    std::ostringstream out;
    out << "trial,fdf_N,offset_mm,stiffness_Npm,mode,strength_N,outcome\n";
    for (const auto& r : res.log) {
      gripkit::write_csv_row(out, {std::to_string(r.trial), cell(r.fdf_N), cell(r.offset_mm),
                                   cell(r.stiffness_Npm), gripkit::to_string(r.mode),
                                   cell(r.strength_N), gripkit::to_string(r.outcome)});
    }
    emit(g, "trials", "csv", out.str());
  }
  return 0;
}

int cmd_stats(const Globals& g, const std::string& csv_path) {
  const auto stats = gripkit::summarize_csv(csv_path);
  const std::string fmt = pick_format(g, "text", {"text", "json", "csv"});
  if (fmt == "json" || (!g.out_dir.empty() && g.format.empty())) {
    emit(g, "stats", "json", gripkit::to_json(stats).dump(2) + "\n");
    if (fmt == "json") return 0;
  }
  std::ostringstream out;
  if (fmt == "csv") {
    out << "variable,count,min,q1,median,q3,max\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-18s %6s %9s %9s %9s %9s %9s\n", "variable", "count", "min",
                  "Q1", "median", "Q3", "max");
    out << line;
  }
  for (const auto& c : gripkit::stats_columns()) {
    const auto& q = stats.*c.field;
    if (q.count == 0) continue;
    if (fmt == "csv") {
      gripkit::write_csv_row(out, {c.name, std::to_string(q.count), cell(q.q[0]), cell(q.q[1]),
                                   cell(q.q[2]), cell(q.q[3]), cell(q.q[4])});
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "%-18s %6d %9.4g %9.4g %9.4g %9.4g %9.4g\n", c.name,
                    q.count, q.q[0], q.q[1], q.q[2], q.q[3], q.q[4]);
      out << line;
    }
  }
  emit(g, "stats", fmt == "csv" ? "csv" : "txt", out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gripper design toolkit: transmission, bruising, cam tracks, grasp strength"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "gripper config JSON")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "write outputs into this directory instead of stdout");
  app.add_option("--format", g.format, "csv, json or svg (stats also takes text)")
      ->check(CLI::IsMember({"csv", "json", "svg", "text"}));

  std::optional<std::string> range_text;
  std::optional<double> x_min;
  std::optional<double> x_max;
  double step = 0.1;
  double f_out = 30.0;
  auto* tr = app.add_subcommand("transmission", "ratio, transmission angle and motor torque vs x");
  tr->add_option("--range", range_text, "lo:hi[:step] in mm");
  tr->add_option("--x-min", x_min, "first nut travel [mm]");
  tr->add_option("--x-max", x_max, "last nut travel [mm]");
  tr->add_option("--step", step, "travel step [mm]");
  tr->add_option("--f-out", f_out, "target pad force [N]");

  std::string anchor = "18@58";
  std::optional<double> f_nut;
  double bruise_step = 0.1;
  auto* br = app.add_subcommand("bruise", "pad force over the clamp region");
  br->add_option("--anchor", anchor, "pad force at travel, e.g. 18@58");
  br->add_option("--f-nut", f_nut, "explicit nut thrust [N] instead of an anchor");
  br->add_option("--step", bruise_step, "travel step [mm]");

  std::optional<double> cam_radius;
  std::optional<double> cam_clearance;
  int cam_samples = 500;
  int threads = 1;
  auto* cp = app.add_subcommand("campath", "synthesize and validate the finger cam tracks");
  cp->add_option("--fruit-radius", cam_radius, "fruit radius [mm]");
  cp->add_option("--clearance", cam_clearance, "sweep clearance [mm]");
  cp->add_option("--samples", cam_samples, "poses to sample")->check(CLI::Range(2, 1000000));
  cp->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));

  std::string grasp_mode = "dual";
  double offset = 0.0;
  double angle = 0.0;
  std::string pull = "axial";
  std::optional<double> grasp_radius;
  auto* gr = app.add_subcommand("grasp", "maximum resistible pull for one scenario");
  gr->add_option("--mode", grasp_mode, "suction, fingers or dual");
  gr->add_option("--offset", offset, "fruit offset from the palm [mm]");
  gr->add_option("--angle", angle, "pull angle from the gripper axis [deg]");
  gr->add_option("--pull", pull, "axial, rotational or stem");
  gr->add_option("--fruit-radius", grasp_radius, "fruit radius [mm]");

  std::string data = std::string(GRIPKIT_DATA_DIR) + "/grasp_strength_reference.csv";
  auto* ca = app.add_subcommand("calibrate", "fit the grasp model to measured strengths");
  ca->add_option("--data", data, "reference CSV");
  ca->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));

  int trials = 1000;
  std::uint64_t seed = 1;
  std::string sim_mode = "dual";
  std::optional<int> retries;
  std::string stats_path;
  auto* si = app.add_subcommand("simulate", "Monte Carlo pick campaign");
  si->add_option("--trials", trials, "number of fruit")->check(CLI::Range(1, 100000000));
  si->add_option("--seed", seed, "campaign seed");
  si->add_option("--mode", sim_mode, "suction, fingers or dual");
  si->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
  si->add_option("--retries", retries, "extra attempts per fruit")->check(CLI::Range(0, 100));
  si->add_option("--stats", stats_path, "field statistics JSON")->check(CLI::ExistingFile);

  std::string csv_path;
  auto* st = app.add_subcommand("stats", "five-number summary of a field-trial log");
  st->add_option("--csv", csv_path, "trial log CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tr) return cmd_transmission(g, range_text, x_min, x_max, step, f_out);
    if (*br) return cmd_bruise(g, anchor, f_nut, bruise_step);
    if (*cp) return cmd_campath(g, cam_radius, cam_clearance, cam_samples, threads);
    if (*gr) return cmd_grasp(g, grasp_mode, offset, angle, pull, grasp_radius);
    if (*ca) return cmd_calibrate(g, data, threads);
    if (*si) return cmd_simulate(g, trials, seed, sim_mode, threads, retries, stats_path);
    if (*st) return cmd_stats(g, csv_path);
  } catch (const Error& e) {
    std::cerr << "gripkit: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gripkit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
