#include "gripkit/config.h"

#include <filesystem>
#include <set>

#include "gripkit/csv.h"
#include "gripkit/error.h"
#include "gripkit/units.h"

namespace gripkit {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kConfigError, path + ": " + what);
}

// Reads named fields out of one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) config_error(path_, "expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      config_error(path_ + "." + key, "wrong type");
    }
  }

  void read_deg(const char* key, double& out_rad) {
    double deg = rad_to_deg(out_rad);
    read(key, deg);
    out_rad = deg_to_rad(deg);
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }
  std::string child(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) config_error(path_ + "." + k, "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
void checked(const std::string& path, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    config_error(path, e.what());
  }
}

json point_json(const Eigen::Vector2d& p) { return json::array({p.x(), p.y()}); }

Eigen::Vector2d point_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    config_error(path, "expected [x, z]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json bezier_list_json(const std::vector<CubicBezier>& segs) {
  json arr = json::array();
  for (const auto& s : segs) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(point_json(p));
    arr.push_back({{"points", pts}, {"weights", s.weights}});
  }
  return arr;
}

std::vector<CubicBezier> bezier_list_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) config_error(path, "expected a nonempty segment list");
  std::vector<CubicBezier> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    Section sec(j[i], p);
    CubicBezier seg;
    const json& pts = sec.at("points");
    if (!pts.is_array() || pts.size() != 4) config_error(p + ".points", "expected 4 points");
    for (int k = 0; k < 4; ++k) seg.points[k] = point_from(pts[k], p + ".points");
    sec.read("weights", seg.weights);
    for (double w : seg.weights) {
      if (!(w > 0.0)) config_error(p + ".weights", "weights must be positive");
    }
    sec.finish();
    out.push_back(seg);
  }
  return out;
}

QuantileModel quantile_from(const json& j, const std::string& path) {
  Section sec(j, path);
  QuantileModel q;
  sec.read("min", q.q[0]);
  sec.read("q1", q.q[1]);
  sec.read("median", q.q[2]);
  sec.read("q3", q.q[3]);
  sec.read("max", q.q[4]);
  sec.read("count", q.count);
  sec.finish();
  checked(path, [&] { q.validate(); });
  return q;
}

}  // namespace

double pad_hold_force(const LinkageParams& linkage, const ScrewParams& screw,
                      double holding_torque_Nm, double x_mm) {
  return thrust_for_torque(screw, holding_torque_Nm) * transmission_ratio(linkage, x_mm);
}

json to_json(const GraspModelParams& p) {
  return {{"pad_force_N", p.pad_force_N},
          {"mu_pad", p.mu_pad},
          {"suction_axial_N", p.suction_axial_N},
          {"shear_fraction", p.shear_fraction},
          {"cup_moment_arm_mm", p.cup_moment_arm_mm},
          {"pad_hold_force_N", p.pad_hold_force_N},
          {"cup_ring_radius_mm", p.cup_ring_radius_mm},
          {"cup_compression_N", p.cup_compression_N},
          {"cup_rim_friction", p.cup_rim_friction},
          {"cone_sides", p.cone_sides}};
}

GraspModelParams grasp_model_from_json(const json& j, const GraspModelParams& base) {
  const std::string path = "grasp_model";
  Section sec(j, path);
  GraspModelParams p = base;
  sec.read("pad_force_N", p.pad_force_N);
  sec.read("mu_pad", p.mu_pad);
  sec.read("suction_axial_N", p.suction_axial_N);
  sec.read("shear_fraction", p.shear_fraction);
  sec.read("cup_moment_arm_mm", p.cup_moment_arm_mm);
  sec.read("pad_hold_force_N", p.pad_hold_force_N);
  sec.read("cup_ring_radius_mm", p.cup_ring_radius_mm);
  sec.read("cup_compression_N", p.cup_compression_N);
  sec.read("cup_rim_friction", p.cup_rim_friction);
  sec.read("cone_sides", p.cone_sides);
  sec.finish();
  checked(path, [&] { p.validate(); });
  return p;
}

json to_json(const QuantileModel& q) {
  return {{"min", q.q[0]}, {"q1", q.q[1]}, {"median", q.q[2]},
          {"q3", q.q[3]},  {"max", q.q[4]}, {"count", q.count}};
}

json to_json(const TrialStats& stats) {
  json j = json::object();
  for (const auto& c : stats_columns()) j[c.name] = to_json(stats.*c.field);
  return j;
}

TrialStats trial_stats_from_json(const json& j) {
  Section sec(j, "field_stats");
  TrialStats stats;
  for (const auto& c : stats_columns()) {
    if (sec.has(c.name)) stats.*c.field = quantile_from(sec.at(c.name), sec.child(c.name));
  }
  sec.finish();
  return stats;
}

json to_json(const CamTrackSpec& spec) {
  return {{"outer_path", bezier_list_json(spec.outer_path)},
          {"inner_path", bezier_list_json(spec.inner_path)},
          {"pin_separation_mm", spec.pin_separation_mm},
          {"inner_hard_stop", spec.inner_hard_stop},
          {"fruit_radius_mm", spec.fruit_radius_mm},
          {"fruit_center_mm", point_json(spec.fruit_center_mm)},
          {"palm_plane_z_mm", spec.palm_plane_z_mm},
          {"finger_length_mm", spec.finger_length_mm},
          {"pad_half_width_mm", spec.pad_half_width_mm},
          {"contact_latitude_band_deg", rad_to_deg(spec.contact_latitude_band_rad)}};
}

CamTrackSpec cam_spec_from_json(const json& j) {
  const std::string path = "cam_spec";
  Section sec(j, path);
  CamTrackSpec spec;
  spec.outer_path = bezier_list_from(sec.at("outer_path"), sec.child("outer_path"));
  spec.inner_path = bezier_list_from(sec.at("inner_path"), sec.child("inner_path"));
  sec.read("pin_separation_mm", spec.pin_separation_mm);
  sec.read("inner_hard_stop", spec.inner_hard_stop);
  sec.read("fruit_radius_mm", spec.fruit_radius_mm);
  if (sec.has("fruit_center_mm")) {
    spec.fruit_center_mm = point_from(sec.at("fruit_center_mm"), sec.child("fruit_center_mm"));
  }
  sec.read("palm_plane_z_mm", spec.palm_plane_z_mm);
  sec.read("finger_length_mm", spec.finger_length_mm);
  sec.read("pad_half_width_mm", spec.pad_half_width_mm);
  sec.read_deg("contact_latitude_band_deg", spec.contact_latitude_band_rad);
  sec.finish();
  checked(path, [&] { spec.validate(); });
  return spec;
}

json to_json(const PathReport& r) {
  return {{"min_clearance_mm", std::isfinite(r.min_clearance) ? json(r.min_clearance) : json()},
          {"max_sweep_radius_mm", r.max_sweep_radius},
          {"clamp_contact_latitude_deg", rad_to_deg(r.clamp_contact_latitude)},
          {"interference", r.interference},
          {"latitude_in_band", r.latitude_in_band},
          {"region_transitions", r.region_transitions},
          {"region_reverted", r.region_reverted},
          {"max_pin_error_mm", r.max_pin_error},
          {"samples", r.samples}};
}

void GripperConfig::validate() const {
  checked("linkage", [&] { linkage.validate(); });
  checked("screw", [&] { screw.validate(); });
  if (!(travel.x_min <= travel.x_max)) config_error("travel", "x_min_mm must not exceed x_max_mm");
  checked("travel", [&] { validate_travel(linkage, travel); });
  checked("grasp_model", [&] { grasp_model.validate(); });
  checked("proxy", [&] { proxy.validate(); });
  if (!(bruise_threshold_N > 0.0)) config_error("bruise_threshold_N", "must be positive");
  if (!(holding_torque_Nm > 0.0)) config_error("screw.holding_torque_Nm", "must be positive");
  if (pick.engage_rule < 1 || pick.engage_rule > 3) config_error("pick.engage_rule", "must be 1-3");
  if (!(pick.occlusion_probability >= 0.0 && pick.occlusion_probability <= 1.0)) {
    config_error("pick.occlusion_probability", "must lie in [0, 1]");
  }
  if (pick.retries < 0) config_error("pick.retries", "must be >= 0");
  if (pick.sweep_samples < 2) config_error("pick.sweep_samples", "must be >= 2");
  if (has_field_stats) checked("field_stats", [&] { field_stats.validate(); });
  if (!cam.synthesize && !std::filesystem::exists(cam.spec_file)) {
    config_error("cam.spec_file", "file '" + cam.spec_file + "' does not exist");
  }
}

GripperConfig parse_config(const json& doc, const std::string& base_dir) {
  GripperConfig cfg;
  Section root(doc, "config");
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? p : (std::filesystem::path(base_dir) / fp).string();
  };

  if (root.has("linkage")) {
    Section s(root.at("linkage"), "linkage");
    s.read("p_x_mm", cfg.linkage.p_x);
    s.read("l_b_mm", cfg.linkage.l_b);
    s.read("l_k_mm", cfg.linkage.l_k);
    s.read("l_f_mm", cfg.linkage.l_f);
    s.read("p_y_mm", cfg.linkage.p_y);
    s.read("l_n_mm", cfg.linkage.l_n);
    s.finish();
  }
  if (root.has("screw")) {
    Section s(root.at("screw"), "screw");
    s.read("pitch_mm", cfg.screw.pitch_mm);
    s.read("n_starts", cfg.screw.n_starts);
    s.read_deg("thread_angle_deg", cfg.screw.thread_angle_rad);
    s.read("d_outer_mm", cfg.screw.d_outer_mm);
    s.read("mu", cfg.screw.mu);
    s.read("holding_torque_Nm", cfg.holding_torque_Nm);
    s.finish();
  }
  if (root.has("travel")) {
    Section s(root.at("travel"), "travel");
    s.read("x_min_mm", cfg.travel.x_min);
    s.read("x_max_mm", cfg.travel.x_max);
    s.finish();
  }
  if (root.has("grasp_model")) {
    cfg.grasp_model = grasp_model_from_json(root.at("grasp_model"), cfg.grasp_model);
  }
  if (root.has("cam")) {
    const json& c = root.at("cam");
    if (c.is_string()) {
      if (c.get<std::string>() != "default") config_error("cam", "expected \"default\" or an object");
    } else {
      Section s(c, "cam");
      if (s.has("spec_file")) {
        std::string f;
        s.read("spec_file", f);
        cfg.cam.synthesize = false;
        cfg.cam.spec_file = resolve(f);
      }
      s.read("fruit_radius_mm", cfg.cam.fruit_radius_mm);
      s.read("clearance_mm", cfg.cam.clearance_mm);
      if (s.has("envelope")) {
        Section e(s.at("envelope"), "cam.envelope");
        PalmEnvelope& env = cfg.cam.envelope;
        e.read("pin_separation_mm", env.pin_separation_mm);
        e.read("pad_half_width_mm", env.pad_half_width_mm);
        e.read("hard_stop_depth_mm", env.hard_stop_depth_mm);
        e.read("retract_depth_mm", env.retract_depth_mm);
        e.read("sweep_margin_mm", env.sweep_margin_mm);
        e.read("max_finger_length_mm", env.max_finger_length_mm);
        e.read("max_radius_mm", env.max_radius_mm);
        e.read_deg("contact_latitude_band_deg", env.contact_latitude_band_rad);
        e.read("palm_plane_z_mm", env.palm_plane_z_mm);
        e.finish();
      }
      s.finish();
    }
  }
  root.read("bruise_threshold_N", cfg.bruise_threshold_N);
  if (root.has("proxy")) {
    Section s(root.at("proxy"), "proxy");
    s.read("detachment_force_N", cfg.proxy.detachment_force_N);
    s.read("branch_stiffness_Npm", cfg.proxy.branch_stiffness_Npm);
    s.read("fruit_diameter_mm", cfg.proxy.fruit_diameter_mm);
    s.read("fruit_mass_g", cfg.proxy.fruit_mass_g);
    s.finish();
  }
  if (root.has("pick")) {
    Section s(root.at("pick"), "pick");
    s.read("engage_rule", cfg.pick.engage_rule);
    s.read("cup_tolerance_mm", cfg.pick.cup_tolerance_mm);
    s.read("occlusion_probability", cfg.pick.occlusion_probability);
    s.read("retries", cfg.pick.retries);
    s.read("approach_limit_mm", cfg.pick.approach_limit_mm);
    s.read("cup_stroke_mm", cfg.pick.cup_stroke_mm);
    s.read("sweep_fruit_radius_mm", cfg.pick.sweep_fruit_radius_mm);
    s.read("sweep_clearance_mm", cfg.pick.sweep_clearance_mm);
    s.read("sweep_samples", cfg.pick.sweep_samples);
    s.finish();
  }
  if (root.has("field_stats")) {
    const json& f = root.at("field_stats");
    if (f.is_string()) {
      const std::string path = resolve(f.get<std::string>());
      json sub;
      try {
        sub = json::parse(read_text_file(path));
      } catch (const json::parse_error& e) {
        config_error(path, e.what());
      }
      cfg.field_stats = trial_stats_from_json(sub);
    } else {
      cfg.field_stats = trial_stats_from_json(f);
    }
    cfg.has_field_stats = true;
  }
  root.finish();
  cfg.validate();
  return cfg;
}

GripperConfig load_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, path + ": " + e.what());
  }
  return parse_config(doc, std::filesystem::path(path).parent_path().string());
}

json to_json(const GripperConfig& c) {
  json j;
  j["linkage"] = {{"p_x_mm", c.linkage.p_x}, {"l_b_mm", c.linkage.l_b},
                  {"l_k_mm", c.linkage.l_k}, {"l_f_mm", c.linkage.l_f},
                  {"p_y_mm", c.linkage.p_y}, {"l_n_mm", c.linkage.l_n}};
  j["screw"] = {{"pitch_mm", c.screw.pitch_mm},
                {"n_starts", c.screw.n_starts},
                {"thread_angle_deg", rad_to_deg(c.screw.thread_angle_rad)},
                {"d_outer_mm", c.screw.d_outer_mm},
                {"mu", c.screw.mu},
                {"holding_torque_Nm", c.holding_torque_Nm}};
  j["travel"] = {{"x_min_mm", c.travel.x_min}, {"x_max_mm", c.travel.x_max}};
  j["grasp_model"] = to_json(c.grasp_model);
  if (c.cam.synthesize) {
    j["cam"] = {{"fruit_radius_mm", c.cam.fruit_radius_mm}, {"clearance_mm", c.cam.clearance_mm}};
  } else {
    j["cam"] = {{"spec_file", c.cam.spec_file}};
  }
  j["bruise_threshold_N"] = c.bruise_threshold_N;
  j["proxy"] = {{"detachment_force_N", c.proxy.detachment_force_N},
                {"branch_stiffness_Npm", c.proxy.branch_stiffness_Npm},
                {"fruit_diameter_mm", c.proxy.fruit_diameter_mm},
                {"fruit_mass_g", c.proxy.fruit_mass_g}};
  j["pick"] = {{"engage_rule", c.pick.engage_rule},
               {"cup_tolerance_mm", c.pick.cup_tolerance_mm},
               {"occlusion_probability", c.pick.occlusion_probability},
               {"retries", c.pick.retries},
               {"approach_limit_mm", c.pick.approach_limit_mm},
               {"cup_stroke_mm", c.pick.cup_stroke_mm},
               {"sweep_fruit_radius_mm", c.pick.sweep_fruit_radius_mm},
               {"sweep_clearance_mm", c.pick.sweep_clearance_mm},
               {"sweep_samples", c.pick.sweep_samples}};
  if (c.has_field_stats) j["field_stats"] = to_json(c.field_stats);
  return j;
}

}  // namespace gripkit
