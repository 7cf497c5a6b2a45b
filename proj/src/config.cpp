#include "hse/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hse/errors.hpp"

namespace hse {

namespace {

double parse_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || std::isnan(v))
    throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text[0] == '-' || end != text.c_str() + text.size())
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e6)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

// Shortest text that parses back to exactly `v`.
std::string show(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Display-unit values convert in extended precision so that every stored
// double has a display text that reproduces it exactly.
double parse_scaled(const std::string& key, const std::string& text, double to_si) {
  if (to_si == 1.0) return parse_double(key, text);
  parse_double(key, text);
  return static_cast<double>(std::strtold(text.c_str(), nullptr) * static_cast<long double>(to_si));
}

// Prefers 12 significant digits so converted values echo as written.
std::string show_scaled(double si, double to_si) {
  if (to_si == 1.0 || !std::isfinite(si)) return show(si);
  auto back = [&](const char* text) {
    return static_cast<double>(std::strtold(text, nullptr) * static_cast<long double>(to_si)) == si;
  };
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", si / to_si);
  if (back(buf)) return buf;
  long double up = static_cast<long double>(si) / to_si, down = up;
  for (int i = 0; i < 8; ++i) {
    for (long double y : {up, down}) {
      std::snprintf(buf, sizeof buf, "%.21Lg", y);
      if (back(buf)) return buf;
    }
    up = std::nextafter(up, static_cast<long double>(INFINITY));
    down = std::nextafter(down, -static_cast<long double>(INFINITY));
  }
  return show(si / to_si);
}

Mode parse_mode(const std::string& text) {
  if (text == "emulated") return Mode::kEmulated;
  if (text == "manual") return Mode::kManual;
  throw ConfigError("mode must be 'emulated' or 'manual', got '" + text + "'");
}

// Key bound to a double member with a display-unit conversion.
template <class Get>
ConfigKey scalar(std::string name, std::string unit, std::string help, Get field, double to_si = 1.0) {
  ConfigKey k;
  k.name = name;
  k.unit = std::move(unit);
  k.help = std::move(help);
  k.set = [name, field, to_si](ScenarioConfig& c, const std::string& v) { field(c) = parse_scaled(name, v, to_si); };
  k.get = [field, to_si](const ScenarioConfig& c) { return show_scaled(field(const_cast<ScenarioConfig&>(c)), to_si); };
  return k;
}

template <class Get>
ConfigKey degrees(std::string name, std::string help, Get field, std::string unit = "deg") {
  return scalar(std::move(name), std::move(unit), std::move(help), field, units::kPi / 180.0);
}

std::vector<ConfigKey> build_registry() {
  using C = ScenarioConfig;
  std::vector<ConfigKey> keys;

  keys.push_back({"maneuver.kind", "", "course: dlc | weave | straight (resets maneuver defaults)",
                  [](C& c, const std::string& v) { c.maneuver = build_maneuver(parse_maneuver_kind(v)); },
                  [](const C& c) { return to_string(c.maneuver.kind); }});
  keys.push_back({"mode", "", "emulated (scaled reference, four-wheel steering) | manual (f = 1, no rear steer)",
                  [](C& c, const std::string& v) { c.mode = parse_mode(v); },
                  [](const C& c) { return to_string(c.mode); }});
  keys.push_back(scalar("maneuver.ux_target_mph", "mph", "reference (perceived) speed",
                        [](C& c) -> double& { return c.maneuver.ux_target; }, units::mph2mps(1.0)));
  keys.push_back(scalar("maneuver.f", "-", "speed scale factor, >= 1", [](C& c) -> double& { return c.maneuver.f; }));
  keys.push_back(scalar("maneuver.lane_offset_m", "m", "lateral lane offset, left positive",
                        [](C& c) -> double& { return c.maneuver.lane_offset; }));
  keys.push_back(scalar("maneuver.approach_m", "m", "straight run-up before the course",
                        [](C& c) -> double& { return c.maneuver.approach; }));
  keys.push_back(scalar("maneuver.runout_m", "m", "straight after the course",
                        [](C& c) -> double& { return c.maneuver.runout; }));
  keys.push_back({"maneuver.dlc_sections_m", "m",
                  "double lane change sections: entry, change, hold, change back, exit",
                  [](C& c, const std::string& v) {
                    const auto parts = split(v, ',');
                    if (parts.size() != 5) throw ConfigError("maneuver.dlc_sections_m needs five lengths");
                    for (size_t i = 0; i < 5; ++i)
                      c.maneuver.dlc_sections[i] = parse_double("maneuver.dlc_sections_m", parts[i]);
                  },
                  [](const C& c) {
                    std::string s;
                    for (size_t i = 0; i < 5; ++i) s += (i ? "," : "") + show(c.maneuver.dlc_sections[i]);
                    return s;
                  }});
  keys.push_back(scalar("maneuver.weave_wavelength_m", "m", "distance per weave cycle",
                        [](C& c) -> double& { return c.maneuver.weave_wavelength; }));
  keys.push_back({"maneuver.weave_cycles", "-", "number of weave cycles",
                  [](C& c, const std::string& v) { c.maneuver.weave_cycles = parse_int("maneuver.weave_cycles", v); },
                  [](const C& c) { return std::to_string(c.maneuver.weave_cycles); }});
  keys.push_back(scalar("maneuver.straight_length_m", "m", "course length of the straight kind",
                        [](C& c) -> double& { return c.maneuver.straight_length; }));

  keys.push_back(scalar("vehicle.m_kg", "kg", "mass", [](C& c) -> double& { return c.vehicle.m; }));
  keys.push_back(scalar("vehicle.Iz_kgm2", "kg m^2", "yaw inertia", [](C& c) -> double& { return c.vehicle.Iz; }));
  keys.push_back(scalar("vehicle.a_m", "m", "CoM to front axle", [](C& c) -> double& { return c.vehicle.a; }));
  keys.push_back(scalar("vehicle.b_m", "m", "CoM to rear axle", [](C& c) -> double& { return c.vehicle.b; }));
  keys.push_back(scalar("vehicle.d_m", "m", "track width", [](C& c) -> double& { return c.vehicle.d; }));
  keys.push_back(scalar("vehicle.SR", "-", "steering ratio", [](C& c) -> double& { return c.vehicle.SR; }));
  keys.push_back(scalar("vehicle.Cf_Nrad", "N/rad", "front axle cornering stiffness",
                        [](C& c) -> double& { return c.vehicle.Cf; }));
  keys.push_back(scalar("vehicle.Cr_Nrad", "N/rad", "rear axle cornering stiffness",
                        [](C& c) -> double& { return c.vehicle.Cr; }));
  keys.push_back(scalar("vehicle.mu", "-", "tire-road friction coefficient", [](C& c) -> double& { return c.vehicle.mu; }));
  keys.push_back(degrees("vehicle.delta_f_max_deg", "front road-wheel limit",
                         [](C& c) -> double& { return c.vehicle.delta_f_max; }));
  keys.push_back(degrees("vehicle.delta_r_max_deg", "rear road-wheel limit",
                         [](C& c) -> double& { return c.vehicle.delta_r_max; }));
  keys.push_back(scalar("vehicle.seat_dx_m", "m", "driver seat ahead of CoM",
                        [](C& c) -> double& { return c.vehicle.seat_dx; }));
  keys.push_back(scalar("vehicle.seat_dy_m", "m", "driver seat left of CoM",
                        [](C& c) -> double& { return c.vehicle.seat_dy; }));
  keys.push_back(scalar("vehicle.g_mps2", "m/s^2", "gravity", [](C& c) -> double& { return c.vehicle.g; }));

  const char* elem_units[8] = {"1/s", "1/s^2", "rad/(m s)", "rad/(m s^2)", "m/(rad s)", "m/(rad s^2)", "1/s",
                               "1/s^2"};
  const char* elem_keys[8] = {"gains.K1_per_s",       "gains.K2_per_s2",      "gains.K3_rad_per_ms",
                              "gains.K4_rad_per_ms2", "gains.K5_m_per_rads",  "gains.K6_m_per_rads2",
                              "gains.K7_per_s",       "gains.K8_per_s2"};
  for (int i = 0; i < 8; ++i) {
    keys.push_back(scalar(elem_keys[i], elem_units[i],
                          "error-dynamics matrix element K" + std::to_string(i + 1),
                          [i](C& c) -> double& { return c.elements[i]; }));
  }
  keys.push_back(scalar("gains.K_rsat_Nms", "N m s", "rear-only yaw-rate gain during front saturation, < 0",
                        [](C& c) -> double& { return c.K_rsat; }));
  keys.push_back({"gains.integral_enabled", "bool", "false zeroes K2, K4, K6, K8 and the integral axle gains",
                  [](C& c, const std::string& v) { c.integral_enabled = parse_bool("gains.integral_enabled", v); },
                  [](const C& c) { return std::string(c.integral_enabled ? "true" : "false"); }});
  keys.push_back(degrees("controller.rate_limit_deg_s", "controller command slew limit at the road wheel",
                         [](C& c) -> double& { return c.command_rate_limit; }, "deg/s"));

  keys.push_back(scalar("haptics.b_hw_Nms_rad", "N m s/rad", "hand-wheel damping",
                        [](C& c) -> double& { return c.haptics.b_hw; }));
  keys.push_back(scalar("haptics.J_hw_kgm2", "kg m^2", "hand-wheel inertia",
                        [](C& c) -> double& { return c.haptics.J_hw; }));
  keys.push_back(scalar("haptics.w_floor", "-", "assist weighting floor in (0, 1]",
                        [](C& c) -> double& { return c.haptics.w_floor; }));
  keys.push_back(degrees("haptics.w_sigma_deg", "width of the assist weighting in front slip angle",
                         [](C& c) -> double& { return c.haptics.w_sigma; }));
  keys.push_back(scalar("haptics.k_align_m", "m", "aligning torque per newton of front lateral force",
                        [](C& c) -> double& { return c.haptics.k_align; }));
  keys.push_back(scalar("haptics.k_jack_Nm", "N m", "jacking torque amplitude",
                        [](C& c) -> double& { return c.haptics.k_jack; }));

  keys.push_back(scalar("pedals.F_throttle_max_N", "N", "total drive force at full throttle",
                        [](C& c) -> double& { return c.pedals.F_throttle_max; }));
  keys.push_back(scalar("pedals.F_brake_max_N", "N", "total brake force at full brake",
                        [](C& c) -> double& { return c.pedals.F_brake_max; }));
  keys.push_back(scalar("pedals.drive_front", "-", "drive share on the front axle",
                        [](C& c) -> double& { return c.pedals.drive_front; }));
  keys.push_back(scalar("pedals.drive_rear", "-", "drive share on the rear axle",
                        [](C& c) -> double& { return c.pedals.drive_rear; }));
  keys.push_back(scalar("pedals.brake_front", "-", "brake share on the front axle",
                        [](C& c) -> double& { return c.pedals.brake_front; }));
  keys.push_back(scalar("pedals.brake_rear", "-", "brake share on the rear axle",
                        [](C& c) -> double& { return c.pedals.brake_rear; }));

  keys.push_back(scalar("driver.preview_time_s", "s", "preview horizon",
                        [](C& c) -> double& { return c.driver.preview_time; }));
  keys.push_back(scalar("driver.steer_gain_rad_m", "rad/m", "hand-wheel angle per metre of previewed error",
                        [](C& c) -> double& { return c.driver.steer_gain; }));
  keys.push_back(degrees("driver.hw_max_deg", "hand-wheel travel", [](C& c) -> double& { return c.driver.hw_max; }));
  keys.push_back(degrees("driver.hw_rate_limit_deg_s", "hand-wheel rate limit",
                         [](C& c) -> double& { return c.driver.hw_rate_limit; }, "deg/s"));
  keys.push_back(scalar("driver.hw_bandwidth_Hz", "Hz", "arm and hand-wheel natural frequency",
                        [](C& c) -> double& { return c.driver.hw_bandwidth; }));
  keys.push_back(scalar("driver.hw_damping", "-", "arm and hand-wheel damping ratio",
                        [](C& c) -> double& { return c.driver.hw_damping; }));
  keys.push_back(scalar("driver.speed_kp_per_mps", "1/(m/s)", "speed governor proportional gain",
                        [](C& c) -> double& { return c.driver.speed_kp; }));
  keys.push_back(scalar("driver.speed_ki_per_m", "1/m", "speed governor integral gain",
                        [](C& c) -> double& { return c.driver.speed_ki; }));

  keys.push_back(scalar("plant.actuator_tau_s", "s", "steering actuator lag, 0 for none",
                        [](C& c) -> double& { return c.plant.actuator.tau; }));
  keys.push_back(degrees("plant.actuator_rate_deg_s", "steering actuator slew limit, inf for none",
                         [](C& c) -> double& { return c.plant.actuator.rate; }, "deg/s"));
  keys.push_back(degrees("plant.rear_bias_deg", "rear steering misalignment",
                         [](C& c) -> double& { return c.plant.rear_bias; }));
  keys.push_back(scalar("plant.noise_ux_mps", "m/s", "measurement noise std, longitudinal speed",
                        [](C& c) -> double& { return c.plant.noise.ux; }));
  keys.push_back(scalar("plant.noise_uy_mps", "m/s", "measurement noise std, lateral speed",
                        [](C& c) -> double& { return c.plant.noise.uy; }));
  keys.push_back(scalar("plant.noise_r_rad_s", "rad/s", "measurement noise std, yaw rate",
                        [](C& c) -> double& { return c.plant.noise.r; }));
  keys.push_back(scalar("plant.noise_ay_mps2", "m/s^2", "measurement noise std, lateral acceleration",
                        [](C& c) -> double& { return c.plant.noise.ay; }));
  keys.push_back(scalar("plant.noise_rdot_rad_s2", "rad/s^2", "measurement noise std, yaw acceleration",
                        [](C& c) -> double& { return c.plant.noise.rdot; }));

  keys.push_back({"evaluation.threshold_table_deg_s", "deg/s",
                  "yaw threshold table as amplitude,threshold pairs separated by ';'",
                  [](C& c, const std::string& v) {
                    ThresholdTable t;
                    for (const auto& pair : split(v, ';')) {
                      const auto xy = split(pair, ',');
                      if (xy.size() != 2) throw ConfigError("threshold table entries are amplitude,threshold pairs");
                      t.points.emplace_back(parse_double("evaluation.threshold_table_deg_s", xy[0]),
                                            parse_double("evaluation.threshold_table_deg_s", xy[1]));
                    }
                    c.thresholds = std::move(t);
                  },
                  [](const C& c) {
                    std::string s;
                    for (size_t i = 0; i < c.thresholds.points.size(); ++i)
                      s += (i ? ";" : "") + show(c.thresholds.points[i].first) + "," +
                           show(c.thresholds.points[i].second);
                    return s;
                  }});

  keys.push_back(scalar("run.dt_s", "s", "fixed step, in (0, 0.01]", [](C& c) -> double& { return c.run.dt; }));
  keys.push_back(scalar("run.duration_s", "s", "simulated time, 0 runs to the end of the course",
                        [](C& c) -> double& { return c.run.duration; }));
  keys.push_back(scalar("run.max_duration_s", "s", "cap when running to the end of the course",
                        [](C& c) -> double& { return c.run.max_duration; }));
  keys.push_back({"run.seed", "-", "measurement noise seed",
                  [](C& c, const std::string& v) { c.run.seed = parse_u64("run.seed", v); },
                  [](const C& c) { return std::to_string(c.run.seed); }});
  keys.push_back({"run.out", "path", "telemetry file; relative paths resolve against $HSE_OUTPUT_DIR when set",
                  [](C& c, const std::string& v) { c.run.out = v; }, [](const C& c) { return c.run.out; }});
  keys.push_back({"run.allow_unstable", "bool", "run even if the error dynamics fail the eigencheck",
                  [](C& c, const std::string& v) { c.run.allow_unstable = parse_bool("run.allow_unstable", v); },
                  [](const C& c) { return std::string(c.run.allow_unstable ? "true" : "false"); }});
  return keys;
}

const ConfigKey& find_key(const std::string& name) {
  for (const auto& k : config_keys())
    if (k.name == name) return k;
  throw ConfigError("unknown config key '" + name + "'");
}

void flatten(const YAML::Node& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (node.IsScalar()) {
    out.emplace_back(prefix, node.as<std::string>());
    return;
  }
  if (node.IsSequence()) {
    // Flat lists join with ',', lists of lists with ';' between rows.
    std::string joined;
    for (size_t i = 0; i < node.size(); ++i) {
      const auto& item = node[i];
      if (item.IsSequence()) {
        joined += i ? ";" : "";
        for (size_t j = 0; j < item.size(); ++j) joined += (j ? "," : "") + item[j].as<std::string>();
      } else if (item.IsScalar()) {
        joined += (i ? "," : "") + item.as<std::string>();
      } else {
        throw ConfigError("config key '" + prefix + "': unsupported list element");
      }
    }
    out.emplace_back(prefix, joined);
    return;
  }
  throw ConfigError("config key '" + prefix + "' has no value");
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::kManual ? "manual" : "emulated"; }

GainSet ScenarioConfig::gains() const {
  const GainSet g = make_gain_set(elements, K_rsat, vehicle);
  return integral_enabled ? g : proportional_only(g);
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = build_registry();
  return keys;
}

void validate(const ScenarioConfig& c) {
  std::vector<std::string> problems;
  for (const auto& v : validate(c.vehicle)) problems.push_back("vehicle." + v.field + ": " + v.message);
  for (const auto& v : validate(c.pedals)) problems.push_back("pedals." + v.field + ": " + v.message);
  for (const auto& v : validate(c.haptics)) problems.push_back("haptics." + v.field + ": " + v.message);
  for (const auto& v : validate(c.driver)) problems.push_back("driver." + v.field + ": " + v.message);
  try {
    validate(c.thresholds);
  } catch (const ConfigError& e) {
    problems.push_back(std::string("evaluation: ") + e.what());
  }
  try {
    ManeuverOverrides o;
    o.ux_target = c.maneuver.ux_target;
    o.f = c.maneuver.f;
    o.lane_offset = c.maneuver.lane_offset;
    o.approach = c.maneuver.approach;
    o.runout = c.maneuver.runout;
    o.dlc_sections = c.maneuver.dlc_sections;
    o.weave_wavelength = c.maneuver.weave_wavelength;
    o.weave_cycles = c.maneuver.weave_cycles;
    o.straight_length = c.maneuver.straight_length;
    (void)build_maneuver(c.maneuver.kind, o);
  } catch (const ConfigError& e) {
    problems.push_back(std::string("maneuver: ") + e.what());
  }
  if (!c.elements.allFinite()) problems.push_back("gains: matrix elements must be finite");
  if (!(c.K_rsat < 0.0)) problems.push_back("gains.K_rsat_Nms must be negative");
  if (!(c.command_rate_limit > 0.0)) problems.push_back("controller.rate_limit_deg_s must be positive");
  if (!(c.plant.actuator.tau >= 0.0)) problems.push_back("plant.actuator_tau_s must be non-negative");
  if (!(c.plant.actuator.rate > 0.0)) problems.push_back("plant.actuator_rate_deg_s must be positive");
  if (!std::isfinite(c.plant.rear_bias)) problems.push_back("plant.rear_bias_deg must be finite");
  const auto& n = c.plant.noise;
  for (double s : {n.ux, n.uy, n.r, n.ay, n.rdot})
    if (!(s >= 0.0 && std::isfinite(s))) problems.push_back("plant noise standard deviations must be >= 0");
  if (!(c.run.dt > 0.0 && c.run.dt <= 0.01)) problems.push_back("run.dt_s must lie in (0, 0.01]");
  if (!(c.run.duration >= 0.0 && std::isfinite(c.run.duration))) problems.push_back("run.duration_s must be >= 0");
  if (!(c.run.max_duration > 0.0 && std::isfinite(c.run.max_duration)))
    problems.push_back("run.max_duration_s must be positive");
  if (c.run.out.empty()) problems.push_back("run.out must not be empty");
  if (problems.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw ConfigError(msg);
}

ScenarioConfig parse_config(const std::vector<std::pair<std::string, std::string>>& entries) {
  ScenarioConfig cfg;
  for (const auto& [k, v] : entries)
    if (k == "maneuver.kind") find_key(k).set(cfg, v);
  for (const auto& [k, v] : entries) {
    if (k == "maneuver.kind") continue;
    find_key(k).set(cfg, v);
  }
  cfg.vehicle.update_derived();
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config_text(const std::string& yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  std::vector<std::pair<std::string, std::string>> entries;
  if (root.IsDefined() && !root.IsNull()) {
    if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values");
    flatten(root, "", entries);
  }
  return parse_config(entries);
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config_text(ss.str());
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  find_key(key).set(cfg, value);
  cfg.vehicle.update_derived();
  validate(cfg);
}

std::vector<std::pair<std::string, std::string>> echo_config(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : config_keys()) out.emplace_back(k.name, k.get(cfg));
  return out;
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [k, v] : echo_config(cfg)) {
    // The output path does not change the run.
    if (k == "run.out") continue;
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string describe_keys() {
  const ScenarioConfig defaults;
  std::ostringstream os;
  os << "Config keys (YAML; nested maps flatten to dotted names). Defaults shown for a dlc run;\n"
        "maneuver.kind selects per-kind maneuver defaults.\n\n";
  for (const auto& k : config_keys()) {
    os << "  " << k.name;
    if (!k.unit.empty()) os << " [" << k.unit << "]";
    os << "\n      " << k.help << " (default " << k.get(defaults) << ")\n";
  }
  return os.str();
}

}  // namespace hse
