#include "hse/simulation.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "hse/errors.hpp"

namespace hse {

Simulation::Simulation(ScenarioConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.run.seed) {
  cfg_.vehicle.update_derived();
  validate(cfg_);
  gains_ = cfg_.gains();
  if (cfg_.mode == Mode::kEmulated && !cfg_.run.allow_unstable) {
    const Spectrum spec = eigencheck(gains_.elements);
    if (!spec.stable) throw UnstableGains("error dynamics are not asymptotically stable (set run.allow_unstable)");
  }
  const double f = cfg_.f();
  plant_.ux = cfg_.maneuver.ux_target / f;
  meas_ = measure(plant_);
  ref_.ux = scale_speed(plant_.ux, f);
  ctrl_ = engage(meas_);
}

bool Simulation::done() const {
  const double t = time() + 1e-9 * cfg_.run.dt;
  if (cfg_.run.duration > 0.0) return t >= cfg_.run.duration;
  return ref_.N >= cfg_.maneuver.total_length() || t >= cfg_.run.max_duration;
}

TelemetryRecord Simulation::step() {
  const VehicleParams& p = cfg_.vehicle;
  const double dt = cfg_.run.dt;
  const double f = cfg_.f();
  const bool manual = cfg_.mode == Mode::kManual;

  const VirtualPose pose = manual ? VirtualPose{plant_.psi, plant_.E, plant_.N} : VirtualPose{ref_.psi, ref_.E, ref_.N};
  const DriverInputs in = driver_step(driver_, pose, scale_speed(meas_.ux, f), cfg_.maneuver, cfg_.driver, dt);
  const WheelQuad<double> pedal = pedals_to_wheel_forces(in, cfg_.pedals);

  ControlOutput ctl;
  double alpha_haptic = 0.0;
  if (manual) {
    ctl.delta_f = reference_front_angle(in.delta_hw, p);
    ctl.delta_r = 0.0;
    plant_ = plant_step(plant_, ctl.delta_f, ctl.delta_r, pedal, dt, p, cfg_.plant);
    meas_ = measure(plant_, cfg_.plant.noise, rng_);
    // The reference channels mirror the vehicle the driver is actually in.
    ref_.r = plant_.r;
    ref_.uy = plant_.uy;
    ref_.psi = plant_.psi;
    ref_.E = plant_.E;
    ref_.N = plant_.N;
    ref_.ux_dot = (plant_.ux - ref_.ux) / dt;
    ref_.ux = plant_.ux;
    ref_.Mz = plant_.Mz;
    ref_.Fy = plant_.Fy;
    ref_.ay = plant_.ay;
    ref_.rdot = plant_.rdot;
    ref_.alpha_f = plant_.alpha_f;
    ref_.delta_f = plant_.delta_f_act;
    alpha_haptic = plant_.alpha_f;
  } else {
    ref_ = reference_step(ref_, in, meas_.ux, f, dt, p, cfg_.pedals);
    const double Fxf = pedal[kFL] + pedal[kFR];
    const double Fxr = pedal[kRL] + pedal[kRR];
    ctl = control_step(ref_, meas_, ctrl_, gains_, p, Fxf, Fxr, dt, cfg_.command_rate_limit);
    ctrl_ = ctl.state;
    plant_ = plant_step(plant_, ctl.delta_f, ctl.delta_r, pedal, dt, p, cfg_.plant);
    meas_ = measure(plant_, cfg_.plant.noise, rng_);
    alpha_haptic = ref_.alpha_f;
  }

  const HandWheelMotion hw{driver_.hw_angle, driver_.hw_rate, driver_.hw_accel};
  const SteeringTorque torque = steering_torque(alpha_haptic, hw, front_force_estimate(alpha_haptic, p), cfg_.haptics);
  ++tick_;

  TelemetryRecord rec;
  rec.t = time();
  rec.s = ref_.N;
  rec.delta_hw = in.delta_hw;
  rec.delta_hw_rate = driver_.hw_rate;
  rec.throttle = in.throttle;
  rec.brake = in.brake;
  rec.ref_r = ref_.r;
  rec.ref_uy = ref_.uy;
  rec.ref_ux = ref_.ux;
  rec.ref_ux_dot = ref_.ux_dot;
  rec.ref_ay = ref_.ay;
  rec.ref_ay_seat = seat_acceleration(ref_.ay, ref_.r, ref_.rdot, p.seat_dx, p.seat_dy);
  rec.ref_psi = ref_.psi;
  rec.ref_E = ref_.E;
  rec.ref_N = ref_.N;
  rec.ref_Mz = ref_.Mz;
  rec.ref_Fy = ref_.Fy;
  rec.ref_alpha_f = ref_.alpha_f;
  rec.target_offset = cfg_.maneuver.target_offset(ref_.N);
  rec.r = meas_.r;
  rec.uy = meas_.uy;
  rec.ux = meas_.ux;
  rec.ay = meas_.ay;
  rec.ay_seat = seat_acceleration(meas_.ay, meas_.r, meas_.rdot, p.seat_dx, p.seat_dy);
  rec.rdot = meas_.rdot;
  rec.psi = plant_.psi;
  rec.E = plant_.E;
  rec.N = plant_.N;
  rec.delta_f = ctl.delta_f;
  rec.delta_r = ctl.delta_r;
  rec.delta_f_act = plant_.delta_f_act;
  rec.delta_r_act = plant_.delta_r_act;
  rec.saturated = ctl.saturated ? 1.0 : 0.0;
  rec.e_r = ctl.errors.e_r;
  rec.e_uy = ctl.errors.e_uy;
  rec.uy_des = manual ? plant_.uy : ctrl_.uy_des;
  rec.tau_hw = torque.total;
  return rec;
}

namespace {

template <class OnRecord>
RunResult drive(const ScenarioConfig& cfg, OnRecord&& on_record) {
  RunResult res;
  std::optional<Simulation> sim;
  try {
    sim.emplace(cfg);
  } catch (const UnstableGains& e) {
    res.fault = e.what();
    res.exit_code = kExitUnstable;
    return res;
  } catch (const ConfigError& e) {
    res.fault = e.what();
    res.exit_code = kExitConfig;
    return res;
  }
  try {
    while (!sim->done()) {
      res.records.push_back(sim->step());
      on_record(res.records.back());
    }
  } catch (const ConvergenceError& e) {
    res.fault = std::string("non-convergence: ") + e.what();
    res.exit_code = kExitNonConvergence;
  } catch (const IntegrationFault& e) {
    res.fault = std::string("integration fault: ") + e.what();
    res.exit_code = kExitIntegrationFault;
  } catch (const DomainError& e) {
    res.fault = std::string("integration fault: ") + e.what();
    res.exit_code = kExitIntegrationFault;
  }
  if (!res.fault && !res.records.empty()) res.report = tracking_report(res.records, cfg.thresholds);
  return res;
}

}  // namespace

RunResult simulate(const ScenarioConfig& cfg) {
  return drive(cfg, [](const TelemetryRecord&) {});
}

TelemetryHeader telemetry_header(const ScenarioConfig& cfg) {
  TelemetryHeader h;
  h.config_hash = config_hash(cfg);
  h.params = echo_config(cfg);
  return h;
}

int run_scenario(const ScenarioConfig& cfg, std::ostream& telemetry, std::ostream& report) {
  TelemetryWriter writer(telemetry, telemetry_header(cfg));
  RunResult res = drive(cfg, [&](const TelemetryRecord& rec) { writer.write(rec); });
  if (res.fault) {
    writer.fault(*res.fault);
    report << "error: " << *res.fault << '\n';
    return res.exit_code;
  }
  writer.flush();
  report << "mode                     " << to_string(cfg.mode) << '\n'
         << "maneuver                 " << to_string(cfg.maneuver.kind) << '\n'
         << "f                        " << cfg.f() << '\n'
         << "config_hash              " << config_hash(cfg) << '\n';
  if (res.report) print_report(report, *res.report);
  return kExitOk;
}

std::string resolve_output_path(const ScenarioConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path out(cfg.run.out);
  if (const char* dir = std::getenv("HSE_OUTPUT_DIR"); dir != nullptr && *dir != '\0' && out.is_relative())
    return (fs::path(dir) / out).string();
  return out.string();
}

}  // namespace hse
