#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "hse/config.hpp"
#include "hse/errors.hpp"
#include "hse/simulation.hpp"
#include "hse/telemetry.hpp"
#include "hse/units.hpp"

using namespace hse;

namespace {

struct Streamed {
  int code;
  std::string telemetry;
  std::string report;
};

Streamed stream(const ScenarioConfig& cfg) {
  std::ostringstream tel, rep;
  const int code = run_scenario(cfg, tel, rep);
  return {code, tel.str(), rep.str()};
}

}  // namespace

TEST_CASE("configuration keys are checked") {
  CHECK_THROWS_AS((void)parse_config({{"vehicle.mass_kg", "1500"}}), ConfigError);
  CHECK_THROWS_AS((void)parse_config({{"run.dt_s", "0.02"}}), ConfigError);
  CHECK_THROWS_AS((void)parse_config({{"run.dt_s", "0"}}), ConfigError);
  CHECK_THROWS_AS((void)parse_config({{"run.dt_s", "abc"}}), ConfigError);
  CHECK(parse_config({{"run.dt_s", "0.01"}}).run.dt == 0.01);

  const ScenarioConfig manual = parse_config({{"mode", "manual"}, {"maneuver.f", "3"}});
  CHECK(manual.maneuver.f == 3.0);
  CHECK(manual.f() == 1.0);

  // Unknown keys name themselves in the message.
  try {
    (void)parse_config({{"vehicle.wheelbase", "3"}});
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("vehicle.wheelbase") != std::string::npos);
  }
}

TEST_CASE("YAML files flatten to dotted keys") {
  const ScenarioConfig cfg = load_config_text(
      "maneuver:\n  kind: weave\n  f: 2.5\nrun:\n  dt_s: 0.002\n  seed: 9\nvehicle:\n  m_kg: 1800\n");
  CHECK(cfg.maneuver.kind == ManeuverKind::kWeave);
  CHECK(cfg.maneuver.f == 2.5);
  CHECK(cfg.run.dt == 0.002);
  CHECK(cfg.run.seed == 9);
  CHECK(cfg.vehicle.m == 1800.0);
  CHECK_THROWS_AS((void)load_config_text("maneuver: [1, 2"), ConfigError);
  CHECK_THROWS_AS((void)load_config_text("nonsense:\n  key: 1\n"), ConfigError);
  CHECK_THROWS_AS((void)load_config_file("/nonexistent/config.yaml"), ConfigError);

  for (const char* name :
       {"dlc_30mph_f2", "weave_60mph_f3", "dlc_21mph_emulated", "dlc_21mph_manual", "straight", "integrator_demo"}) {
    CAPTURE(name);
    CHECK_NOTHROW((void)load_config_file(std::string(HSE_SOURCE_DIR) + "/configs/" + name + ".yaml"));
  }
}

TEST_CASE("straight run covers the scaled distance") {
  const ScenarioConfig cfg = parse_config({{"maneuver.kind", "straight"}, {"run.duration_s", "10"}});
  const RunResult run = simulate(cfg);
  REQUIRE(run.exit_code == kExitOk);
  // The course runs in the reference frame, at the target reference speed.
  CHECK(run.records.back().t == doctest::Approx(10.0));
  CHECK(run.records.back().s == doctest::Approx(cfg.maneuver.ux_target * 10.0).epsilon(0.02));
  for (const auto& r : run.records) CHECK(std::abs(r.ref_E) < 1e-9);
}

TEST_CASE("streamed runs are byte-identical and round-trip through the reader") {
  const ScenarioConfig cfg =
      parse_config({{"maneuver.kind", "dlc"}, {"plant.noise_r_rad_s", "0.002"}, {"run.seed", "5"}});
  const Streamed a = stream(cfg);
  const Streamed b = stream(cfg);
  REQUIRE(a.code == kExitOk);
  CHECK(a.telemetry == b.telemetry);
  CHECK(a.report == b.report);

  std::istringstream in(a.telemetry);
  const TelemetryLog log = read_telemetry(in);
  CHECK(log.header.schema == kTelemetrySchemaVersion);
  CHECK(log.header.config_hash == config_hash(cfg));
  CHECK(log.header.params == echo_config(cfg));
  CHECK(!log.fault);

  const RunResult mem = simulate(cfg);
  REQUIRE(log.records.size() == mem.records.size());
  CHECK(std::memcmp(log.records.data(), mem.records.data(), mem.records.size() * sizeof(TelemetryRecord)) == 0);
  CHECK(to_csv(log.header, log.records) == a.telemetry);

  // The echoed parameters rebuild the same configuration.
  const ScenarioConfig again = parse_config(log.header.params);
  CHECK(config_hash(again) == config_hash(cfg));
}

TEST_CASE("telemetry reader rejects unknown schemas and keeps fault trailers") {
  TelemetryHeader h;
  h.config_hash = "0123456789abcdef";
  std::vector<TelemetryRecord> recs(3);
  for (size_t i = 0; i < recs.size(); ++i) recs[i].t = 0.1 * double(i + 1);
  const std::string text = to_csv(h, recs, std::string("integration produced NaN"));
  std::istringstream in(text);
  const TelemetryLog log = read_telemetry(in);
  REQUIRE(log.fault);
  CHECK(*log.fault == "integration produced NaN");
  CHECK(log.records.size() == 3);
  CHECK(log.records[1].t == 0.2);

  std::string future = text;
  future.replace(future.find("schema=1"), 8, "schema=2");
  std::istringstream fin(future);
  CHECK_THROWS_AS((void)read_telemetry(fin), ConfigError);

  std::istringstream garbage("not a telemetry file\n");
  CHECK_THROWS_AS((void)read_telemetry(garbage), ConfigError);
}

TEST_CASE("number formatting is the shortest exact form") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(0.0) == "0");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("exit codes") {
  ScenarioConfig bad = parse_config({});
  bad.run.dt = 1.0;
  CHECK(simulate(bad).exit_code == kExitConfig);

  const std::vector<std::pair<std::string, std::string>> unstable{{"maneuver.kind", "straight"},
                                                                  {"gains.K1_per_s", "30"},
                                                                  {"run.duration_s", "2"}};
  const RunResult u = simulate(parse_config(unstable));
  CHECK(u.exit_code == kExitUnstable);
  CHECK(u.records.empty());

  // Manual mode ignores the tracking gains, so the same matrix is accepted.
  auto manual = unstable;
  manual.emplace_back("mode", "manual");
  CHECK(simulate(parse_config(manual)).exit_code == kExitOk);
}

TEST_CASE("a diverging run writes partial rows and a fault trailer") {
  // A huge lateral-acceleration gain spins the plant during the weave.
  const ScenarioConfig cfg = parse_config(
      {{"maneuver.kind", "weave"}, {"gains.K3_rad_per_ms", "300"}, {"run.allow_unstable", "true"}});
  const Streamed s = stream(cfg);
  CHECK(s.code == kExitIntegrationFault);
  std::istringstream in(s.telemetry);
  const TelemetryLog log = read_telemetry(in);
  CHECK(log.fault);
  CHECK(!log.records.empty());
  CHECK(s.report.rfind("error: ", 0) == 0);
}

TEST_CASE("output directory override") {
  ScenarioConfig cfg = parse_config({{"run.out", "runs/a.csv"}});
  ::unsetenv("HSE_OUTPUT_DIR");
  CHECK(resolve_output_path(cfg) == "runs/a.csv");
  ::setenv("HSE_OUTPUT_DIR", "/tmp/hse_out", 1);
  CHECK(resolve_output_path(cfg) == "/tmp/hse_out/runs/a.csv");
  cfg.run.out = "/abs/run.csv";
  CHECK(resolve_output_path(cfg) == "/abs/run.csv");
  ::unsetenv("HSE_OUTPUT_DIR");
}
