// Command-line front end: run scenarios, check gain stability, compare runs
// and print amplitude spectra.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hse/config.hpp"
#include "hse/errors.hpp"
#include "hse/evaluation.hpp"
#include "hse/simulation.hpp"
#include "hse/telemetry.hpp"

namespace {

using namespace hse;

ScenarioConfig load(const std::string& path) { return path.empty() ? parse_config({}) : load_config_file(path); }

std::string show_complex(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%+.6f %c %.6fi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buf;
}

int cmd_run(const std::string& config, const std::optional<std::string>& out, const std::optional<std::uint64_t>& seed,
            const std::optional<double>& duration) {
  ScenarioConfig cfg = load(config);
  if (out) apply_override(cfg, "run.out", *out);
  if (seed) apply_override(cfg, "run.seed", std::to_string(*seed));
  if (duration) apply_override(cfg, "run.duration_s", std::to_string(*duration));
  const std::string path = resolve_output_path(cfg);
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write telemetry to '" + path + "'");
  const int code = run_scenario(cfg, file, std::cout);
  std::cout << "telemetry                " << path << '\n';
  return code;
}

int cmd_eigencheck(const std::string& config) {
  const ScenarioConfig cfg = load(config);
  const Spectrum spec = eigencheck(cfg.gains().elements);
  for (const auto& ev : spec.eigenvalues) std::cout << show_complex(ev) << '\n';
  std::cout << (spec.stable ? "STABLE" : "UNSTABLE") << '\n';
  return spec.stable ? kExitOk : kExitUnstable;
}

int cmd_compare(const std::string& a, const std::string& b, double ds, const std::optional<std::string>& csv) {
  const TelemetryLog la = read_telemetry_file(a);
  const TelemetryLog lb = read_telemetry_file(b);
  const RunComparison cmp = compare_runs(la.records, lb.records, ds);
  std::cout << "channel   rms_diff        max_diff\n";
  for (const auto& c : cmp.channels) {
    char line[128];
    std::snprintf(line, sizeof line, "%-9s %-15.9g %.9g\n", c.name.c_str(), c.rms, c.max);
    std::cout << line;
  }
  if (csv) {
    std::ofstream os(*csv);
    if (!os) throw ConfigError("cannot write '" + *csv + "'");
    write_comparison_csv(os, cmp);
  }
  return kExitOk;
}

int cmd_spectrum(const std::string& run, const std::string& channel_name, double max_hz) {
  const TelemetryLog log = read_telemetry_file(run);
  const auto field = telemetry_field(channel_name);
  if (!field) throw ConfigError("unknown channel '" + channel_name + "'");
  const AmplitudeSpectrum spec = dft_amplitude(channel(log.records, *field), channel(log.records, &TelemetryRecord::t));
  AmplitudeSpectrum cut;
  for (size_t k = 0; k < spec.frequency.size(); ++k) {
    if (max_hz > 0.0 && spec.frequency[k] > max_hz) break;
    cut.frequency.push_back(spec.frequency[k]);
    cut.amplitude.push_back(spec.amplitude[k]);
  }
  write_spectrum_csv(std::cout, cut);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-speed emulation: reference vehicle, four-wheel-steering tracking controller and evaluation"};
  app.require_subcommand(1);
  app.footer("\n" + describe_keys() +
             "\nExit codes: 0 ok, 1 usage, 2 config error, 3 integration fault, 4 non-convergence, 5 unstable "
             "gains.\nHSE_OUTPUT_DIR places relative run.out paths under that directory.");

  std::string run_config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  auto* run = app.add_subcommand("run", "run a scenario and write telemetry plus a tracking report");
  run->add_option("config,--config", run_config, "scenario config file (YAML; defaults when omitted)");
  run->add_option("--out", out, "telemetry output path (overrides run.out)");
  run->add_option("--seed", seed, "noise seed (overrides run.seed)");
  run->add_option("--duration", duration, "simulated seconds (overrides run.duration_s)");

  std::string eig_config;
  auto* eig = app.add_subcommand("eigencheck", "print the error-dynamics eigenvalues and STABLE or UNSTABLE");
  eig->add_option("config,--config", eig_config, "scenario config file (defaults when omitted)");

  std::string run_a, run_b;
  double ds = 0.1;
  std::optional<std::string> csv;
  auto* cmp = app.add_subcommand("compare", "per-channel differences of two runs along the course");
  cmp->add_option("runA", run_a, "first telemetry file")->required();
  cmp->add_option("runB", run_b, "second telemetry file")->required();
  cmp->add_option("--ds", ds, "distance grid step, m");
  cmp->add_option("--csv", csv, "write the resampled channels to this CSV file");

  std::string spec_run, spec_channel = "ay";
  double max_hz = 0.0;
  auto* spc = app.add_subcommand("spectrum", "single-sided amplitude spectrum of a telemetry channel as CSV");
  spc->add_option("run", spec_run, "telemetry file")->required();
  spc->add_option("--channel", spec_channel, "column name");
  spc->add_option("--max-hz", max_hz, "drop bins above this frequency (0 keeps all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_config, out, seed, duration);
    if (*eig) return cmd_eigencheck(eig_config);
    if (*cmp) return cmd_compare(run_a, run_b, ds, csv);
    if (*spc) return cmd_spectrum(spec_run, spec_channel, max_hz);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitUsage;
}
