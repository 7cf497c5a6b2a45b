#pragma once

// Post-run scoring: yaw perception-threshold compliance, lateral
// acceleration tracking, amplitude spectra and run-to-run comparison.

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hse/telemetry.hpp"

namespace hse {

/// Yaw-rate detection threshold as a function of the reference signal
/// amplitude, both in deg/s. Piecewise linear, clamped at the ends.
struct ThresholdTable {
  std::vector<std::pair<double, double>> points;

  /// Operating points quoted for the 30 mph lane change and 60 mph weave.
  static ThresholdTable seeded() { return {{{12.8, 2.65}, {20.6, 3.35}}}; }
};

/// Checks ordering and positivity; throws ConfigError.
void validate(const ThresholdTable& table);

[[nodiscard]] double yaw_threshold(double amplitude_deg_s, const ThresholdTable& table);

struct AmplitudeSpectrum {
  std::vector<double> frequency;  // Hz
  std::vector<double> amplitude;  // signal units
};

/// Single-sided amplitude spectrum, rectangular window. A sinusoid of
/// amplitude A reads A at its bin; the DC bin reads the mean.
[[nodiscard]] AmplitudeSpectrum dft_amplitude(std::span<const double> samples, double dt);

/// As above with sample times, rejecting non-uniform sampling.
[[nodiscard]] AmplitudeSpectrum dft_amplitude(std::span<const double> samples, std::span<const double> times);

struct TrackingReport {
  double peak_ref_r = 0.0;        // deg/s
  double peak_r = 0.0;            // deg/s
  double peak_ref_ay = 0.0;       // m/s^2, CoM
  double peak_ay = 0.0;           // m/s^2, CoM
  double peak_ref_ay_seat = 0.0;  // m/s^2
  double peak_ay_seat = 0.0;      // m/s^2
  double threshold = 0.0;         // deg/s at the run's peak reference yaw rate
  double compliance_pct = 0.0;    // samples with |ref_r - r| within threshold
  double rms_e_r = 0.0;           // deg/s
  double rms_e_ay = 0.0;          // m/s^2
  double low_band_ratio = 0.0;    // measured / reference summed amplitude below 1 Hz
  double saturation_duty = 0.0;   // fraction of samples in front saturation
  double course_extent = 0.0;     // m of progress along the course
  size_t samples = 0;
};

[[nodiscard]] TrackingReport tracking_report(std::span<const TelemetryRecord> run, const ThresholdTable& table);

void print_report(std::ostream& os, const TrackingReport& rep);

/// Channel extracted by column name.
[[nodiscard]] std::vector<double> channel(std::span<const TelemetryRecord> run, double TelemetryRecord::*field);

struct ChannelDifference {
  std::string name;
  double rms = 0.0;
  double max = 0.0;
};

struct RunComparison {
  std::vector<double> s;  // common grid, m
  std::vector<ChannelDifference> channels;
  std::vector<std::vector<double>> a;  // resampled, one vector per channel
  std::vector<std::vector<double>> b;
};

/// Resamples both runs on a common distance grid (linear interpolation in s)
/// and reports per-channel RMS and max differences for yaw rate, seat
/// lateral acceleration, hand-wheel angle and hand-wheel torque.
[[nodiscard]] RunComparison compare_runs(std::span<const TelemetryRecord> a, std::span<const TelemetryRecord> b,
                                         double ds = 0.1);

void write_comparison_csv(std::ostream& os, const RunComparison& cmp);
void write_spectrum_csv(std::ostream& os, const AmplitudeSpectrum& spec);

}  // namespace hse
