#include "hse/evaluation.hpp"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

#include "hse/errors.hpp"
#include "hse/units.hpp"

namespace hse {

namespace {

double rms(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

// Monotone (s, value) samples, dropping points where s does not advance.
struct Series {
  std::vector<double> s;
  std::vector<double> v;
};

Series monotone(std::span<const TelemetryRecord> run, double TelemetryRecord::*field) {
  Series out;
  for (const auto& rec : run) {
    if (!out.s.empty() && !(rec.s > out.s.back())) continue;
    out.s.push_back(rec.s);
    out.v.push_back(rec.*field);
  }
  return out;
}

double interpolate(const Series& ser, double s) {
  auto it = std::upper_bound(ser.s.begin(), ser.s.end(), s);
  if (it == ser.s.begin()) return ser.v.front();
  if (it == ser.s.end()) return ser.v.back();
  const size_t i = static_cast<size_t>(it - ser.s.begin());
  const double w = (s - ser.s[i - 1]) / (ser.s[i] - ser.s[i - 1]);
  return ser.v[i - 1] + w * (ser.v[i] - ser.v[i - 1]);
}

}  // namespace

void validate(const ThresholdTable& table) {
  if (table.points.empty()) throw ConfigError("threshold table is empty");
  for (size_t i = 0; i < table.points.size(); ++i) {
    if (!(table.points[i].second > 0.0)) throw ConfigError("threshold values must be positive");
    if (i > 0) {
      if (!(table.points[i].first > table.points[i - 1].first))
        throw ConfigError("threshold amplitudes must be strictly increasing");
      if (table.points[i].second < table.points[i - 1].second)
        throw ConfigError("thresholds must be nondecreasing in amplitude");
    }
  }
}

double yaw_threshold(double amplitude, const ThresholdTable& table) {
  validate(table);
  if (!(amplitude >= 0.0)) throw DomainError("yaw_threshold: amplitude must be non-negative");
  const auto& pts = table.points;
  if (amplitude <= pts.front().first) return pts.front().second;
  if (amplitude >= pts.back().first) return pts.back().second;
  auto it = std::upper_bound(pts.begin(), pts.end(), amplitude,
                             [](double a, const std::pair<double, double>& p) { return a < p.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.second + (amplitude - lo.first) / (hi.first - lo.first) * (hi.second - lo.second);
}

AmplitudeSpectrum dft_amplitude(std::span<const double> samples, double dt) {
  if (samples.size() < 2) throw DomainError("dft_amplitude: need at least two samples");
  if (!(dt > 0.0)) throw DomainError("dft_amplitude: dt must be positive");
  const size_t n = samples.size();
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  AmplitudeSpectrum spec;
  const size_t half = n / 2;
  spec.frequency.resize(half + 1);
  spec.amplitude.resize(half + 1);
  const double nd = static_cast<double>(n);
  for (size_t k = 0; k <= half; ++k) {
    spec.frequency[k] = static_cast<double>(k) / (nd * dt);
    const double mag = std::abs(out[k]) / nd;
    const bool unpaired = k == 0 || (n % 2 == 0 && k == half);
    spec.amplitude[k] = unpaired ? mag : 2.0 * mag;
  }
  return spec;
}

AmplitudeSpectrum dft_amplitude(std::span<const double> samples, std::span<const double> times) {
  if (samples.size() != times.size()) throw DomainError("dft_amplitude: samples and times differ in length");
  if (times.size() < 2) throw DomainError("dft_amplitude: need at least two samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (size_t i = 1; i < times.size(); ++i)
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-6 * dt)
      throw DomainError("dft_amplitude: non-uniform sampling");
  return dft_amplitude(samples, dt);
}

std::vector<double> channel(std::span<const TelemetryRecord> run, double TelemetryRecord::*field) {
  std::vector<double> out;
  out.reserve(run.size());
  for (const auto& r : run) out.push_back(r.*field);
  return out;
}

TrackingReport tracking_report(std::span<const TelemetryRecord> run, const ThresholdTable& table) {
  if (run.empty()) throw DomainError("tracking_report: empty telemetry");
  TrackingReport rep;
  rep.samples = run.size();
  std::vector<double> e_r, e_ay;
  size_t saturated = 0;
  for (const auto& rec : run) {
    rep.peak_ref_r = std::max(rep.peak_ref_r, std::abs(units::rad2deg(rec.ref_r)));
    rep.peak_r = std::max(rep.peak_r, std::abs(units::rad2deg(rec.r)));
    rep.peak_ref_ay = std::max(rep.peak_ref_ay, std::abs(rec.ref_ay));
    rep.peak_ay = std::max(rep.peak_ay, std::abs(rec.ay));
    rep.peak_ref_ay_seat = std::max(rep.peak_ref_ay_seat, std::abs(rec.ref_ay_seat));
    rep.peak_ay_seat = std::max(rep.peak_ay_seat, std::abs(rec.ay_seat));
    e_r.push_back(units::rad2deg(rec.ref_r - rec.r));
    e_ay.push_back(rec.ref_ay - rec.ay);
    saturated += rec.saturated != 0.0 ? 1 : 0;
  }
  rep.threshold = yaw_threshold(rep.peak_ref_r, table);
  const auto within = std::count_if(e_r.begin(), e_r.end(), [&](double e) { return std::abs(e) <= rep.threshold; });
  rep.compliance_pct = 100.0 * static_cast<double>(within) / static_cast<double>(run.size());
  rep.rms_e_r = rms(e_r);
  rep.rms_e_ay = rms(e_ay);
  rep.saturation_duty = static_cast<double>(saturated) / static_cast<double>(run.size());
  rep.course_extent = run.back().s - run.front().s;

  if (run.size() >= 2) {
    const auto t = channel(run, &TelemetryRecord::t);
    const auto ref = dft_amplitude(channel(run, &TelemetryRecord::ref_ay), t);
    const auto meas = dft_amplitude(channel(run, &TelemetryRecord::ay), t);
    double sum_ref = 0.0, sum_meas = 0.0;
    for (size_t k = 0; k < ref.frequency.size() && ref.frequency[k] < 1.0; ++k) {
      sum_ref += ref.amplitude[k];
      sum_meas += meas.amplitude[k];
    }
    rep.low_band_ratio = sum_ref > 0.0 ? sum_meas / sum_ref : 1.0;
  }
  return rep;
}

void print_report(std::ostream& os, const TrackingReport& rep) {
  os << "samples                  " << rep.samples << '\n'
     << "course_extent_m          " << rep.course_extent << '\n'
     << "peak_ref_r_deg_s         " << rep.peak_ref_r << '\n'
     << "peak_r_deg_s             " << rep.peak_r << '\n'
     << "peak_ref_ay_mps2         " << rep.peak_ref_ay << '\n'
     << "peak_ay_mps2             " << rep.peak_ay << '\n'
     << "peak_ref_ay_seat_mps2    " << rep.peak_ref_ay_seat << '\n'
     << "peak_ay_seat_mps2        " << rep.peak_ay_seat << '\n'
     << "yaw_threshold_deg_s      " << rep.threshold << '\n'
     << "threshold_compliance_pct " << rep.compliance_pct
     << "  (share of samples with |ref_r - r| <= threshold)\n"
     << "rms_e_r_deg_s            " << rep.rms_e_r << '\n'
     << "rms_e_ay_mps2            " << rep.rms_e_ay << '\n'
     << "low_band_ratio           " << rep.low_band_ratio << '\n'
     << "saturation_duty          " << rep.saturation_duty << '\n';
}

RunComparison compare_runs(std::span<const TelemetryRecord> a, std::span<const TelemetryRecord> b, double ds) {
  if (a.empty() || b.empty()) throw DomainError("compare_runs: empty run");
  if (!(ds > 0.0)) throw DomainError("compare_runs: grid step must be positive");
  const std::vector<std::pair<const char*, double TelemetryRecord::*>> chans = {
      {"r", &TelemetryRecord::r},
      {"ay_seat", &TelemetryRecord::ay_seat},
      {"delta_hw", &TelemetryRecord::delta_hw},
      {"tau_hw", &TelemetryRecord::tau_hw},
  };
  const Series sa = monotone(a, &TelemetryRecord::s);
  const Series sb = monotone(b, &TelemetryRecord::s);
  const double lo = std::max(sa.s.front(), sb.s.front());
  const double hi = std::min(sa.s.back(), sb.s.back());
  if (!(hi > lo)) throw DomainError("compare_runs: runs do not overlap in distance");

  RunComparison cmp;
  const auto n = static_cast<size_t>(std::floor((hi - lo) / ds)) + 1;
  cmp.s.resize(n);
  for (size_t i = 0; i < n; ++i) cmp.s[i] = lo + ds * static_cast<double>(i);

  for (const auto& [name, field] : chans) {
    const Series ca = monotone(a, field);
    const Series cb = monotone(b, field);
    std::vector<double> ra(n), rb(n), diff(n);
    double max_abs = 0.0;
    for (size_t i = 0; i < n; ++i) {
      ra[i] = interpolate(ca, cmp.s[i]);
      rb[i] = interpolate(cb, cmp.s[i]);
      diff[i] = ra[i] - rb[i];
      max_abs = std::max(max_abs, std::abs(diff[i]));
    }
    cmp.channels.push_back({name, rms(diff), max_abs});
    cmp.a.push_back(std::move(ra));
    cmp.b.push_back(std::move(rb));
  }
  return cmp;
}

void write_comparison_csv(std::ostream& os, const RunComparison& cmp) {
  os << "s";
  for (const auto& c : cmp.channels) os << ',' << c.name << "_a," << c.name << "_b";
  os << '\n';
  for (size_t i = 0; i < cmp.s.size(); ++i) {
    os << format_number(cmp.s[i]);
    for (size_t c = 0; c < cmp.channels.size(); ++c)
      os << ',' << format_number(cmp.a[c][i]) << ',' << format_number(cmp.b[c][i]);
    os << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const AmplitudeSpectrum& spec) {
  os << "frequency_hz,amplitude\n";
  for (size_t k = 0; k < spec.frequency.size(); ++k)
    os << format_number(spec.frequency[k]) << ',' << format_number(spec.amplitude[k]) << '\n';
}

}  // namespace hse
