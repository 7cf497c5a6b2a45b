#include "hse/telemetry.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hse/errors.hpp"

namespace hse {

namespace {

constexpr std::string_view kMagic = "# hse-telemetry schema=";
constexpr std::string_view kFault = "# FAULT ";

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view text, size_t line_no) {
  const std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw ConfigError("telemetry line " + std::to_string(line_no) + ": bad number '" + buf + "'");
  return v;
}

}  // namespace

const std::vector<TelemetryColumn>& telemetry_columns() {
  using R = TelemetryRecord;
  static const std::vector<TelemetryColumn> cols = {
      {"t", &R::t},
      {"s", &R::s},
      {"delta_hw", &R::delta_hw},
      {"delta_hw_rate", &R::delta_hw_rate},
      {"throttle", &R::throttle},
      {"brake", &R::brake},
      {"ref_r", &R::ref_r},
      {"ref_uy", &R::ref_uy},
      {"ref_ux", &R::ref_ux},
      {"ref_ux_dot", &R::ref_ux_dot},
      {"ref_ay", &R::ref_ay},
      {"ref_ay_seat", &R::ref_ay_seat},
      {"ref_psi", &R::ref_psi},
      {"ref_E", &R::ref_E},
      {"ref_N", &R::ref_N},
      {"ref_Mz", &R::ref_Mz},
      {"ref_Fy", &R::ref_Fy},
      {"ref_alpha_f", &R::ref_alpha_f},
      {"target_offset", &R::target_offset},
      {"r", &R::r},
      {"uy", &R::uy},
      {"ux", &R::ux},
      {"ay", &R::ay},
      {"ay_seat", &R::ay_seat},
      {"rdot", &R::rdot},
      {"psi", &R::psi},
      {"E", &R::E},
      {"N", &R::N},
      {"delta_f", &R::delta_f},
      {"delta_r", &R::delta_r},
      {"delta_f_act", &R::delta_f_act},
      {"delta_r_act", &R::delta_r_act},
      {"saturated", &R::saturated},
      {"e_r", &R::e_r},
      {"e_uy", &R::e_uy},
      {"uy_des", &R::uy_des},
      {"tau_hw", &R::tau_hw},
  };
  return cols;
}

std::optional<double TelemetryRecord::*> telemetry_field(std::string_view name) {
  for (const auto& c : telemetry_columns())
    if (name == c.name) return c.field;
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

TelemetryWriter::TelemetryWriter(std::ostream& out, const TelemetryHeader& header) : out_(out) {
  out_ << kMagic << header.schema << '\n';
  out_ << "# config_hash=" << header.config_hash << '\n';
  for (const auto& [k, v] : header.params) out_ << "# param." << k << '=' << v << '\n';
  bool first = true;
  for (const auto& c : telemetry_columns()) {
    out_ << (first ? "" : ",") << c.name;
    first = false;
  }
  out_ << '\n';
}

void TelemetryWriter::write(const TelemetryRecord& rec) {
  bool first = true;
  for (const auto& c : telemetry_columns()) {
    if (!first) out_ << ',';
    out_ << format_number(rec.*c.field);
    first = false;
  }
  out_ << '\n';
}

void TelemetryWriter::fault(std::string_view message) {
  out_ << kFault << message << '\n';
  out_.flush();
}

void TelemetryWriter::flush() { out_.flush(); }

TelemetryLog read_telemetry(std::istream& in) {
  TelemetryLog log;
  std::string line;
  size_t line_no = 0;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0)
    throw ConfigError("telemetry: missing schema header");
  ++line_no;
  log.header.schema = std::atoi(line.c_str() + kMagic.size());
  if (log.header.schema != kTelemetrySchemaVersion)
    throw ConfigError("telemetry: unsupported schema version " + line.substr(kMagic.size()));

  std::vector<double TelemetryRecord::*> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind(kFault, 0) == 0) {
      log.fault = line.substr(kFault.size());
      continue;
    }
    if (line[0] == '#') {
      if (line.rfind("# config_hash=", 0) == 0) {
        log.header.config_hash = line.substr(14);
      } else if (line.rfind("# param.", 0) == 0) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) log.header.params.emplace_back(line.substr(8, eq - 8), line.substr(eq + 1));
      }
      continue;
    }
    const auto cells = split_commas(line);
    if (fields.empty()) {
      for (auto name : cells) {
        auto f = telemetry_field(name);
        if (!f) throw ConfigError("telemetry: unknown column '" + std::string(name) + "'");
        fields.push_back(*f);
      }
      if (fields.size() != telemetry_columns().size()) throw ConfigError("telemetry: column set incomplete");
      continue;
    }
    if (cells.size() != fields.size())
      throw ConfigError("telemetry line " + std::to_string(line_no) + ": expected " +
                        std::to_string(fields.size()) + " cells");
    TelemetryRecord rec;
    for (size_t i = 0; i < cells.size(); ++i) rec.*fields[i] = parse_number(cells[i], line_no);
    log.records.push_back(rec);
  }
  if (fields.empty()) throw ConfigError("telemetry: missing column header");
  return log;
}

TelemetryLog read_telemetry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open telemetry file '" + path + "'");
  return read_telemetry(in);
}

std::string to_csv(const TelemetryHeader& header, const std::vector<TelemetryRecord>& records,
                   const std::optional<std::string>& fault) {
  std::ostringstream os;
  TelemetryWriter w(os, header);
  for (const auto& r : records) w.write(r);
  if (fault) w.fault(*fault);
  return os.str();
}

}  // namespace hse
