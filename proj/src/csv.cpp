#include "lgcp/csv.hpp"

#include <cstdio>

namespace lgcp::csv {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_buildup(std::ostream& out, const BuildupCurve& curve) {
  out << kBuildupHeader << "\r\n";
  for (std::size_t k = 0; k < curve.signal.size(); ++k)
    out << format_float(curve.times_s[k] * 1e6) << ',' << format_float(curve.signal[k]) << "\r\n";
}

void write_spectrum(std::ostream& out, const DipolarSpectrum& spec) {
  out << kSpectrumHeader << "\r\n";
  for (std::size_t j = 0; j < spec.amps.size(); ++j)
    out << format_float(spec.freqs_hz[j]) << ',' << format_float(spec.amps[j]) << "\r\n";
}

void write_summary(std::ostream& out, const ScaleFactorResult& r) {
  out << kSummaryHeader << "\r\n";
  out << format_float(r.observed_hz) << ',' << format_float(r.true_delta_hz) << ',' << format_float(r.k) << ','
      << format_float(r.peak_freq_hz) << ',' << format_float(r.mirror_freq_hz) << ','
      << format_float(r.uncertainty) << ',' << format_float(r.oscillation_amplitude) << ','
      << (r.transfer_detected ? "true" : "false") << "\r\n";
}

void write_contour(std::ostream& out, const ContourTable& table) {
  out << kContourHeader << "\r\n";
  const std::string name(to_string(table.parameter));
  for (const auto& row : table.rows) {
    const std::string value = format_float(row.value_khz);
    for (std::size_t j = 0; j < row.spectrum.amps.size(); ++j)
      out << name << ',' << value << ',' << format_float(row.spectrum.freqs_hz[j]) << ','
          << format_float(row.spectrum.amps[j]) << "\r\n";
  }
}

void write_scale_table(std::ostream& out, const ContourTable& table) {
  out << kScaleTableHeader << "\r\n";
  const std::string name(to_string(table.parameter));
  for (const auto& row : table.rows) {
    const auto& s = row.scale;
    out << name << ',' << format_float(row.value_khz) << ',' << format_float(row.fields.delta_eff_hz) << ','
        << format_float(s.observed_hz) << ',' << format_float(s.true_delta_hz) << ',' << format_float(s.k) << ','
        << format_float(s.peak_freq_hz) << ',' << format_float(s.uncertainty) << ','
        << format_float(table.raw_bin_hz) << ',' << format_float(s.oscillation_amplitude) << ','
        << to_string(row.status) << ',' << escape(row.error) << "\r\n";
  }
}

}  // namespace lgcp::csv
