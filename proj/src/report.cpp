#include "lgcp/report.hpp"

#include "lgcp/csv.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace lgcp {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string khz(double hz) { return fmt("%.4f", hz * 1e-3) + " kHz"; }

}  // namespace

AnalyticPrediction predict(const RunConfig& cfg, double tolerance_hz) {
  AnalyticPrediction p;
  const auto& seq = cfg.sequence;
  p.i_frame = tilt(seq.i_channel);
  p.s_frame = tilt(seq.s_channel);
  p.fields = sum_diff(p.i_frame, p.s_frame);
  p.survival = term_survival(p.i_frame, p.s_frame, seq.rotor.omega_r_hz, tolerance_hz);
  p.products = scale_products(p.i_frame, p.s_frame);
  p.delta_hz = cfg.coupling().delta_hz;
  p.zq_peak_sum_hz = predict_zq_peak(p.delta_hz, p.i_frame, p.s_frame);
  p.zq_peak_diff_hz = predict_zq_peak_difference(p.delta_hz, p.i_frame, p.s_frame);
  p.i_offset_sqrt2_hz = seq.i_channel.offset_hz * std::numbers::sqrt2;
  p.one_channel_on_resonance = seq.i_channel.offset_hz == 0.0 || seq.s_channel.offset_hz == 0.0;
  return p;
}

void print_prediction(std::ostream& out, const AnalyticPrediction& p) {
  out << "I channel: theta = " << fmt("%.4f", p.i_frame.theta * kDeg) << " deg, w_eff = "
      << khz(p.i_frame.omega_eff_hz) << "\n";
  out << "S channel: theta = " << fmt("%.4f", p.s_frame.theta * kDeg) << " deg, w_eff = "
      << khz(p.s_frame.omega_eff_hz) << "\n";
  out << "magic angle: " << fmt("%.4f", kMagicAngle * kDeg) << " deg\n";
  out << "I offset (as configured): " << khz(p.i_offset_sqrt2_hz / std::numbers::sqrt2)
      << ", sqrt(2)-scaled convention: " << khz(p.i_offset_sqrt2_hz) << "\n";
  out << "sigma_eff = " << khz(p.fields.sigma_eff_hz) << ", delta_eff = " << khz(p.fields.delta_eff_hz) << "\n";
  out << "scale products: sinI*sinS = " << fmt("%.5f", p.products.zq_dq)
      << ", sinI*cosS = " << fmt("%.5f", p.products.i_flip) << ", cosI*sinS = " << fmt("%.5f", p.products.s_flip)
      << "\n";
  out << "term survival (rotor " << khz(p.survival.rotor_hz) << ", tolerance " << fmt("%g", p.survival.tolerance_hz)
      << " Hz):\n";
  for (const auto& e : p.survival.entries) {
    out << "  " << to_string(e.term) << ": exponent " << khz(e.exponent_hz) << ", n = " << e.n << ", mismatch "
        << khz(e.mismatch_hz) << (e.surviving ? "  [surviving]" : "") << "\n";
  }
  out << "dipolar coupling delta = " << khz(p.delta_hz) << "\n";
  out << "ZQ peak (effective-field sum, as written): " << khz(p.zq_peak_sum_hz) << "\n";
  out << "ZQ peak (effective-field difference variant): " << khz(p.zq_peak_diff_hz) << "\n";
  if (!p.one_channel_on_resonance) out << "note: neither channel is on resonance; the ZQ peak formula does not apply\n";
}

void print_comparison(std::ostream& out, const Comparison& c) {
  print_prediction(out, c.analytic);
  const auto& n = c.numeric;
  out << "numeric: dominant peak " << khz(n.peak_freq_hz) << ", doublet splitting " << khz(n.observed_hz)
      << ", k = " << fmt("%.4f", n.k) << " +/- " << fmt("%.4f", n.uncertainty)
      << (n.transfer_detected ? "" : " (no transfer detected)") << "\n";
  out << "side by side                    analytic        numeric peak    numeric splitting\n";
  out << "  ZQ peak, sum form          " << fmt("%12.4f", c.analytic.zq_peak_sum_hz * 1e-3) << " kHz"
      << fmt("%12.4f", n.peak_freq_hz * 1e-3) << " kHz" << fmt("%12.4f", n.observed_hz * 1e-3) << " kHz\n";
  out << "  ZQ peak, difference form   " << fmt("%12.4f", c.analytic.zq_peak_diff_hz * 1e-3) << " kHz"
      << fmt("%12.4f", n.peak_freq_hz * 1e-3) << " kHz" << fmt("%12.4f", n.observed_hz * 1e-3) << " kHz\n";
}

void write_comparison_csv(std::ostream& out, const Comparison& c) {
  using csv::format_float;
  out << kComparisonHeader << "\r\n";
  auto row = [&](std::string_view name, double analytic, double numeric) {
    out << name << ',' << format_float(analytic) << ',' << format_float(numeric) << ','
        << format_float(numeric - analytic) << "\r\n";
  };
  row("zq_peak_sum_vs_peak", c.analytic.zq_peak_sum_hz, c.numeric.peak_freq_hz);
  row("zq_peak_diff_vs_peak", c.analytic.zq_peak_diff_hz, c.numeric.peak_freq_hz);
  row("zq_peak_sum_vs_splitting", c.analytic.zq_peak_sum_hz, c.numeric.observed_hz);
  row("zq_peak_diff_vs_splitting", c.analytic.zq_peak_diff_hz, c.numeric.observed_hz);
}

}  // namespace lgcp
