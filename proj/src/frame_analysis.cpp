#include "lgcp/frame_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace lgcp {

TiltedFrame tilt(const ChannelSettings& ch) {
  if (!(ch.nutation_hz >= 0.0))
    throw std::invalid_argument("tilt: nutation must be >= 0");
  if (ch.nutation_hz == 0.0 && ch.offset_hz == 0.0)
    throw std::invalid_argument("tilt: zero nutation and zero offset leave the tilt angle undefined");
  return {std::atan2(ch.nutation_hz, ch.offset_hz), std::hypot(ch.nutation_hz, ch.offset_hz)};
}

SumDiff sum_diff(const TiltedFrame& i, const TiltedFrame& s) {
  return {i.omega_eff_hz + s.omega_eff_hz, i.omega_eff_hz - s.omega_eff_hz};
}

std::string_view to_string(TermFamily t) {
  switch (t) {
    case TermFamily::DoubleQuantum: return "DQ";
    case TermFamily::ZeroQuantum: return "ZQ";
    case TermFamily::ISingleSpin: return "I";
    case TermFamily::SSingleSpin: return "S";
  }
  return "?";
}

std::vector<ResonanceEntry> ResonanceReport::surviving() const {
  std::vector<ResonanceEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
               [](const ResonanceEntry& e) { return e.surviving; });
  return out;
}

const ResonanceEntry& ResonanceReport::entry(TermFamily t) const {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [t](const ResonanceEntry& e) { return e.term == t; });
  if (it == entries.end()) throw std::out_of_range("ResonanceReport: no entry for term");
  return *it;
}

namespace {

// Best sideband over n in -2..2 and over the supplied exponent signs. Ties
// keep the first candidate, scanning exponents in order and n upward.
ResonanceEntry best_match(TermFamily term, std::initializer_list<double> exponents,
                          double rotor_hz, double tolerance_hz) {
  ResonanceEntry best{term, 0.0, 0, 0.0, false};
  double best_abs = INFINITY;
  for (double w : exponents) {
    for (int n = -2; n <= 2; ++n) {
      const double mis = w - n * rotor_hz;
      if (std::abs(mis) < best_abs) {
        best_abs = std::abs(mis);
        best.exponent_hz = w;
        best.n = n;
        best.mismatch_hz = mis;
      }
    }
  }
  best.surviving = best_abs <= tolerance_hz;
  return best;
}

}  // namespace

ResonanceReport term_survival(const TiltedFrame& i, const TiltedFrame& s, double rotor_hz,
                              double tolerance_hz) {
  if (!(rotor_hz > 0.0)) throw std::invalid_argument("term_survival: rotor frequency must be > 0");
  if (!(tolerance_hz >= 0.0)) throw std::invalid_argument("term_survival: tolerance must be >= 0");
  const SumDiff sd = sum_diff(i, s);
  ResonanceReport rep;
  rep.rotor_hz = rotor_hz;
  rep.tolerance_hz = tolerance_hz;
  rep.entries = {
      best_match(TermFamily::DoubleQuantum, {sd.sigma_eff_hz}, rotor_hz, tolerance_hz),
      best_match(TermFamily::ZeroQuantum, {sd.delta_eff_hz}, rotor_hz, tolerance_hz),
      best_match(TermFamily::ISingleSpin, {i.omega_eff_hz, -i.omega_eff_hz}, rotor_hz, tolerance_hz),
      best_match(TermFamily::SSingleSpin, {s.omega_eff_hz, -s.omega_eff_hz}, rotor_hz, tolerance_hz),
  };
  return rep;
}

ScaleProducts scale_products(const TiltedFrame& i, const TiltedFrame& s) {
  const double si = std::sin(i.theta), ci = std::cos(i.theta);
  const double ss = std::sin(s.theta), cs = std::cos(s.theta);
  return {si * ss, si * cs, ci * ss};
}

namespace {

double zq_peak(double field_term_hz, double delta_hz, const TiltedFrame& i, const TiltedFrame& s) {
  const double coupling = 0.5 * delta_hz * std::sin(i.theta) * std::sin(s.theta);
  return 0.5 * std::sqrt(field_term_hz * field_term_hz + coupling * coupling);
}

}  // namespace

double predict_zq_peak(double delta_hz, const TiltedFrame& i, const TiltedFrame& s) {
  return zq_peak(i.omega_eff_hz + s.omega_eff_hz, delta_hz, i, s);
}

double predict_zq_peak_difference(double delta_hz, const TiltedFrame& i, const TiltedFrame& s) {
  return zq_peak(i.omega_eff_hz - s.omega_eff_hz, delta_hz, i, s);
}

}  // namespace lgcp
