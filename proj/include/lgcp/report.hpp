// Text and CSV reports for the `predict` and `report` commands.

#ifndef LGCP_REPORT_HPP
#define LGCP_REPORT_HPP

#include "lgcp/config.hpp"
#include "lgcp/frame_analysis.hpp"
#include "lgcp/spectrum.hpp"

#include <ostream>

namespace lgcp {

struct AnalyticPrediction {
  TiltedFrame i_frame;
  TiltedFrame s_frame;
  SumDiff fields;
  ResonanceReport survival;
  ScaleProducts products;
  double delta_hz = 0.0;
  double zq_peak_sum_hz = 0.0;   // effective-field sum, as written
  double zq_peak_diff_hz = 0.0;  // effective-field difference variant
  /// Some simulation tools quote the LG offset scaled by sqrt(2); both
  /// readings are printed to ease comparison.
  double i_offset_sqrt2_hz = 0.0;
  bool one_channel_on_resonance = false;
};

AnalyticPrediction predict(const RunConfig& cfg, double tolerance_hz = kDefaultSurvivalToleranceHz);

void print_prediction(std::ostream& out, const AnalyticPrediction& p);

struct Comparison {
  AnalyticPrediction analytic;
  ScaleFactorResult numeric;
};

void print_comparison(std::ostream& out, const Comparison& c);

inline constexpr std::string_view kComparisonHeader =
    "quantity,analytic_hz,numeric_hz,numeric_minus_analytic_hz";

/// Rows: zq_peak_sum vs the dominant peak, zq_peak_diff vs the dominant
/// peak, and both again against the doublet splitting.
void write_comparison_csv(std::ostream& out, const Comparison& c);

}  // namespace lgcp

#endif  // LGCP_REPORT_HPP
