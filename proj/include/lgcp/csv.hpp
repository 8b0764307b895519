// CSV output. RFC 4180 quoting, mandatory header row, floats with 9
// significant digits (printf "%.9g") so reruns are byte-identical.

#ifndef LGCP_CSV_HPP
#define LGCP_CSV_HPP

#include "lgcp/engine.hpp"
#include "lgcp/spectrum.hpp"
#include "lgcp/sweep.hpp"

#include <ostream>
#include <string>
#include <string_view>

namespace lgcp::csv {

std::string format_float(double v);
std::string escape(std::string_view field);

inline constexpr std::string_view kBuildupHeader = "time_us,signal";
inline constexpr std::string_view kSpectrumHeader = "freq_hz,amp";
inline constexpr std::string_view kSummaryHeader =
    "observed_hz,true_delta_hz,k,peak_freq_hz,mirror_freq_hz,uncertainty,oscillation_amplitude,transfer_detected";
inline constexpr std::string_view kContourHeader = "parameter,value_khz,freq_hz,amp";
inline constexpr std::string_view kScaleTableHeader =
    "parameter,value_khz,delta_eff_hz,observed_hz,true_delta_hz,k,peak_freq_hz,uncertainty,bin_width_hz,"
    "oscillation_amplitude,status,error";

void write_buildup(std::ostream& out, const BuildupCurve& curve);
void write_spectrum(std::ostream& out, const DipolarSpectrum& spec);
void write_summary(std::ostream& out, const ScaleFactorResult& r);
/// Long format, one line per (row, frequency). Rows without a spectrum
/// (failed points) are skipped.
void write_contour(std::ostream& out, const ContourTable& table);
void write_scale_table(std::ostream& out, const ContourTable& table);

}  // namespace lgcp::csv

#endif  // LGCP_CSV_HPP
