// Parameter sweeps over rf powers or the LG offset. Each grid point is a full
// powder simulation followed by spectrum and scale-factor extraction.

#ifndef LGCP_SWEEP_HPP
#define LGCP_SWEEP_HPP

#include "lgcp/engine.hpp"
#include "lgcp/frame_analysis.hpp"
#include "lgcp/powder.hpp"
#include "lgcp/spectrum.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lgcp {

enum class SweepParameter { NPower, HPower, LgOffset };

std::string_view to_string(SweepParameter p);
/// Accepts "n_power", "h_power" and "lg_offset".
SweepParameter parse_sweep_parameter(std::string_view text);

/// Settings for a single powder simulation plus its analysis.
struct PointSettings {
  SequenceConfig sequence;
  DipoleCoupling coupling;
  PowderScheme powder;
  SpectrumOptions spectrum;
  MeasureOptions measure;
};

struct PointResult {
  BuildupCurve curve;
  DipolarSpectrum spectrum;
  ScaleFactorResult scale;
};

PointResult run_point(const PointSettings& settings, unsigned threads = 1);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::NPower;
  double start_khz = 0.0;
  double stop_khz = 0.0;
  double step_khz = 1.0;
  PointSettings base;

  /// start < stop, step > 0, at most 10000 steps.
  void validate() const;
};

/// start, start + step, ... up to and including stop (within 1e-9 steps).
std::vector<double> sweep_values(const SweepSpec& spec);

/// Base sequence with the swept quantity set to value_khz.
SequenceConfig apply_parameter(const SequenceConfig& base, SweepParameter p, double value_khz);

enum class PointStatus { Ok, NoTransfer, Failed };

std::string_view to_string(PointStatus s);

struct SweepRow {
  double value_khz = 0.0;
  SumDiff fields;  // effective-field sum and difference at this point
  DipolarSpectrum spectrum;
  ScaleFactorResult scale;
  PointStatus status = PointStatus::Ok;
  std::string error;  // set when status == Failed
};

struct ContourTable {
  SweepParameter parameter = SweepParameter::NPower;
  std::vector<SweepRow> rows;  // ascending parameter value
  double raw_bin_hz = 0.0;     // shared by every row
};

/// Points are evaluated on up to `threads` workers; rows are stored by grid
/// index, so the table does not depend on scheduling. A failing point is
/// recorded in its row and the sweep continues.
ContourTable run_sweep(const SweepSpec& spec, unsigned threads = 1);

}  // namespace lgcp

#endif  // LGCP_SWEEP_HPP
