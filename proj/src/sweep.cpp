#include "lgcp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace lgcp {

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::NPower: return "n_power";
    case SweepParameter::HPower: return "h_power";
    case SweepParameter::LgOffset: return "lg_offset";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view text) {
  if (text == "n_power") return SweepParameter::NPower;
  if (text == "h_power") return SweepParameter::HPower;
  if (text == "lg_offset") return SweepParameter::LgOffset;
  throw std::invalid_argument("unknown sweep parameter '" + std::string(text) +
                              "' (expected n_power, h_power or lg_offset)");
}

std::string_view to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::NoTransfer: return "no-transfer";
    case PointStatus::Failed: return "failed";
  }
  return "?";
}

PointResult run_point(const PointSettings& settings, unsigned threads) {
  PointResult r;
  r.curve = powder_average(settings.sequence, settings.coupling, settings.powder, threads);
  r.spectrum = to_spectrum(r.curve, settings.spectrum);
  r.scale = measure_scale_factor(r.spectrum, settings.coupling, settings.measure);
  return r;
}

void SweepSpec::validate() const {
  if (!(start_khz < stop_khz)) throw std::invalid_argument("sweep: start must be < stop");
  if (!(step_khz > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
  if ((stop_khz - start_khz) / step_khz > 10000.0)
    throw std::invalid_argument("sweep: more than 10000 steps requested");
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  spec.validate();
  const auto count = static_cast<std::size_t>(std::floor((spec.stop_khz - spec.start_khz) / spec.step_khz + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = spec.start_khz + static_cast<double>(i) * spec.step_khz;
  return values;
}

SequenceConfig apply_parameter(const SequenceConfig& base, SweepParameter p, double value_khz) {
  SequenceConfig cfg = base;
  const double hz = value_khz * 1e3;
  switch (p) {
    case SweepParameter::NPower: cfg.s_channel.nutation_hz = hz; break;
    case SweepParameter::HPower: cfg.i_channel.nutation_hz = hz; break;
    case SweepParameter::LgOffset: cfg.i_channel.offset_hz = hz; break;
  }
  return cfg;
}

ContourTable run_sweep(const SweepSpec& spec, unsigned threads) {
  const auto values = sweep_values(spec);
  ContourTable table;
  table.parameter = spec.parameter;
  table.rows.resize(values.size());
  table.raw_bin_hz = 1.0 / (spec.base.sequence.n_points *
                            commensurate_dwell(spec.base.sequence.dwell_s, spec.base.sequence.rotor.step()).dwell_s);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < values.size();) {
      SweepRow& row = table.rows[i];
      row.value_khz = values[i];
      try {
        PointSettings point = spec.base;
        point.sequence = apply_parameter(spec.base.sequence, spec.parameter, values[i]);
        row.fields = sum_diff(tilt(point.sequence.i_channel), tilt(point.sequence.s_channel));
        PointResult r = run_point(point, 1);
        row.spectrum = std::move(r.spectrum);
        row.scale = r.scale;
        row.status = row.scale.transfer_detected ? PointStatus::Ok : PointStatus::NoTransfer;
      } catch (const std::exception& e) {
        row.status = PointStatus::Failed;
        row.error = e.what();
      }
    }
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(values.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return table;
}

}  // namespace lgcp
