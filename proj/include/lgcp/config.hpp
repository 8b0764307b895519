// Flat `key = value` run configuration.
//
// One assignment per line, `#` starts a comment. Keys form a closed set;
// anything else is rejected by name. Frequencies are given in kHz and
// converted to Hz on load.

#ifndef LGCP_CONFIG_HPP
#define LGCP_CONFIG_HPP

#include "lgcp/engine.hpp"
#include "lgcp/spectrum.hpp"
#include "lgcp/sweep.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lgcp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRange {
  SweepParameter parameter = SweepParameter::NPower;
  double start_khz = 0.0;
  double stop_khz = 0.0;
  double step_khz = 0.0;
};

struct RunConfig {
  SequenceConfig sequence;
  double distance_angstrom = 0.0;
  int powder_n = kDefaultPowderCount;
  SpectrumOptions spectrum;
  std::optional<SweepRange> sweep;

  DipoleCoupling coupling() const { return coupling_from_distance(distance_angstrom); }
  PowderScheme powder() const { return PowderScheme::golden_spiral(powder_n); }
  /// Throws ConfigError when the sweep keys were not supplied.
  SweepSpec sweep_spec() const;
};

/// The accepted keys, in documentation order.
std::span<const std::string_view> config_keys();

/// Throws ConfigError naming the offending key or line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace lgcp

#endif  // LGCP_CONFIG_HPP
