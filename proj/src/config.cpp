#include "lgcp/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace lgcp {

namespace {

constexpr std::array<std::string_view, 16> kKeys = {
    "i_nutation_khz", "i_offset_khz",      "s_nutation_khz",  "s_offset_khz",
    "rotor_khz",      "distance_angstrom", "n_points",        "dwell_us",
    "powder_n",       "steps_per_period",  "zero_fill",       "sweep_param",
    "sweep_start_khz", "sweep_stop_khz",   "sweep_step_khz",  "lg_mode",
};

constexpr std::array<std::string_view, 5> kRequired = {
    "i_nutation_khz", "i_offset_khz", "s_nutation_khz", "rotor_khz", "distance_angstrom",
};

constexpr std::array<std::string_view, 4> kSweepKeys = {
    "sweep_param", "sweep_start_khz", "sweep_stop_khz", "sweep_step_khz",
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool known_key(std::string_view key) {
  for (auto k : kKeys)
    if (k == key) return true;
  return false;
}

using Entries = std::map<std::string, std::string, std::less<>>;

double get_double(const Entries& e, std::string_view key) {
  const std::string& text = e.find(key)->second;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("key '" + std::string(key) + "': '" + text + "' is not a number");
  return v;
}

int get_int(const Entries& e, std::string_view key) {
  const std::string& text = e.find(key)->second;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("key '" + std::string(key) + "': '" + text + "' is not an integer");
  return v;
}

template <typename T, typename Get>
void maybe(const Entries& e, std::string_view key, T& out, Get get) {
  if (e.contains(key)) out = get(e, key);
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKeys; }

SweepSpec RunConfig::sweep_spec() const {
  if (!sweep) throw ConfigError("sweep requires keys sweep_param, sweep_start_khz, sweep_stop_khz, sweep_step_khz");
  SweepSpec spec;
  spec.parameter = sweep->parameter;
  spec.start_khz = sweep->start_khz;
  spec.stop_khz = sweep->stop_khz;
  spec.step_khz = sweep->step_khz;
  spec.base = {sequence, coupling(), powder(), spectrum, {}};
  return spec;
}

RunConfig parse_config(std::string_view text) {
  Entries entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!known_key(key)) throw ConfigError("unknown key '" + std::string(key) + "'");
    if (value.empty()) throw ConfigError("key '" + std::string(key) + "' has no value");
    if (!entries.emplace(std::string(key), std::string(value)).second)
      throw ConfigError("duplicate key '" + std::string(key) + "'");
  }

  for (auto k : kRequired)
    if (!entries.contains(k)) throw ConfigError("missing required key '" + std::string(k) + "'");

  RunConfig cfg;
  auto& seq = cfg.sequence;
  seq.i_channel.nutation_hz = get_double(entries, "i_nutation_khz") * 1e3;
  seq.i_channel.offset_hz = get_double(entries, "i_offset_khz") * 1e3;
  seq.s_channel.nutation_hz = get_double(entries, "s_nutation_khz") * 1e3;
  maybe(entries, "s_offset_khz", seq.s_channel.offset_hz,
        [](const Entries& e, std::string_view k) { return get_double(e, k) * 1e3; });
  seq.rotor.omega_r_hz = get_double(entries, "rotor_khz") * 1e3;
  cfg.distance_angstrom = get_double(entries, "distance_angstrom");
  maybe(entries, "n_points", seq.n_points, get_int);
  maybe(entries, "dwell_us", seq.dwell_s,
        [](const Entries& e, std::string_view k) { return get_double(e, k) * 1e-6; });
  maybe(entries, "steps_per_period", seq.rotor.steps_per_period, get_int);
  maybe(entries, "powder_n", cfg.powder_n, get_int);
  maybe(entries, "zero_fill", cfg.spectrum.zero_fill, get_int);
  if (auto it = entries.find("lg_mode"); it != entries.end()) {
    try {
      seq.lg_mode = parse_lg_mode(it->second);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("key 'lg_mode': ") + e.what());
    }
  }

  std::size_t sweep_keys = 0;
  for (auto k : kSweepKeys) sweep_keys += entries.contains(k) ? 1 : 0;
  if (sweep_keys != 0) {
    for (auto k : kSweepKeys)
      if (!entries.contains(k)) throw ConfigError("missing required key '" + std::string(k) + "' (sweep keys go together)");
    SweepRange range;
    try {
      range.parameter = parse_sweep_parameter(entries.find("sweep_param")->second);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("key 'sweep_param': ") + e.what());
    }
    range.start_khz = get_double(entries, "sweep_start_khz");
    range.stop_khz = get_double(entries, "sweep_stop_khz");
    range.step_khz = get_double(entries, "sweep_step_khz");
    cfg.sweep = range;
  }

  // Range checks, reported as configuration errors.
  try {
    seq.validate();
    (void)cfg.coupling();
    if (cfg.powder_n < 1) throw std::invalid_argument("powder_n must be >= 1");
    if (cfg.spectrum.zero_fill < 1) throw std::invalid_argument("zero_fill must be >= 1");
    if (cfg.sweep) cfg.sweep_spec().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace lgcp
