#include "lgcp/engine.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lgcp {

std::string_view to_string(LgMode mode) {
  switch (mode) {
    case LgMode::ConstantOffset: return "constant-offset";
    case LgMode::FslgToggled: return "fslg-toggled";
  }
  return "?";
}

LgMode parse_lg_mode(std::string_view text) {
  if (text == "constant-offset") return LgMode::ConstantOffset;
  if (text == "fslg-toggled") return LgMode::FslgToggled;
  throw std::invalid_argument("unknown lg_mode '" + std::string(text) +
                              "' (expected constant-offset or fslg-toggled)");
}

void SequenceConfig::validate() const {
  rotor.validate();
  if (n_points < 2) throw std::invalid_argument("sequence: n_points must be >= 2");
  if (!(dwell_s > 0.0)) throw std::invalid_argument("sequence: dwell must be > 0");
  // tilt() rejects undefined frames.
  (void)tilt(i_channel);
  (void)tilt(s_channel);
}

ComplexMatrix4 initial_state(const TiltedFrame& i_frame, const SpinOperatorSet& ops) {
  return std::sin(i_frame.theta) * ops.ix + std::cos(i_frame.theta) * ops.iz;
}

ComplexMatrix4 detect_operator(const TiltedFrame& s_frame, const SpinOperatorSet& ops) {
  return std::sin(s_frame.theta) * ops.sx + std::cos(s_frame.theta) * ops.sz;
}

DwellGrid commensurate_dwell(double dwell_s, double step_s) {
  const double ratio = dwell_s / step_s;
  const int steps = std::max(1, static_cast<int>(std::lround(ratio)));
  const double used = steps * step_s;
  return {steps, used, std::abs(used - dwell_s) > 1e-9 * dwell_s};
}

ComplexMatrix4 step_hamiltonian(double t0, double dt, const ChannelSettings& i_ch, const ChannelSettings& s_ch,
                                const MASModulation& mod, const SpinOperatorSet& ops) {
  constexpr double c = std::numbers::sqrt3 / 6.0;
  const ComplexMatrix4 h1 = hamiltonian_at(t0 + (0.5 - c) * dt, i_ch, s_ch, mod, ops);
  const ComplexMatrix4 h2 = hamiltonian_at(t0 + (0.5 + c) * dt, i_ch, s_ch, mod, ops);
  const Complex k(0.0, -2.0 * std::numbers::pi * std::numbers::sqrt3 / 12.0 * dt);
  ComplexMatrix4 h = 0.5 * (h1 + h2) + k * (h2 * h1 - h1 * h2);
  return 0.5 * (h + h.adjoint());
}

namespace {

// Step propagators for one rotor period, indexed by step within the period.
std::vector<ComplexMatrix4> period_propagators(const ChannelSettings& i_ch, const ChannelSettings& s_ch,
                                               const MASModulation& mod, const RotorConfig& rotor,
                                               const SpinOperatorSet& ops, double& max_unitarity) {
  const double step = rotor.step();
  std::vector<ComplexMatrix4> out(static_cast<std::size_t>(rotor.steps_per_period));
  for (int j = 0; j < rotor.steps_per_period; ++j) {
    auto& u = out[static_cast<std::size_t>(j)];
    u = matrix_exponential(step_hamiltonian(j * step, step, i_ch, s_ch, mod, ops), step);
    max_unitarity = std::max(max_unitarity, unitarity_error(u));
  }
  return out;
}

}  // namespace

BuildupCurve simulate_crystallite(const SequenceConfig& cfg, const CrystalliteOrientation& orient,
                                  const DipoleCoupling& coupling) {
  cfg.validate();
  const SpinOperatorSet& ops = spin_operators();
  const TiltedFrame i_frame = tilt(cfg.i_channel);
  const TiltedFrame s_frame = tilt(cfg.s_channel);
  const ComplexMatrix4 rho0 = initial_state(i_frame, ops);
  const ComplexMatrix4 det = detect_operator(s_frame, ops);

  const double step = cfg.rotor.step();
  const DwellGrid grid = commensurate_dwell(cfg.dwell_s, step);

  BuildupCurve curve;
  if (grid.adjusted) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "dwell " << cfg.dwell_s << " s is not a multiple of the " << step
        << " s propagation step; using " << grid.dwell_s << " s";
    curve.warnings.push_back(msg.str());
  }

  const MASModulation mod = mas_coefficients(coupling, orient, cfg.rotor);
  const auto spp = static_cast<std::size_t>(cfg.rotor.steps_per_period);
  const auto forward =
      period_propagators(cfg.i_channel, cfg.s_channel, mod, cfg.rotor, ops, curve.max_unitarity_error);

  // FSLG: offset sign and rf phase flip after every full 2*pi turn about the
  // I effective field. The toggle is not rotor-periodic, so dwell
  // propagators are rebuilt every time in that mode.
  const bool fslg = cfg.lg_mode == LgMode::FslgToggled;
  std::vector<ComplexMatrix4> toggled;
  if (fslg) {
    const ChannelSettings flipped{-cfg.i_channel.nutation_hz, -cfg.i_channel.offset_hz};
    toggled = period_propagators(flipped, cfg.s_channel, mod, cfg.rotor, ops, curve.max_unitarity_error);
  }

  // A dwell starting at step s within the rotor period always has the same
  // propagator in constant-offset mode.
  std::vector<ComplexMatrix4> dwell_cache(fslg ? 0 : spp);
  std::vector<bool> cached(fslg ? 0 : spp, false);
  auto dwell_propagator = [&](std::size_t first_step) {
    const std::size_t phase = first_step % spp;
    if (!fslg && cached[phase]) return dwell_cache[phase];
    ComplexMatrix4 u = ComplexMatrix4::Identity();
    for (std::size_t s = 0; s < static_cast<std::size_t>(grid.steps_per_dwell); ++s) {
      const std::size_t g = first_step + s;
      bool flip = false;
      if (fslg) {
        const double t_mid = (static_cast<double>(g) + 0.5) * step;
        flip = static_cast<long long>(std::floor(t_mid * i_frame.omega_eff_hz)) % 2 == 1;
      }
      u = (flip ? toggled[g % spp] : forward[g % spp]) * u;
    }
    // One Newton-Schulz step toward the nearest unitary removes the rounding
    // collected over the product.
    u = u * (1.5 * ComplexMatrix4::Identity() - 0.5 * u.adjoint() * u);
    curve.max_unitarity_error = std::max(curve.max_unitarity_error, unitarity_error(u));
    if (!fslg) {
      dwell_cache[phase] = u;
      cached[phase] = true;
    }
    return u;
  };

  const std::size_t n = static_cast<std::size_t>(cfg.n_points);
  curve.times_s.resize(n);
  curve.signal.resize(n);

  const double trace0 = rho0.trace().real();
  ComplexMatrix4 rho = rho0;
  for (std::size_t k = 0; k < n; ++k) {
    curve.times_s[k] = static_cast<double>(k) * grid.dwell_s;
    curve.signal[k] = expectation(rho, det);
    curve.max_trace_drift = std::max(curve.max_trace_drift, std::abs(rho.trace().real() - trace0));
    if (k + 1 == n) break;
    rho = evolve(rho, dwell_propagator(k * static_cast<std::size_t>(grid.steps_per_dwell)));
  }
  return curve;
}

}  // namespace lgcp
