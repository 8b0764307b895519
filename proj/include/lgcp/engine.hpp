// Lee-Goldburg cross-polarization contact for one crystallite: spin-locked
// I polarization is propagated under the MAS Hamiltonian and the transfer
// to S is read out along the S spin-lock axis at each contact time.

#ifndef LGCP_ENGINE_HPP
#define LGCP_ENGINE_HPP

#include "lgcp/frame_analysis.hpp"
#include "lgcp/mas_hamiltonian.hpp"
#include "lgcp/spin_core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lgcp {

enum class LgMode { ConstantOffset, FslgToggled };

std::string_view to_string(LgMode mode);
/// Accepts "constant-offset" and "fslg-toggled".
LgMode parse_lg_mode(std::string_view text);

struct SequenceConfig {
  ChannelSettings i_channel;  // abundant spin (1H), carries the LG offset
  ChannelSettings s_channel;  // observed spin (15N)
  RotorConfig rotor;
  int n_points = 128;
  double dwell_s = 30e-6;
  LgMode lg_mode = LgMode::ConstantOffset;

  void validate() const;
};

struct BuildupCurve {
  std::vector<double> times_s;
  std::vector<double> signal;  // S polarization, unit = initial I polarization
  std::vector<std::string> warnings;
  double max_unitarity_error = 0.0;  // over every step and dwell propagator
  double max_trace_drift = 0.0;      // |tr(rho(t)) - tr(rho(0))|
};

/// sin(theta) Ix + cos(theta) Iz
ComplexMatrix4 initial_state(const TiltedFrame& i_frame, const SpinOperatorSet& ops);

/// sin(theta) Sx + cos(theta) Sz
ComplexMatrix4 detect_operator(const TiltedFrame& s_frame, const SpinOperatorSet& ops);

/// Number of propagation steps per dwell, and the dwell actually used.
struct DwellGrid {
  int steps_per_dwell = 0;
  double dwell_s = 0.0;
  bool adjusted = false;
};

DwellGrid commensurate_dwell(double dwell_s, double step_s);

/// Average Hamiltonian of one step [t0, t0 + dt] to fourth order (two-point
/// Gauss-Legendre Magnus expansion):
///   H = (H1 + H2) / 2 - i 2 pi (sqrt3 / 12) dt [H2, H1],
///   H1,2 = H(t0 + dt (1/2 -+ sqrt3/6)).
/// exp(-i 2 pi H dt) is the step propagator.
ComplexMatrix4 step_hamiltonian(double t0, double dt, const ChannelSettings& i_ch, const ChannelSettings& s_ch,
                                const MASModulation& mod, const SpinOperatorSet& ops);

/// Step = rotor period / steps_per_period, one step_hamiltonian() propagator
/// per step. If the dwell is not a whole number of steps it is rounded to the
/// nearest one and a warning is recorded in the returned curve.
BuildupCurve simulate_crystallite(const SequenceConfig& cfg, const CrystalliteOrientation& orient,
                                  const DipoleCoupling& coupling);

}  // namespace lgcp

#endif  // LGCP_ENGINE_HPP
