#include "lgcp/mas_hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgcp {

double gamma_product(IsotopePair pair) {
  switch (pair) {
    case IsotopePair::N15_H1: return std::abs(constants::kGammaH1 * constants::kGammaN15);
  }
  throw std::invalid_argument("gamma_product: unknown isotope pair");
}

DipoleCoupling coupling_from_distance(double r_angstrom, IsotopePair pair) {
  if (!(r_angstrom > 0.0)) throw std::invalid_argument("coupling_from_distance: distance must be > 0");
  const double r = r_angstrom * 1e-10;
  const double b_rad = constants::kMu0Over4Pi * gamma_product(pair) * constants::kHbar / (r * r * r);
  return {r_angstrom, b_rad / (2.0 * std::numbers::pi), pair};
}

void RotorConfig::validate() const {
  if (!(omega_r_hz > 0.0)) throw std::invalid_argument("rotor: spinning frequency must be > 0");
  if (steps_per_period < 100) throw std::invalid_argument("rotor: steps_per_period must be >= 100");
}

std::complex<double> MASModulation::evaluate(double t) const {
  std::complex<double> sum = 0.0;
  const double wt = 2.0 * std::numbers::pi * omega_r_hz * t;
  for (int n = -2; n <= 2; ++n) sum += component(n) * std::polar(1.0, n * wt);
  return sum;
}

double MASModulation::at(double t) const {
  // c_{-n} = conj(c_n) folds the sum into 2 Re(c_n e^{i n wt}) for n > 0.
  const double wt = 2.0 * std::numbers::pi * omega_r_hz * t;
  double sum = 0.0;
  for (int n = 1; n <= 2; ++n) sum += 2.0 * (component(n) * std::polar(1.0, n * wt)).real();
  return sum;
}

double mas_coupling_closed_form(double delta_hz, double beta, double gamma, double omega_r_hz, double t) {
  const double phase = 2.0 * std::numbers::pi * omega_r_hz * t + gamma;
  const double sb = std::sin(beta);
  return -delta_hz * (std::numbers::sqrt2 / 2.0 * std::sin(2.0 * beta) * std::cos(phase) -
                      0.5 * sb * sb * std::cos(2.0 * phase));
}

MASModulation mas_coefficients(const DipoleCoupling& coupling, const CrystalliteOrientation& orient,
                               const RotorConfig& rotor) {
  const double d = coupling.delta_hz;
  const double b = orient.beta, g = orient.gamma;
  const double sb = std::sin(b);
  MASModulation m;
  m.omega_r_hz = rotor.omega_r_hz;
  const auto c1 = -d * std::numbers::sqrt2 / 4.0 * std::sin(2.0 * b) * std::polar(1.0, g);
  const auto c2 = d * 0.25 * sb * sb * std::polar(1.0, 2.0 * g);
  m.components = {std::conj(c2), std::conj(c1), 0.0, c1, c2};
  return m;
}

ComplexMatrix4 hamiltonian_with_coupling(double d_hz, const ChannelSettings& i_ch,
                                         const ChannelSettings& s_ch, const SpinOperatorSet& ops) {
  return i_ch.offset_hz * ops.iz + i_ch.nutation_hz * ops.ix + s_ch.offset_hz * ops.sz +
         s_ch.nutation_hz * ops.sx + d_hz * ops.izsz;
}

ComplexMatrix4 hamiltonian_at(double t, const ChannelSettings& i_ch, const ChannelSettings& s_ch,
                              const MASModulation& mod, const SpinOperatorSet& ops) {
  return hamiltonian_with_coupling(mod.at(t), i_ch, s_ch, ops);
}

}  // namespace lgcp
