// Rotating-frame Hamiltonian for one crystallite of a heteronuclear pair
// under magic-angle spinning.

#ifndef LGCP_MAS_HAMILTONIAN_HPP
#define LGCP_MAS_HAMILTONIAN_HPP

#include "lgcp/frame_analysis.hpp"
#include "lgcp/spin_core.hpp"

#include <array>
#include <complex>

namespace lgcp {

namespace constants {
inline constexpr double kMu0Over4Pi = 1e-7;              // T^2 m^3 J^-1
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kGammaH1 = 26.7522128e7;         // rad s^-1 T^-1
inline constexpr double kGammaN15 = -2.7126e7;           // rad s^-1 T^-1
}  // namespace constants

enum class IsotopePair { N15_H1 };

/// |gamma_I * gamma_S| for the pair, rad^2 s^-2 T^-2.
double gamma_product(IsotopePair pair);

struct DipoleCoupling {
  double distance_angstrom = 0.0;
  double delta_hz = 0.0;  // positive magnitude from coupling_from_distance()
  IsotopePair pair = IsotopePair::N15_H1;
};

/// delta = mu0/(4 pi) * |gamma_I gamma_S| * hbar / (2 pi r^3), in Hz.
/// Throws std::invalid_argument for r <= 0.
DipoleCoupling coupling_from_distance(double r_angstrom, IsotopePair pair = IsotopePair::N15_H1);

/// Euler angles of the internuclear vector in the rotor frame.
struct CrystalliteOrientation {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double weight = 1.0;
};

struct RotorConfig {
  double omega_r_hz = 10e3;
  int steps_per_period = 200;

  double period() const { return 1.0 / omega_r_hz; }
  double step() const { return period() / steps_per_period; }
  /// Throws std::invalid_argument when omega_r <= 0 or steps_per_period < 100.
  void validate() const;
};

/// d(t) = sum_{n=-2..2} c_n exp(i n 2 pi omega_r t); c_0 = 0, c_{-n} = conj(c_n).
struct MASModulation {
  double omega_r_hz = 0.0;
  std::array<std::complex<double>, 5> components{};  // index n + 2

  std::complex<double> component(int n) const { return components.at(static_cast<std::size_t>(n + 2)); }
  /// Real part of the Fourier sum at time t (seconds), Hz.
  double at(double t) const;
  /// Full complex Fourier sum; the imaginary part is rounding noise.
  std::complex<double> evaluate(double t) const;
};

/// Closed form of the secular heteronuclear coupling at the magic angle:
///   d(t) = -delta * [ (sqrt2/2) sin(2b) cos(wr t + g) - (1/2) sin^2(b) cos(2 (wr t + g)) ]
/// with wr = 2 pi omega_r. alpha does not enter for an axial coupling.
double mas_coupling_closed_form(double delta_hz, double beta, double gamma, double omega_r_hz, double t);

MASModulation mas_coefficients(const DipoleCoupling& coupling, const CrystalliteOrientation& orient,
                               const RotorConfig& rotor);

/// H(t) = Omega_I Iz + w1I Ix + Omega_S Sz + w1S Sx + d(t) 2IzSz, in Hz.
ComplexMatrix4 hamiltonian_at(double t, const ChannelSettings& i_ch, const ChannelSettings& s_ch,
                              const MASModulation& mod, const SpinOperatorSet& ops);

/// Same Hamiltonian with the dipolar amplitude supplied directly.
ComplexMatrix4 hamiltonian_with_coupling(double d_hz, const ChannelSettings& i_ch,
                                         const ChannelSettings& s_ch, const SpinOperatorSet& ops);

}  // namespace lgcp

#endif  // LGCP_MAS_HAMILTONIAN_HPP
