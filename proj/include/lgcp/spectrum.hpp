// Dipolar spectra from buildup curves, peak picking and scale factors.

#ifndef LGCP_SPECTRUM_HPP
#define LGCP_SPECTRUM_HPP

#include "lgcp/engine.hpp"
#include "lgcp/mas_hamiltonian.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace lgcp {

enum class Apodization { None, Cosine };

std::string_view to_string(Apodization a);
Apodization parse_apodization(std::string_view text);

struct SpectrumOptions {
  int zero_fill = 8;
  Apodization apodization = Apodization::None;
  bool subtract_mean = true;
};

/// Two-sided magnitude spectrum on an ascending grid, f_j = (j - M/2) / (M dwell)
/// with M = n_raw * zero_fill. amps are unnormalized |DFT| values.
struct DipolarSpectrum {
  std::vector<double> freqs_hz;
  std::vector<double> amps;
  std::size_t n_raw = 0;
  int zero_fill = 1;
  double dwell_s = 0.0;

  /// 1 / (n_raw * dwell): resolution of the recorded curve before zero fill.
  double raw_bin_hz() const { return 1.0 / (static_cast<double>(n_raw) * dwell_s); }
  /// Spacing of the zero-filled grid.
  double bin_hz() const { return raw_bin_hz() / zero_fill; }
};

/// Mean subtraction (optional), apodization, zero fill, DFT, magnitude.
/// Throws std::invalid_argument for a non-uniform or too-short time grid or
/// zero_fill < 1.
DipolarSpectrum to_spectrum(const BuildupCurve& curve, const SpectrumOptions& opts = {});

struct Peak {
  double freq_hz = 0.0;
  double amp = 0.0;
};

/// Three-point parabolic vertex through (-1, a), (0, b), (1, c):
/// returns the fractional offset in [-0.5, 0.5] and the interpolated height.
Peak parabolic_vertex(double a, double b, double c);

/// Local maxima above min_rel_height * global max, refined by parabolic
/// interpolation, sorted by amplitude (descending).
std::vector<Peak> pick_peaks(const DipolarSpectrum& spec, double min_rel_height);

struct MeasureOptions {
  int guard_bins = 2;                    // raw bins excluded around DC
  double min_oscillation_amplitude = 0.01;  // in units of the initial I polarization
};

/// Observed dipolar coupling taken from the dominant doublet: the splitting
/// between the strongest positive-frequency peak (outside the DC guard band)
/// and its mirror at negative frequency.
struct ScaleFactorResult {
  double observed_hz = 0.0;     // doublet splitting
  double true_delta_hz = 0.0;   // delta from the internuclear distance
  double k = 0.0;               // observed / true_delta
  double peak_freq_hz = 0.0;    // dominant positive-frequency peak
  double mirror_freq_hz = 0.0;  // matching negative-frequency peak
  double peak_amp = 0.0;
  double oscillation_amplitude = 0.0;  // 2 * peak_amp / n_raw
  double uncertainty = 0.0;            // half a raw bin / true_delta
  bool transfer_detected = false;
};

/// Throws std::invalid_argument when the coupling is zero. When the dominant
/// oscillation is weaker than min_oscillation_amplitude the result is
/// returned with transfer_detected = false.
ScaleFactorResult measure_scale_factor(const DipolarSpectrum& spec, const DipoleCoupling& coupling,
                                       const MeasureOptions& opts = {});

}  // namespace lgcp

#endif  // LGCP_SPECTRUM_HPP
