// Analytic tilted-frame quantities for a heteronuclear pair under two
// simultaneous rf fields: tilt angles, effective fields, sum/difference
// frequencies, rotor-sideband matching and the zero-quantum peak estimate.

#ifndef LGCP_FRAME_ANALYSIS_HPP
#define LGCP_FRAME_ANALYSIS_HPP

#include <string_view>
#include <vector>

namespace lgcp {

/// arctan(sqrt(2)) in radians.
inline constexpr double kMagicAngle = 0.95531661812450927816;

inline constexpr double kDefaultSurvivalToleranceHz = 100.0;

/// One rf channel in the rotating frame. Both quantities in Hz.
struct ChannelSettings {
  double nutation_hz = 0.0;  // rf field strength, >= 0
  double offset_hz = 0.0;    // resonance offset, signed
};

struct TiltedFrame {
  double theta = 0.0;         // angle of the effective field from B0, [0, pi]
  double omega_eff_hz = 0.0;  // effective field magnitude
};

/// Throws std::invalid_argument when nutation < 0 or both components are 0.
TiltedFrame tilt(const ChannelSettings& ch);

struct SumDiff {
  double sigma_eff_hz = 0.0;  // w_I,eff + w_S,eff
  double delta_eff_hz = 0.0;  // w_I,eff - w_S,eff (signed)
};

SumDiff sum_diff(const TiltedFrame& i, const TiltedFrame& s);

enum class TermFamily { DoubleQuantum, ZeroQuantum, ISingleSpin, SSingleSpin };

std::string_view to_string(TermFamily t);

struct ResonanceEntry {
  TermFamily term = TermFamily::ZeroQuantum;
  double exponent_hz = 0.0;  // frequency in the exponent that matched best (sign included)
  int n = 0;                 // rotor sideband index in -2..2
  double mismatch_hz = 0.0;  // exponent_hz - n * rotor
  bool surviving = false;    // |mismatch| <= tolerance
};

/// One entry per term family, in the order DQ, ZQ, I, S.
struct ResonanceReport {
  double rotor_hz = 0.0;
  double tolerance_hz = 0.0;
  std::vector<ResonanceEntry> entries;

  std::vector<ResonanceEntry> surviving() const;
  const ResonanceEntry& entry(TermFamily t) const;
};

/// A term survives the rotor-period integral when its exponent frequency
/// sits within `tolerance_hz` of n * rotor for some n in -2..2.
/// Throws std::invalid_argument for rotor_hz <= 0 or tolerance_hz < 0.
ResonanceReport term_survival(const TiltedFrame& i, const TiltedFrame& s, double rotor_hz,
                              double tolerance_hz = kDefaultSurvivalToleranceHz);

struct ScaleProducts {
  double zq_dq = 0.0;   // sin(theta_I) sin(theta_S)
  double i_flip = 0.0;  // sin(theta_I) cos(theta_S)
  double s_flip = 0.0;  // cos(theta_I) sin(theta_S)
};

ScaleProducts scale_products(const TiltedFrame& i, const TiltedFrame& s);

/// q = 1/2 * sqrt((w_I,eff + w_S,eff)^2 + (delta/2 * sin(theta_I) sin(theta_S))^2)
///
/// Evaluated exactly as written with the effective-field SUM. Only meaningful
/// when at least one channel is on resonance; the caller checks that.
double predict_zq_peak(double delta_hz, const TiltedFrame& i, const TiltedFrame& s);

/// Same expression with the effective-field difference w_I,eff - w_S,eff in
/// place of the sum. Kept alongside the printed form for comparison against
/// simulated spectra.
double predict_zq_peak_difference(double delta_hz, const TiltedFrame& i, const TiltedFrame& s);

}  // namespace lgcp

#endif  // LGCP_FRAME_ANALYSIS_HPP
