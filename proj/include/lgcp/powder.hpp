// Crystallite orientation sets and the powder-averaged buildup curve.

#ifndef LGCP_POWDER_HPP
#define LGCP_POWDER_HPP

#include "lgcp/engine.hpp"
#include "lgcp/mas_hamiltonian.hpp"

#include <vector>

namespace lgcp {

inline constexpr int kDefaultPowderCount = 616;

enum class PowderKind { SingleCrystal, GoldenSpiral, Zcw };

struct PowderScheme {
  PowderKind kind = PowderKind::GoldenSpiral;
  int count = kDefaultPowderCount;
  double beta = 0.0;   // single crystal only
  double gamma = 0.0;  // single crystal only

  static PowderScheme single_crystal(double beta, double gamma);
  static PowderScheme golden_spiral(int count);
  /// count must be a Fibonacci number >= 2.
  static PowderScheme zcw(int count);
};

/// Orientations with weights summing to 1. Golden spiral: beta_k =
/// acos(1 - (2k+1)/N), gamma_k = k * golden angle (mod 2 pi). ZCW: the
/// full-sphere two-angle set for N = F_m with generator F_{m-2}.
std::vector<CrystalliteOrientation> orientations(const PowderScheme& scheme);

/// Weighted sum of crystallite curves. Crystallites are distributed over
/// `threads` workers; the sum itself always runs in crystallite index order,
/// so the result is bit-identical for any thread count.
BuildupCurve powder_average(const SequenceConfig& cfg, const DipoleCoupling& coupling,
                            const PowderScheme& scheme, unsigned threads = 1);

}  // namespace lgcp

#endif  // LGCP_POWDER_HPP
