#include "lgcp/engine.hpp"
#include "lgcp/powder.hpp"
#include "lgcp/spectrum.hpp"
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lgcp;

namespace {

SequenceConfig experiment_a() {
  SequenceConfig cfg;
  cfg.i_channel = {50.00e3, 36.451e3};
  cfg.s_channel = {53.05e3, 0.0};
  cfg.rotor = {10e3, 200};
  cfg.n_points = 128;
  cfg.dwell_s = 30e-6;
  return cfg;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Step-by-step propagation with the closed-form coupling evaluated at every
// midpoint and the Taylor exponential; shares nothing with the engine's
// cached-propagator path.
std::vector<double> brute_force_curve(const SequenceConfig& cfg, double beta, double gamma, double delta,
                                      int steps_per_period) {
  const auto& ops = spin_operators();
  const double thi = std::atan2(cfg.i_channel.nutation_hz, cfg.i_channel.offset_hz);
  const double ths = std::atan2(cfg.s_channel.nutation_hz, cfg.s_channel.offset_hz);
  ComplexMatrix4 rho = std::sin(thi) * ops.ix + std::cos(thi) * ops.iz;
  const ComplexMatrix4 det = std::sin(ths) * ops.sx + std::cos(ths) * ops.sz;
  const double step = 1.0 / cfg.rotor.omega_r_hz / steps_per_period;
  const long steps_per_dwell = std::lround(cfg.dwell_s / step);
  std::vector<double> out;
  long global = 0;
  for (int k = 0; k < cfg.n_points; ++k) {
    out.push_back((rho * det).trace().real());
    for (long s = 0; s < steps_per_dwell; ++s, ++global) {
      const double t = (global + 0.5) * step;
      const double d = mas_coupling_closed_form(delta, beta, gamma, cfg.rotor.omega_r_hz, t);
      const auto h = oracle::hand_hamiltonian(cfg.i_channel.offset_hz, cfg.i_channel.nutation_hz,
                                              cfg.s_channel.offset_hz, cfg.s_channel.nutation_hz, d);
      const auto u = oracle::taylor_expm(h, step);
      rho = u * rho * u.adjoint();
    }
  }
  return out;
}

}  // namespace

TEST(InitialState, OnResonanceLock) {
  const auto& ops = spin_operators();
  EXPECT_LT((initial_state({std::numbers::pi / 2, 1.0}, ops) - ops.ix).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(InitialState, MagicAngleComponents) {
  const auto& ops = spin_operators();
  const auto rho = initial_state({kMagicAngle, 1.0}, ops);
  EXPECT_NEAR(expectation(rho, ops.ix) / expectation(ops.ix, ops.ix), 0.8165, 1e-4);
  EXPECT_NEAR(expectation(rho, ops.iz) / expectation(ops.iz, ops.iz), 0.5774, 1e-4);
  EXPECT_NEAR(rho.trace().real(), 0.0, 1e-16);
}

TEST(InitialState, UnitPolarizationAlongEffectiveField) {
  const auto& ops = spin_operators();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = th(rng);
    const ComplexMatrix4 axis = std::sin(t) * ops.ix + std::cos(t) * ops.iz;
    EXPECT_NEAR(expectation(initial_state({t, 1.0}, ops), axis), 1.0, 1e-14);
  }
}

TEST(DetectOperator, LimitsAndOrthogonality) {
  const auto& ops = spin_operators();
  EXPECT_LT((detect_operator({std::numbers::pi / 2, 1.0}, ops) - ops.sx).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_LT((detect_operator({0.0, 1.0}, ops) - ops.sz).cwiseAbs().maxCoeff(), 1e-16);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = detect_operator({th(rng), 1.0}, ops);
    EXPECT_NEAR(expectation(initial_state({th(rng), 1.0}, ops), d), 0.0, 1e-15);
    EXPECT_NEAR(expectation(d, d), 1.0, 1e-14);
  }
}

TEST(StepHamiltonian, ConstantFieldsGiveTheInstantaneousHamiltonian) {
  const MASModulation none{10e3, {}};
  const ChannelSettings i{50e3, 36.451e3}, s{53.05e3, 0.0};
  const auto h = step_hamiltonian(1e-6, 0.5e-6, i, s, none, spin_operators());
  EXPECT_LT((h - hamiltonian_at(0.0, i, s, none, spin_operators())).cwiseAbs().maxCoeff(), 1e-9);
}

// Local error of a fourth-order step scales as dt^5: halving the step cuts
// it about 32x, against 8x for the midpoint rule. Reference: 1000-substep
// Taylor product over the same interval.
TEST(StepHamiltonian, FourthOrderLocalError) {
  const auto& ops = spin_operators();
  const ChannelSettings i{50e3, 36.451e3}, s{53.05e3, 0.0};
  const auto m = mas_coefficients(coupling_from_distance(1.04), {0.0, 0.9, 0.4, 1.0}, {10e3, 200});
  const double t0 = 7e-6;
  auto errors = [&](double dt) {
    ComplexMatrix4 ref = ComplexMatrix4::Identity();
    const int sub = 1000;
    for (int j = 0; j < sub; ++j)
      ref = oracle::taylor_expm(hamiltonian_at(t0 + (j + 0.5) * dt / sub, i, s, m, ops), dt / sub) * ref;
    const auto magnus = matrix_exponential(step_hamiltonian(t0, dt, i, s, m, ops), dt);
    const auto midpoint = matrix_exponential(hamiltonian_at(t0 + 0.5 * dt, i, s, m, ops), dt);
    return std::pair{(magnus - ref).cwiseAbs().maxCoeff(), (midpoint - ref).cwiseAbs().maxCoeff()};
  };
  const auto [m1, p1] = errors(2e-6);
  const auto [m2, p2] = errors(1e-6);
  EXPECT_LT(m1, 0.1 * p1);
  EXPECT_GT(m1 / m2, 24.0);
  EXPECT_LT(p1 / p2, 12.0);
  EXPECT_LT(hermiticity_error(step_hamiltonian(t0, 2e-6, i, s, m, ops)), 1e-12);
}

TEST(SimulateCrystallite, ZeroCouplingTransfersNothing) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> nut(5e3, 90e3), off(-60e3, 60e3), ang(0.0, 3.0);
  DipoleCoupling none = coupling_from_distance(1.04);
  none.delta_hz = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    SequenceConfig cfg = experiment_a();
    cfg.i_channel = {nut(rng), off(rng)};
    cfg.s_channel = {nut(rng), off(rng)};
    const auto curve = simulate_crystallite(cfg, {0.0, ang(rng), ang(rng), 1.0}, none);
    EXPECT_LT(max_abs(curve.signal), 1e-10);
  }
}

TEST(SimulateCrystallite, AxialCrystalliteIsFlat) {
  SequenceConfig cfg = experiment_a();
  cfg.rotor.omega_r_hz = 100e3;
  const auto curve = simulate_crystallite(cfg, {0.0, 0.0, 0.0, 1.0}, coupling_from_distance(1.04));
  EXPECT_LT(max_abs(curve.signal), 1e-10);
}

TEST(SimulateCrystallite, StartsAtZeroAndStaysBounded) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> nut(5e3, 90e3), off(-60e3, 60e3), ang(0.0, 3.0);
  const auto c = coupling_from_distance(1.04);
  for (int trial = 0; trial < 20; ++trial) {
    SequenceConfig cfg = experiment_a();
    cfg.i_channel = {nut(rng), off(rng)};
    cfg.s_channel = {nut(rng), off(rng)};
    const auto curve = simulate_crystallite(cfg, {0.0, ang(rng), 2.0 * ang(rng), 1.0}, c);
    EXPECT_NEAR(curve.signal[0], 0.0, 1e-12);
    EXPECT_LE(max_abs(curve.signal), 1.0 + 1e-9);
    EXPECT_LT(curve.max_unitarity_error, 1e-10);
    EXPECT_LT(curve.max_trace_drift, 1e-12);
  }
}

TEST(SimulateCrystallite, TimesFollowDwell) {
  const auto curve = simulate_crystallite(experiment_a(), {0.0, 1.0, 0.0, 1.0}, coupling_from_distance(1.04));
  ASSERT_EQ(curve.times_s.size(), 128u);
  EXPECT_DOUBLE_EQ(curve.times_s[0], 0.0);
  EXPECT_NEAR(curve.times_s[127], 127 * 30e-6, 1e-15);
  EXPECT_TRUE(curve.warnings.empty());
}

TEST(SimulateCrystallite, IncommensurateDwellIsAdjustedWithWarning) {
  SequenceConfig cfg = experiment_a();
  cfg.dwell_s = 30.2e-6;  // 60.4 steps of 0.5 us
  const auto curve = simulate_crystallite(cfg, {0.0, 1.0, 0.0, 1.0}, coupling_from_distance(1.04));
  ASSERT_EQ(curve.warnings.size(), 1u);
  EXPECT_NEAR(curve.times_s[1], 30e-6, 1e-15);
  const auto grid = commensurate_dwell(30.2e-6, 0.5e-6);
  EXPECT_EQ(grid.steps_per_dwell, 60);
  EXPECT_TRUE(grid.adjusted);
  EXPECT_FALSE(commensurate_dwell(30e-6, 0.5e-6).adjusted);
}

TEST(SimulateCrystallite, RejectsInvalidConfig) {
  SequenceConfig cfg = experiment_a();
  cfg.n_points = 1;
  EXPECT_THROW(simulate_crystallite(cfg, {}, coupling_from_distance(1.04)), std::invalid_argument);
  cfg = experiment_a();
  cfg.dwell_s = 0.0;
  EXPECT_THROW(simulate_crystallite(cfg, {}, coupling_from_distance(1.04)), std::invalid_argument);
  cfg = experiment_a();
  cfg.s_channel = {0.0, 0.0};
  EXPECT_THROW(simulate_crystallite(cfg, {}, coupling_from_distance(1.04)), std::invalid_argument);
}

// On-resonance n = 1 Hartmann-Hahn match, compared with a 100x finer
// midpoint brute-force propagation (its own error is ~1e-7 here).
TEST(SimulateCrystallite, SidebandMatchAgreesWithFineBruteForce) {
  SequenceConfig cfg;
  cfg.i_channel = {60e3, 0.0};
  cfg.s_channel = {50e3, 0.0};
  cfg.rotor = {10e3, 200};
  cfg.n_points = 128;
  cfg.dwell_s = 30e-6;
  const auto c = coupling_from_distance(1.04);
  const double beta = 0.9, gamma = 0.4;
  const auto curve = simulate_crystallite(cfg, {0.0, beta, gamma, 1.0}, c);
  const auto fine = brute_force_curve(cfg, beta, gamma, c.delta_hz, 20000);
  double worst = 0.0;
  for (std::size_t k = 0; k < fine.size(); ++k) worst = std::max(worst, std::abs(curve.signal[k] - fine[k]));
  EXPECT_LT(worst, 1e-5);

  BuildupCurve fine_curve = curve;
  fine_curve.signal = fine;
  const auto s1 = to_spectrum(curve), s2 = to_spectrum(fine_curve);
  const auto p1 = pick_peaks(s1, 0.5), p2 = pick_peaks(s2, 0.5);
  ASSERT_FALSE(p1.empty());
  ASSERT_FALSE(p2.empty());
  EXPECT_NEAR(std::abs(p1.front().freq_hz), std::abs(p2.front().freq_hz), 1.0);
  EXPECT_GT(max_abs(curve.signal), 0.3);  // matched condition transfers strongly
}

TEST(SimulateCrystallite, StepHalvingConvergence) {
  const auto c = coupling_from_distance(1.04);
  SequenceConfig coarse = experiment_a(), fine = experiment_a();
  fine.rotor.steps_per_period = 400;
  double worst = 0.0;
  for (const auto& o : orientations(PowderScheme::golden_spiral(20))) {
    const auto a = simulate_crystallite(coarse, o, c), b = simulate_crystallite(fine, o, c);
    for (std::size_t k = 0; k < a.signal.size(); ++k) worst = std::max(worst, std::abs(a.signal[k] - b.signal[k]));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(SimulateCrystallite, Deterministic) {
  const auto c = coupling_from_distance(1.04);
  const CrystalliteOrientation o{0.0, 1.2, 0.5, 1.0};
  EXPECT_EQ(simulate_crystallite(experiment_a(), o, c).signal, simulate_crystallite(experiment_a(), o, c).signal);
}

TEST(SimulateCrystallite, FslgModeIsBoundedAndNullWithoutCoupling) {
  SequenceConfig cfg = experiment_a();
  cfg.lg_mode = LgMode::FslgToggled;
  auto c = coupling_from_distance(1.04);
  const auto curve = simulate_crystallite(cfg, {0.0, 1.0, 0.3, 1.0}, c);
  EXPECT_LE(max_abs(curve.signal), 1.0 + 1e-9);
  EXPECT_LT(curve.max_unitarity_error, 1e-10);
  EXPECT_NE(curve.signal, simulate_crystallite(experiment_a(), {0.0, 1.0, 0.3, 1.0}, c).signal);
  c.delta_hz = 0.0;
  EXPECT_LT(max_abs(simulate_crystallite(cfg, {0.0, 1.0, 0.3, 1.0}, c).signal), 1e-10);
}

TEST(LgModeText, RoundTrip) {
  for (auto m : {LgMode::ConstantOffset, LgMode::FslgToggled}) EXPECT_EQ(parse_lg_mode(to_string(m)), m);
  EXPECT_THROW(parse_lg_mode("pulsed"), std::invalid_argument);
}

TEST(Powder, WeightsSumToOne) {
  for (const auto& scheme : {PowderScheme::golden_spiral(616), PowderScheme::golden_spiral(1),
                             PowderScheme::zcw(610), PowderScheme::zcw(144), PowderScheme::single_crystal(1.0, 2.0)}) {
    double sum = 0.0;
    for (const auto& o : orientations(scheme)) {
      EXPECT_GE(o.weight, 0.0);
      EXPECT_GE(o.beta, 0.0);
      EXPECT_LE(o.beta, std::numbers::pi);
      sum += o.weight;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Powder, ZcwRequiresFibonacciCount) {
  EXPECT_THROW(PowderScheme::zcw(600), std::invalid_argument);
  EXPECT_THROW(PowderScheme::zcw(1), std::invalid_argument);
  EXPECT_EQ(orientations(PowderScheme::zcw(233)).size(), 233u);
}

TEST(Powder, SingleCrystalMatchesCrystallite) {
  const auto c = coupling_from_distance(1.04);
  const auto avg = powder_average(experiment_a(), c, PowderScheme::single_crystal(0.8, 1.7));
  EXPECT_EQ(avg.signal, simulate_crystallite(experiment_a(), {0.0, 0.8, 1.7, 1.0}, c).signal);
}

TEST(Powder, OnePointSpiralIsACrystallite) {
  const auto c = coupling_from_distance(1.04);
  const auto avg = powder_average(experiment_a(), c, PowderScheme::golden_spiral(1));
  EXPECT_EQ(avg.signal, simulate_crystallite(experiment_a(), {0.0, std::numbers::pi / 2, 0.0, 1.0}, c).signal);
}

TEST(Powder, ThreadCountDoesNotChangeResult) {
  const auto c = coupling_from_distance(1.04);
  const auto scheme = PowderScheme::golden_spiral(50);
  const auto one = powder_average(experiment_a(), c, scheme, 1);
  const auto four = powder_average(experiment_a(), c, scheme, 4);
  EXPECT_EQ(one.signal, four.signal);
}

TEST(Powder, CouplingSignInvariance) {
  auto c = coupling_from_distance(1.04);
  const auto scheme = PowderScheme::golden_spiral(100);
  const auto plus = powder_average(experiment_a(), c, scheme);
  c.delta_hz = -c.delta_hz;
  const auto minus = powder_average(experiment_a(), c, scheme);
  for (std::size_t k = 0; k < plus.signal.size(); ++k) EXPECT_NEAR(plus.signal[k], minus.signal[k], 1e-9);
}

TEST(Powder, ScaleFactorConvergesWithOrientationCount) {
  const auto c = coupling_from_distance(1.04);
  const auto k376 = measure_scale_factor(to_spectrum(powder_average(experiment_a(), c, PowderScheme::golden_spiral(376))), c).k;
  const auto k752 = measure_scale_factor(to_spectrum(powder_average(experiment_a(), c, PowderScheme::golden_spiral(752))), c).k;
  EXPECT_LT(std::abs(k376 - k752), 0.005);
}
