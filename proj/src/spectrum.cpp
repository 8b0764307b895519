#include "lgcp/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lgcp {

std::string_view to_string(Apodization a) {
  switch (a) {
    case Apodization::None: return "none";
    case Apodization::Cosine: return "cosine";
  }
  return "?";
}

Apodization parse_apodization(std::string_view text) {
  if (text == "none") return Apodization::None;
  if (text == "cosine") return Apodization::Cosine;
  throw std::invalid_argument("unknown apodization '" + std::string(text) + "'");
}

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

std::vector<std::complex<double>> forward_dft(const std::vector<double>& input) {
  const int n = static_cast<int>(input.size());
  std::unique_ptr<fftw_complex[], FftwFree> in(fftw_alloc_complex(input.size()));
  std::unique_ptr<fftw_complex[], FftwFree> out(fftw_alloc_complex(input.size()));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (int i = 0; i < n; ++i) {
    in[i][0] = input[static_cast<std::size_t>(i)];
    in[i][1] = 0.0;
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> result(input.size());
  for (int i = 0; i < n; ++i) result[static_cast<std::size_t>(i)] = {out[i][0], out[i][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return result;
}

}  // namespace

DipolarSpectrum to_spectrum(const BuildupCurve& curve, const SpectrumOptions& opts) {
  const std::size_t n = curve.signal.size();
  if (n < 2 || curve.times_s.size() != n) throw std::invalid_argument("to_spectrum: need at least two samples");
  if (opts.zero_fill < 1) throw std::invalid_argument("to_spectrum: zero_fill must be >= 1");
  const double dwell = curve.times_s[1] - curve.times_s[0];
  if (!(dwell > 0.0)) throw std::invalid_argument("to_spectrum: time grid must be increasing");
  for (std::size_t k = 1; k < n; ++k) {
    const double expected = curve.times_s[0] + static_cast<double>(k) * dwell;
    if (std::abs(curve.times_s[k] - expected) > 1e-9 * dwell * static_cast<double>(k + 1))
      throw std::invalid_argument("to_spectrum: time grid is not uniform");
  }

  std::vector<double> x(curve.signal);
  if (opts.subtract_mean) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : x) v -= mean;
  }
  if (opts.apodization == Apodization::Cosine) {
    for (std::size_t k = 0; k < n; ++k)
      x[k] *= std::cos(0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  const std::size_t m = n * static_cast<std::size_t>(opts.zero_fill);
  x.resize(m, 0.0);
  const auto dft = forward_dft(x);

  DipolarSpectrum spec;
  spec.n_raw = n;
  spec.zero_fill = opts.zero_fill;
  spec.dwell_s = dwell;
  spec.freqs_hz.resize(m);
  spec.amps.resize(m);
  const std::size_t half = m / 2;
  const double df = 1.0 / (static_cast<double>(m) * dwell);
  for (std::size_t j = 0; j < m; ++j) {
    // ascending grid: j = 0 holds -M/2, j = M/2 holds DC
    const std::size_t src = (j + m - half) % m;
    spec.freqs_hz[j] = (static_cast<double>(j) - static_cast<double>(half)) * df;
    spec.amps[j] = std::abs(dft[src]);
  }
  return spec;
}

Peak parabolic_vertex(double a, double b, double c) {
  const double denom = a - 2.0 * b + c;
  if (denom == 0.0) return {0.0, b};
  const double p = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  return {p, b - 0.25 * (a - c) * p};
}

namespace {

Peak refine(const DipolarSpectrum& spec, std::size_t j) {
  const std::size_t m = spec.amps.size();
  if (j == 0 || j + 1 >= m) return {spec.freqs_hz[j], spec.amps[j]};
  const Peak v = parabolic_vertex(spec.amps[j - 1], spec.amps[j], spec.amps[j + 1]);
  return {spec.freqs_hz[j] + v.freq_hz * spec.bin_hz(), v.amp};
}

bool is_local_max(const std::vector<double>& a, std::size_t j) {
  return j > 0 && j + 1 < a.size() && a[j] > a[j - 1] && a[j] >= a[j + 1];
}

}  // namespace

std::vector<Peak> pick_peaks(const DipolarSpectrum& spec, double min_rel_height) {
  if (!(min_rel_height > 0.0 && min_rel_height <= 1.0))
    throw std::invalid_argument("pick_peaks: min_rel_height must be in (0, 1]");
  std::vector<Peak> peaks;
  if (spec.amps.empty()) return peaks;
  const double top = *std::max_element(spec.amps.begin(), spec.amps.end());
  if (!(top > 0.0)) return peaks;
  const double threshold = min_rel_height * top;
  for (std::size_t j = 1; j + 1 < spec.amps.size(); ++j)
    if (spec.amps[j] >= threshold && is_local_max(spec.amps, j)) peaks.push_back(refine(spec, j));
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& x, const Peak& y) { return x.amp > y.amp; });
  return peaks;
}

ScaleFactorResult measure_scale_factor(const DipolarSpectrum& spec, const DipoleCoupling& coupling,
                                       const MeasureOptions& opts) {
  if (coupling.delta_hz == 0.0) throw std::invalid_argument("measure_scale_factor: coupling is zero");
  ScaleFactorResult res;
  res.true_delta_hz = std::abs(coupling.delta_hz);
  res.uncertainty = 0.5 * spec.raw_bin_hz() / res.true_delta_hz;

  const std::size_t m = spec.amps.size();
  const std::size_t half = m / 2;
  const std::size_t first = half + static_cast<std::size_t>(opts.guard_bins) * static_cast<std::size_t>(spec.zero_fill) + 1;
  std::size_t best = 0;
  for (std::size_t j = first; j + 1 < m; ++j)
    if (is_local_max(spec.amps, j) && (best == 0 || spec.amps[j] > spec.amps[best])) best = j;
  if (best == 0) return res;

  const Peak pos = refine(spec, best);
  // mirror bin of +f is M - j on the ascending grid
  std::size_t mirror = m - best;
  for (std::size_t j : {mirror - 1, mirror + 1})
    if (j > 0 && j + 1 < m && spec.amps[j] > spec.amps[mirror]) mirror = j;
  const Peak neg = refine(spec, mirror);

  res.peak_freq_hz = pos.freq_hz;
  res.mirror_freq_hz = neg.freq_hz;
  res.peak_amp = pos.amp;
  res.oscillation_amplitude = 2.0 * pos.amp / static_cast<double>(spec.n_raw);
  res.observed_hz = pos.freq_hz - neg.freq_hz;
  res.k = res.observed_hz / res.true_delta_hz;
  res.transfer_detected = res.oscillation_amplitude >= opts.min_oscillation_amplitude;
  return res;
}

}  // namespace lgcp
