#include "lgcp/powder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lgcp {

namespace {

// Index m of the Fibonacci number F_m == n (F_1 = F_2 = 1), or -1.
int fibonacci_index(int n) {
  long long a = 1, b = 1;
  int m = 2;
  while (b < n) {
    const long long c = a + b;
    a = b;
    b = c;
    ++m;
  }
  return b == n ? m : -1;
}

long long fibonacci(int m) {
  long long a = 1, b = 1;
  for (int k = 2; k < m; ++k) {
    const long long c = a + b;
    a = b;
    b = c;
  }
  return m <= 2 ? 1 : b;
}

}  // namespace

PowderScheme PowderScheme::single_crystal(double beta, double gamma) {
  return {PowderKind::SingleCrystal, 1, beta, gamma};
}

PowderScheme PowderScheme::golden_spiral(int count) {
  if (count < 1) throw std::invalid_argument("golden spiral: count must be >= 1");
  return {PowderKind::GoldenSpiral, count, 0.0, 0.0};
}

PowderScheme PowderScheme::zcw(int count) {
  if (count < 2 || fibonacci_index(count) < 0)
    throw std::invalid_argument("zcw: count must be a Fibonacci number >= 2 (e.g. 144, 233, 377, 610, 987)");
  return {PowderKind::Zcw, count, 0.0, 0.0};
}

std::vector<CrystalliteOrientation> orientations(const PowderScheme& scheme) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<CrystalliteOrientation> out;
  switch (scheme.kind) {
    case PowderKind::SingleCrystal:
      out.push_back({0.0, scheme.beta, scheme.gamma, 1.0});
      break;
    case PowderKind::GoldenSpiral: {
      const int n = scheme.count;
      if (n < 1) throw std::invalid_argument("golden spiral: count must be >= 1");
      const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
      out.reserve(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double g = std::fmod(k * golden_angle, two_pi);
        out.push_back({0.0, std::acos(z), g, 1.0 / n});
      }
      break;
    }
    case PowderKind::Zcw: {
      const int n = scheme.count;
      const int m = fibonacci_index(n);
      if (n < 2 || m < 0) throw std::invalid_argument("zcw: count must be a Fibonacci number >= 2");
      const long long gen = fibonacci(m - 2);
      out.reserve(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        const double frac_b = static_cast<double>(j) / n;
        const double frac_g = static_cast<double>((j * gen) % n) / n;
        out.push_back({0.0, std::acos(2.0 * frac_b - 1.0), two_pi * frac_g, 1.0 / n});
      }
      break;
    }
  }
  return out;
}

BuildupCurve powder_average(const SequenceConfig& cfg, const DipoleCoupling& coupling,
                            const PowderScheme& scheme, unsigned threads) {
  cfg.validate();
  const auto orients = orientations(scheme);
  std::vector<BuildupCurve> curves(orients.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < orients.size();) {
      try {
        curves[k] = simulate_crystallite(cfg, orients[k], coupling);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(orients.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  BuildupCurve avg;
  avg.times_s = curves.front().times_s;
  avg.warnings = curves.front().warnings;
  avg.signal.assign(avg.times_s.size(), 0.0);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const double w = orients[k].weight;
    for (std::size_t i = 0; i < avg.signal.size(); ++i) avg.signal[i] += w * curves[k].signal[i];
    avg.max_unitarity_error = std::max(avg.max_unitarity_error, curves[k].max_unitarity_error);
    avg.max_trace_drift = std::max(avg.max_trace_drift, curves[k].max_trace_drift);
  }
  return avg;
}

}  // namespace lgcp
