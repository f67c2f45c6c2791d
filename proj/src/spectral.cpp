#include "efield/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "efield/error.hpp"
#include "efield/waves.hpp"

namespace efield::spectral {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

}  // namespace

void fourier_noise_filter(const espace::Grid& grid, std::span<double> values,
                          double relative_threshold) {
  if (grid.boundary() != espace::Boundary::periodic)
    throw InvalidArgument("Fourier noise filter needs a periodic grid");
  if (values.size() != grid.node_count()) throw ShapeMismatch("filter input does not match grid");
  if (grid.rank() == 0 || !(relative_threshold > 0.0)) return;

  std::vector<int> dims(grid.rank());
  for (std::size_t a = 0; a < grid.rank(); ++a) dims[a] = static_cast<int>(grid.axis(a).nodes);
  const std::size_t half = grid.node_count() / grid.axis(grid.rank() - 1).nodes *
                           (grid.axis(grid.rank() - 1).nodes / 2 + 1);
  std::vector<std::complex<double>> coeffs(half);
  std::vector<double> work(values.begin(), values.end());
  auto* spec = reinterpret_cast<fftw_complex*>(coeffs.data());

  Plan forward;
  Plan backward;
  {
    std::lock_guard lock(planner_mutex());
    forward.reset(fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), work.data(), spec,
                                    FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), spec,
                                     work.data(), FFTW_ESTIMATE));
  }
  fftw_execute(forward.get());

  double peak = 0.0;
  for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return;
  const double cut = relative_threshold * peak;
  for (auto& c : coeffs)
    if (std::abs(c) < cut) c = 0.0;

  fftw_execute(backward.get());
  const double norm = 1.0 / static_cast<double>(grid.node_count());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = work[i] * norm;
}

std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t n_fft) {
  if (n_fft < x.size()) throw InvalidArgument("FFT length shorter than the series");
  std::vector<double> padded(n_fft, 0.0);
  std::copy(x.begin(), x.end(), padded.begin());
  std::vector<std::complex<double>> out(n_fft / 2 + 1);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), padded.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  std::vector<double> mag(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) mag[i] = std::abs(out[i]);
  return mag;
}

}  // namespace efield::spectral

namespace efield::waves {

FrequencyEstimate extract_frequency(std::span<const double> t, std::span<const double> x) {
  const std::size_t n = x.size();
  if (t.size() != n) throw ShapeMismatch("time and value series differ in length");
  if (n < 64) throw InvalidArgument("frequency extraction needs at least 64 samples");
  const double dt = (t[n - 1] - t[0]) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw InvalidArgument("time stamps must increase");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(t[i] - t[0] - static_cast<double>(i) * dt) > 1e-6 * dt)
      throw InvalidArgument("series is not uniformly sampled (sample " + std::to_string(i) + ")");

  std::size_t crossings = 0;
  int last_sign = 0;
  for (double v : x) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++crossings;
    last_sign = s;
  }
  FrequencyEstimate est;
  est.periods = crossings / 2;
  if (est.periods < 3)
    throw InvalidArgument("fewer than 3 periods detected (" + std::to_string(crossings) +
                          " zero crossings)");

  // Envelope: parabola-refined peaks of |x|, then a least-squares line in log space.
  std::vector<double> peak_t;
  std::vector<double> peak_log;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ym = std::abs(x[i - 1]);
    const double y0 = std::abs(x[i]);
    const double yp = std::abs(x[i + 1]);
    if (!(y0 > ym && y0 >= yp)) continue;
    const double curvature = ym - 2.0 * y0 + yp;
    const double delta = curvature != 0.0 ? 0.5 * (ym - yp) / curvature : 0.0;
    const double value = y0 - 0.25 * (ym - yp) * delta;
    peak_t.push_back(t[i] + delta * dt);
    peak_log.push_back(std::log(value));
  }
  if (peak_t.size() < 2) throw InvalidArgument("too few envelope peaks for a growth fit");
  double mt = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < peak_t.size(); ++i) {
    mt += peak_t[i];
    my += peak_log[i];
  }
  mt /= static_cast<double>(peak_t.size());
  my /= static_cast<double>(peak_t.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < peak_t.size(); ++i) {
    sxx += (peak_t[i] - mt) * (peak_t[i] - mt);
    sxy += (peak_t[i] - mt) * (peak_log[i] - my);
  }
  est.gamma = sxy / sxx;

  // Remove the fitted growth, then a Hann-weighted mean, and window.
  std::vector<double> y(n);
  std::vector<double> w(n);
  double wsum = 0.0;
  double wy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i] * std::exp(-est.gamma * (t[i] - t[0]));
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(n - 1)));
    wsum += w[i];
    wy += w[i] * y[i];
  }
  const double mean = wy / wsum;
  for (std::size_t i = 0; i < n; ++i) y[i] = (y[i] - mean) * w[i];

  std::size_t n_fft = 1;
  while (n_fft < 16 * n) n_fft <<= 1;
  const std::vector<double> mag = spectral::magnitude_spectrum(y, n_fft);
  std::size_t p = 1;
  for (std::size_t i = 2; i + 1 < mag.size(); ++i)
    if (mag[i] > mag[p]) p = i;
  const double am = mag[p - 1];
  const double a0 = mag[p];
  const double ap = mag[p + 1];
  const double curvature = am - 2.0 * a0 + ap;
  const double delta = curvature != 0.0 ? 0.5 * (am - ap) / curvature : 0.0;
  est.omega = 2.0 * std::numbers::pi * (static_cast<double>(p) + delta) /
              (static_cast<double>(n_fft) * dt);
  return est;
}

}  // namespace efield::waves
