#include "efield/waves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "efield/error.hpp"
#include "efield/simd/kernels.hpp"
#include "efield/spectral.hpp"

namespace efield::waves {

using espace::Grid;
using espace::ScalarField;
using espace::VectorField;
using hydro::FieldState;

void Background::validate() const {
  if (!(cl0 > 0.0) || !std::isfinite(cl0)) throw InvalidArgument("background CL0 must be > 0");
  if (!(pc0 > 0.0) || !std::isfinite(pc0)) throw InvalidArgument("background PC0 must be > 0");
  if (!params.all_finite()) throw InvalidArgument("coupling parameters must be finite");
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::two_real_waves:
      return "two-real-waves";
    case Regime::degenerate_b_zero:
      return "degenerate-b-zero";
    case Regime::oscillatory_growth:
      return "oscillatory-growth";
    case Regime::monotone_instability:
      return "monotone-instability";
    case Regime::boundary_critical:
      return "boundary-critical";
  }
  return "unknown";
}

BiwaveCoeffs biwave_coeffs(const hydro::CouplingParams& p) {
  return {p.a1 * p.b2 + p.a2 * p.b1, p.b1 * p.b2 * (p.a1 * p.a2 - 1.0)};
}

namespace {

// Roots w of w^2 + a w + b = 0, larger magnitude first, without cancellation.
std::pair<Complex, Complex> quadratic_roots(double a, double b) {
  const Complex sq = std::sqrt(Complex(a * a - 4.0 * b, 0.0));
  const double sign = (std::real(a * sq) >= 0.0) ? 1.0 : -1.0;
  const Complex q = -0.5 * (a + sign * sq);
  if (q == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  return {q, b / q};
}

}  // namespace

WaveSpeeds wave_speeds(double a, double b) {
  // c^2 = -w for the roots w of w^2 + a w + b.
  const auto [w1, w2] = quadratic_roots(a, b);
  WaveSpeeds out;
  out.c1_sq = -w1;
  out.c2_sq = -w2;
  if (std::real(out.c1_sq) < std::real(out.c2_sq)) std::swap(out.c1_sq, out.c2_sq);
  out.complex_pair = a * a < 4.0 * b;
  if (!out.complex_pair)
    out.nonpositive = std::real(out.c1_sq) <= 0.0 || std::real(out.c2_sq) <= 0.0;
  if (!out.complex_pair) {
    out.c1_sq = Complex(std::real(out.c1_sq), 0.0);
    out.c2_sq = Complex(std::real(out.c2_sq), 0.0);
  }
  return out;
}

Regime classify_regime(double a, double b) {
  if (std::abs(b) <= 1e-14 * std::max(1.0, a * a)) return Regime::degenerate_b_zero;
  if (b < 0.0) return Regime::monotone_instability;
  const double disc = a * a - 4.0 * b;
  if (std::abs(disc) <= 1e-12 * std::max({1.0, a * a, 4.0 * b})) return Regime::boundary_critical;
  if (disc < 0.0) return Regime::oscillatory_growth;
  // Both s^2 roots are real; they are negative (pure propagation) iff a > 0.
  return a > 0.0 ? Regime::two_real_waves : Regime::monotone_instability;
}

double wave_number(std::span<const double> k) {
  double sum = 0.0;
  for (double c : k) sum += c * c;
  return std::sqrt(sum);
}

Complex PaperDispersion::root() const {
  return std::sqrt(Complex(gamma_sq, 0.0)) - Complex(0.0, 1.0) * std::sqrt(Complex(omega_sq, 0.0));
}

PaperDispersion dispersion_paper(double k_norm, double a, double b) {
  const double radicand = 4.0 * b + 3.0 * a * a;
  if (radicand < 0.0)
    throw InvalidArgument("printed dispersion undefined: 4b + 3a^2 = " + std::to_string(radicand) +
                          " < 0");
  const double k2 = k_norm * k_norm;
  const double r = std::sqrt(radicand);
  return {k2 * (r + 2.0 * a) / 8.0, k2 * (r - 2.0 * a) / 8.0};
}

double biwave_residual(Complex s, double k_norm, double a, double b) {
  const double k2 = k_norm * k_norm;
  const Complex s2 = s * s;
  return std::abs(s2 * s2 + a * k2 * s2 + b * k2 * k2);
}

double residual_tolerance(double k_norm, double b) {
  const double k2 = k_norm * k_norm;
  return 1e-10 * std::max(1.0, std::abs(b) * k2 * k2);
}

DispersionResult dispersion_derived(double k_norm, double a, double b) {
  DispersionResult out;
  out.a = a;
  out.b = b;
  out.k_norm = k_norm;
  out.speeds = wave_speeds(a, b);
  out.regime = classify_regime(a, b);
  if (k_norm == 0.0) {
    out.degenerate = true;
    out.branches.push_back({0.0, 0.0});
    return out;
  }
  const double k2 = k_norm * k_norm;
  const auto [w1, w2] = quadratic_roots(a, b);
  const Complex r1 = std::sqrt(w1 * k2);
  const Complex r2 = std::sqrt(w2 * k2);
  out.roots = {r1, -r1, r2, -r2};
  // Real parts equal up to rounding count as ties so the order is stable.
  const double tie = 1e-12 * std::max(std::abs(r1), std::abs(r2));
  std::sort(out.roots.begin(), out.roots.end(), [tie](const Complex& x, const Complex& y) {
    if (std::abs(x.real() - y.real()) > tie) return x.real() > y.real();
    return -x.imag() > -y.imag();
  });
  for (const Complex& s : out.roots) {
    const Branch br{std::abs(s.imag()), s.real()};
    const double scale = std::max(1.0, std::abs(s));
    const bool seen = std::any_of(out.branches.begin(), out.branches.end(), [&](const Branch& o) {
      return std::abs(o.omega - br.omega) <= 1e-12 * scale &&
             std::abs(o.gamma - br.gamma) <= 1e-12 * scale;
    });
    if (!seen) out.branches.push_back(br);
  }
  return out;
}

double plane_wave_value(const PlaneWave& wave, std::span<const double> z, double t) {
  double phase = -wave.omega * t;
  for (std::size_t i = 0; i < wave.k.size(); ++i) phase += wave.k[i] * z[i];
  return wave.amplitude * std::cos(phase) * std::exp(wave.gamma * t);
}

namespace {

// 2 sin(k X / 2) / k, continuous at k = 0.
double box_factor(double k, double X) {
  if (k == 0.0) return X;
  return 2.0 * std::sin(0.5 * k * X) / k;
}

void require_planar(const PlaneWave& wave) {
  if (wave.k.size() != 2)
    throw InvalidArgument("credit totals need a two-component wave vector (n = 1)");
}

}  // namespace

CreditTotal credit_total_paper(double t, const PlaneWave& wave, double X, double cl0) {
  require_planar(wave);
  const double kx = wave.k[0];
  const double ky = wave.k[1];
  const double phase = 0.5 * (kx + ky) * X;
  CreditTotal out;
  out.degenerate = kx == 0.0 || ky == 0.0;
  out.background = cl0 * X * X;
  out.disturbance = -wave.amplitude * std::exp(wave.gamma * t) *
                    std::sin(wave.omega * t - phase) * box_factor(kx, X) * box_factor(ky, X);
  out.total = out.background + out.disturbance;
  return out;
}

double credit_total_closed_form(double t, const PlaneWave& wave, double X) {
  require_planar(wave);
  const double kx = wave.k[0];
  const double ky = wave.k[1];
  const double phase = 0.5 * (kx + ky) * X;
  return wave.amplitude * std::exp(wave.gamma * t) * std::cos(phase - wave.omega * t) *
         box_factor(kx, X) * box_factor(ky, X);
}

double credit_total_quadrature(const ScalarField& cl) {
  if (cl.grid().boundary() != espace::Boundary::reflective)
    throw InvalidArgument("whole-domain credit quadrature needs a bounded (reflective) grid");
  return espace::integrate_all(cl);
}

double credit_total_quadrature(const ScalarField& cl, double X) {
  const std::vector<double> lengths(cl.grid().rank(), X);
  return espace::integrate_window(cl, lengths);
}

ModeShape mode_shape(const Background& bg, std::span<const double> k, double amplitude,
                     Complex s) {
  const auto& p = bg.params;
  const double k2 = wave_number(k) * wave_number(k);
  const Complex s2 = s * s;
  // Null vectors of [[s^2 + a2 b1 k^2, -b2 k^2], [-b1 k^2, s^2 + a1 b2 k^2]].
  const Complex c1_cl = p.b2 * k2;
  const Complex c1_pc = s2 + p.a2 * p.b1 * k2;
  const Complex c2_cl = s2 + p.a1 * p.b2 * k2;
  const Complex c2_pc = p.b1 * k2;
  const double n1 = std::hypot(std::abs(c1_cl), std::abs(c1_pc));
  const double n2 = std::hypot(std::abs(c2_cl), std::abs(c2_pc));
  Complex cl = c1_cl;
  Complex pc = c1_pc;
  double norm = n1;
  if (n2 > n1) {
    cl = c2_cl;
    pc = c2_pc;
    norm = n2;
  }
  ModeShape out;
  if (norm == 0.0) {
    out.cl = amplitude;
    out.pc = 0.0;
  } else if (std::abs(cl) <= 1e-14 * norm) {
    out.cl = 0.0;
    out.pc = amplitude;
  } else {
    out.cl = amplitude;
    out.pc = amplitude * pc / cl;
  }
  const Complex I(0.0, 1.0);
  out.v.assign(k.size(), 0.0);
  out.u.assign(k.size(), 0.0);
  if (std::abs(s) > 0.0) {
    for (std::size_t c = 0; c < k.size(); ++c) {
      out.v[c] = I * k[c] * p.b2 * out.pc / (s * bg.cl0);
      out.u[c] = I * k[c] * p.b1 * out.cl / (s * bg.pc0);
    }
  }
  return out;
}

FieldState plane_wave_disturbance(const Grid& grid, const Background& bg,
                                  std::span<const double> k, double amplitude, Complex s,
                                  double t) {
  if (k.size() != grid.rank())
    throw ShapeMismatch("wave vector needs one component per grid axis");
  const ModeShape shape = mode_shape(bg, k, amplitude, s);
  FieldState out = FieldState::zeros(grid);
  out.t = t;
  std::vector<double> z(grid.rank());
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    grid.node_coords(i, z);
    double phase = 0.0;
    for (std::size_t c = 0; c < k.size(); ++c) phase += k[c] * z[c];
    const Complex e = std::exp(I * phase + s * t);
    out.cl[i] = std::real(shape.cl * e);
    out.pc[i] = std::real(shape.pc * e);
    for (std::size_t c = 0; c < k.size(); ++c) {
      out.v.at(c, i) = std::real(shape.v[c] * e);
      out.u.at(c, i) = std::real(shape.u[c] * e);
    }
  }
  return out;
}

FieldState linear_rhs(const FieldState& d, const Background& bg) {
  d.check_shape();
  const auto& p = bg.params;
  const auto& k = simd::kernels();
  const Grid& grid = d.grid();
  const std::size_t n = grid.node_count();
  const ScalarField div_v = espace::divergence(d.v);
  const ScalarField div_u = espace::divergence(d.u);

  FieldState out{0.0, ScalarField(grid), ScalarField(grid), espace::gradient(d.pc),
                 espace::gradient(d.cl)};
  k.axpy(out.cl.values().data(), -bg.cl0, div_v.values().data(), n);
  k.axpy(out.cl.values().data(), p.a2 * bg.pc0, div_u.values().data(), n);
  k.axpy(out.pc.values().data(), -bg.pc0, div_u.values().data(), n);
  k.axpy(out.pc.values().data(), p.a1 * bg.cl0, div_v.values().data(), n);
  const double gv = p.b2 / bg.cl0;
  const double gu = p.b1 / bg.pc0;
  for (double& x : out.v.values()) x *= gv;
  for (double& x : out.u.values()) x *= gu;
  return out;
}

double linear_cfl_dt(const Grid& grid, const Background& bg, double cfl_factor) {
  if (!(cfl_factor > 0.0 && cfl_factor <= 1.0))
    throw InvalidArgument("cfl_factor must lie in (0, 1]");
  const auto [a, b] = biwave_coeffs(bg.params);
  const WaveSpeeds speeds = wave_speeds(a, b);
  double s_max = hydro::kSpeedEpsilon;
  s_max = std::max(s_max, std::sqrt(std::abs(speeds.c1_sq)));
  s_max = std::max(s_max, std::sqrt(std::abs(speeds.c2_sq)));
  return cfl_factor * grid.min_spacing() / s_max;
}

FieldState linear_step(const FieldState& disturbance, const Background& bg, double dt,
                       const LinearOptions& options) {
  disturbance.check_shape();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  const double limit = linear_cfl_dt(disturbance.grid(), bg, 1.0);
  if (dt > limit * (1.0 + 1e-12))
    throw CflViolation("time step " + std::to_string(dt) + " exceeds the CFL limit " +
                       std::to_string(limit));
  FieldState next =
      hydro::rk4(disturbance, dt, [&](const FieldState& s) { return linear_rhs(s, bg); });
  if (options.noise_filter > 0.0) {
    const Grid& grid = next.grid();
    spectral::fourier_noise_filter(grid, next.cl.values(), options.noise_filter);
    spectral::fourier_noise_filter(grid, next.pc.values(), options.noise_filter);
    for (std::size_t c = 0; c < grid.rank(); ++c) {
      spectral::fourier_noise_filter(grid, next.v.component(c), options.noise_filter);
      spectral::fourier_noise_filter(grid, next.u.component(c), options.noise_filter);
    }
  }
  if (!next.all_finite())
    throw BlowUp("non-finite disturbance after step ending at t = " + std::to_string(next.t),
                 next.t);
  return next;
}

}  // namespace efield::waves
