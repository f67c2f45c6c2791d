#pragma once

// Small disturbances of the CL/PC system around a uniform background.
//
// Linearizing about CL = CL0, PC = PC0, v = u = 0 gives
//   d cl/dt + CL0 div v = alpha2 PC0 div u,   CL0 dv/dt = beta2 grad pc,
//   d pc/dt + PC0 div u = alpha1 CL0 div v,   PC0 du/dt = beta1 grad cl,
// and cl obeys the bi-wave equation
//   [d4/dt4 - a Lap d2/dt2 + b Lap^2] cl = 0,
//   a = alpha1 beta2 + alpha2 beta1,  b = beta1 beta2 (alpha1 alpha2 - 1).
// A plane wave exp(i k.z + s t), s = gamma - i omega, solves it exactly when
//   s^4 + a |k|^2 s^2 + b |k|^4 = 0.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "efield/espace.hpp"
#include "efield/hydro.hpp"

namespace efield::waves {

using Complex = std::complex<double>;

struct Background {
  double cl0 = 1.0;
  double pc0 = 1.0;
  hydro::CouplingParams params;
  // Throws InvalidArgument unless cl0 > 0, pc0 > 0 and params are finite.
  void validate() const;
};

enum class Regime {
  two_real_waves,
  degenerate_b_zero,
  oscillatory_growth,
  monotone_instability,
  boundary_critical,
};

std::string_view to_string(Regime regime);

struct BiwaveCoeffs {
  double a = 0.0;
  double b = 0.0;
};

BiwaveCoeffs biwave_coeffs(const hydro::CouplingParams& params);

// c1^2, c2^2 = (a +- sqrt(a^2 - 4b)) / 2, so that c1^2 + c2^2 = a and
// c1^2 c2^2 = b.
struct WaveSpeeds {
  Complex c1_sq;
  Complex c2_sq;
  bool complex_pair = false;  // a^2 < 4b
  bool nonpositive = false;   // some real root <= 0
};

WaveSpeeds wave_speeds(double a, double b);

Regime classify_regime(double a, double b);

// |k| over all 2n wave-vector components.
double wave_number(std::span<const double> k);

// The closed-form frequencies printed with the plane-wave solution:
//   omega^2 = k^2 (sqrt(4b + 3a^2) + 2a) / 8,
//   gamma^2 = k^2 (sqrt(4b + 3a^2) - 2a) / 8.
// They satisfy the characteristic quartic only when a^2 = 4b.
struct PaperDispersion {
  double omega_sq = 0.0;
  double gamma_sq = 0.0;
  // s = sqrt(gamma^2) - i sqrt(omega^2) with complex square roots.
  Complex root() const;
};

// Throws InvalidArgument when 4b + 3a^2 < 0.
PaperDispersion dispersion_paper(double k_norm, double a, double b);

// (omega >= 0, gamma) pair of a characteristic root s = gamma - i omega.
struct Branch {
  double omega = 0.0;
  double gamma = 0.0;
};

struct DispersionResult {
  double a = 0.0;
  double b = 0.0;
  double k_norm = 0.0;
  WaveSpeeds speeds;
  Regime regime = Regime::two_real_waves;
  // Ordered by growth rate (descending), then by omega = -Im s (descending).
  std::array<Complex, 4> roots{};
  // Distinct (omega, gamma) pairs with omega reported non-negative.
  std::vector<Branch> branches;
  // k = 0: every root is zero.
  bool degenerate = false;

  const Complex& dominant_root() const { return roots[0]; }
};

// Roots of s^4 + a k^2 s^2 + b k^4 via the quadratic in s^2.
DispersionResult dispersion_derived(double k_norm, double a, double b);

// |s^4 + a k^2 s^2 + b k^4|.
double biwave_residual(Complex s, double k_norm, double a, double b);

// Residual bound used for emitted roots: 1e-10 * max(1, |b| k^4).
double residual_tolerance(double k_norm, double b);

struct PlaneWave {
  std::vector<double> k;  // (k_x, k_y) for n = 1
  double omega = 0.0;
  double gamma = 0.0;
  double amplitude = 1.0;
};

// amplitude * cos(k.z - omega t) exp(gamma t)
double plane_wave_value(const PlaneWave& wave, std::span<const double> z, double t);

struct CreditTotal {
  double total = 0.0;        // C(t) = C0 + c(t)
  double background = 0.0;   // C0 = CL0 X^2
  double disturbance = 0.0;  // c(t)
  bool degenerate = false;   // k_x or k_y was zero; analytic limit used
};

// Macro credit total over [0, X]^2 with c(t) in its printed form,
//   c(t) = -(4 e^{gamma t} / (k_x k_y)) sin(omega t - (k_x + k_y) X / 2)
//          sin(k_x X / 2) sin(k_y X / 2),
// scaled by the wave amplitude. Requires a two-component wave vector.
CreditTotal credit_total_paper(double t, const PlaneWave& wave, double X, double cl0);

// Exact integral of the plane wave over [0, X]^2:
//   (4 e^{gamma t} / (k_x k_y)) cos((k_x + k_y) X / 2 - omega t)
//   sin(k_x X / 2) sin(k_y X / 2), scaled by the amplitude.
double credit_total_closed_form(double t, const PlaneWave& wave, double X);

// Quadrature of a disturbance snapshot over the whole bounded grid.
double credit_total_quadrature(const espace::ScalarField& cl);
// Quadrature over [lo, lo + X] on every axis; periodic grids wrap.
double credit_total_quadrature(const espace::ScalarField& cl, double X);

// Complex amplitudes (cl, pc, v_c, u_c) of the eigen-disturbance with root s.
struct ModeShape {
  Complex cl;
  Complex pc;
  std::vector<Complex> v;
  std::vector<Complex> u;
};

ModeShape mode_shape(const Background& bg, std::span<const double> k, double amplitude,
                     Complex s);

// Re[shape * exp(i k.z + s t)] sampled on the grid.
hydro::FieldState plane_wave_disturbance(const espace::Grid& grid, const Background& bg,
                                         std::span<const double> k, double amplitude,
                                         Complex s, double t = 0.0);

// Time derivative of the linearized system for a disturbance state.
hydro::FieldState linear_rhs(const hydro::FieldState& disturbance, const Background& bg);

struct LinearOptions {
  // When positive, Fourier coefficients below this fraction of each field's
  // largest coefficient are zeroed after every step (periodic grids only).
  // Needed in growth regimes, where round-off at grid scale outgrows any
  // resolved mode.
  double noise_filter = 0.0;
};

// cfl_factor * dx_min / max(|c1|, |c2|, kSpeedEpsilon). The background is at
// rest, so disturbance velocities do not advect and do not enter the limit.
double linear_cfl_dt(const espace::Grid& grid, const Background& bg, double cfl_factor);

// RK4 step of the linear system. dt is limited by linear_cfl_dt(grid, bg, 1.0);
// non-finite values raise BlowUp.
hydro::FieldState linear_step(const hydro::FieldState& disturbance, const Background& bg,
                              double dt, const LinearOptions& options = {});

struct FrequencyEstimate {
  double omega = 0.0;
  double gamma = 0.0;
  std::size_t periods = 0;  // zero crossings / 2
};

// Growth rate from a least-squares line through the log of the |x| peaks;
// frequency from the Hann-windowed, zero-padded DFT peak of x e^{-gamma t},
// refined by a parabola through the peak bin. Needs >= 64 uniform samples and
// >= 3 detected periods; throws InvalidArgument otherwise.
FrequencyEstimate extract_frequency(std::span<const double> t, std::span<const double> x);

}  // namespace efield::waves
