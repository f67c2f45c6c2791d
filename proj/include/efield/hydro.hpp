#pragma once

// Hydrodynamic-like transport of economic fields.
//
// A generic field density A(t, z) with velocity w(t, z) on R^{2n} obeys
//   dA/dt + div(w A) = Q1,        A (dw/dt + (w . grad) w) = Q2.
// The Credits-Loans (CL, velocity v) / Payments-on-Credits (PC, velocity u)
// pair closes the sources on each other:
//   Q1_CL = a2 PC div u,  Q1_PC = a1 CL div v,
//   Q2_CL = b2 grad PC,   Q2_PC = b1 grad CL.

#include <cstddef>
#include <functional>

#include "efield/espace.hpp"

namespace efield::hydro {

// Below this density the motion forcing Q2 / A is dropped and velocities
// derived from impulses are set to zero.
inline constexpr double kDensityEpsilon = 1e-12;
// Lower bound on the signal speed used by the CFL estimate.
inline constexpr double kSpeedEpsilon = 1e-6;

// Signed source gains. The linearized wave analysis names the same numbers
// alpha1 = a1, alpha2 = a2, beta1 = b1, beta2 = b2.
struct CouplingParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  bool all_finite() const;
};

struct FieldState {
  double t = 0.0;
  espace::ScalarField cl;
  espace::ScalarField pc;
  espace::VectorField v;  // Credits-Loans velocity, 2n components
  espace::VectorField u;  // Payments-on-Credits velocity, 2n components

  static FieldState uniform(const espace::Grid& grid, double cl0, double pc0);
  static FieldState zeros(const espace::Grid& grid);

  const espace::Grid& grid() const { return cl.grid(); }
  // Throws ShapeMismatch unless all four fields share one grid and the
  // velocities carry one component per grid axis.
  void check_shape() const;
  bool all_finite() const;
};

espace::ScalarField continuity_rhs(const espace::ScalarField& density,
                                   const espace::VectorField& velocity,
                                   const espace::ScalarField& q1);

espace::VectorField motion_rhs(const espace::ScalarField& density,
                               const espace::VectorField& velocity,
                               const espace::VectorField& q2);

struct Sources {
  espace::ScalarField q1_cl;
  espace::ScalarField q1_pc;
  espace::VectorField q2_cl;
  espace::VectorField q2_pc;
};

Sources clpc_sources(const FieldState& state, const CouplingParams& params);

// cfl_factor * dx_min / max(|v|, |u|, |c1|, |c2|, kSpeedEpsilon), with c1, c2
// the bi-wave speeds of params (moduli when complex).
double cfl_dt(const FieldState& state, const CouplingParams& params, double cfl_factor);

// Time derivative of the closed CL/PC system; the returned state's t is unused.
FieldState rhs(const FieldState& state, const CouplingParams& params);

// Classical fourth-order Runge-Kutta step of the closed system. Rejects dt
// above cfl_dt(state, params, 1.0) with CflViolation and throws BlowUp when
// any value becomes non-finite.
FieldState step(const FieldState& state, const CouplingParams& params, double dt);

// Generic RK4 over FieldState; shared with the linear disturbance solver.
FieldState rk4(const FieldState& state, double dt,
               const std::function<FieldState(const FieldState&)>& derivative);

struct NegativityCount {
  std::size_t cl_nodes = 0;
  std::size_t pc_nodes = 0;
  double min_cl = 0.0;
  double min_pc = 0.0;
};

NegativityCount count_negative(const FieldState& state);

}  // namespace efield::hydro
