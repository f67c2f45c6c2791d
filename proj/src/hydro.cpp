#include "efield/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "efield/error.hpp"
#include "efield/simd/kernels.hpp"
#include "efield/waves.hpp"

namespace efield::hydro {

using espace::Grid;
using espace::ScalarField;
using espace::VectorField;

bool CouplingParams::all_finite() const {
  return std::isfinite(a1) && std::isfinite(a2) && std::isfinite(b1) && std::isfinite(b2);
}

FieldState FieldState::uniform(const Grid& grid, double cl0, double pc0) {
  return FieldState{0.0, ScalarField(grid, cl0), ScalarField(grid, pc0),
                    VectorField(grid, grid.rank()), VectorField(grid, grid.rank())};
}

FieldState FieldState::zeros(const Grid& grid) { return uniform(grid, 0.0, 0.0); }

void FieldState::check_shape() const {
  const Grid& g = cl.grid();
  if (!(pc.grid() == g) || !(v.grid() == g) || !(u.grid() == g))
    throw ShapeMismatch("field state components live on different grids");
  if (v.components() != g.rank() || u.components() != g.rank())
    throw ShapeMismatch("field velocities need one component per grid axis");
}

bool FieldState::all_finite() const {
  const auto& k = simd::kernels();
  return k.all_finite(cl.values().data(), cl.size()) &&
         k.all_finite(pc.values().data(), pc.size()) &&
         k.all_finite(v.values().data(), v.values().size()) &&
         k.all_finite(u.values().data(), u.values().size());
}

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw ShapeMismatch(std::string(what) + ": operands live on different grids");
}

void scale(std::span<double> x, double alpha) {
  for (double& e : x) e *= alpha;
}

}  // namespace

ScalarField continuity_rhs(const ScalarField& density, const VectorField& velocity,
                           const ScalarField& q1) {
  const Grid& grid = density.grid();
  require_same_grid(grid, velocity.grid(), "continuity_rhs");
  require_same_grid(grid, q1.grid(), "continuity_rhs");
  if (velocity.components() != grid.rank())
    throw ShapeMismatch("continuity_rhs: velocity needs one component per axis");
  const auto& k = simd::kernels();
  const std::size_t n = grid.node_count();
  VectorField flux(grid, grid.rank());
  for (std::size_t c = 0; c < grid.rank(); ++c)
    k.mul(flux.component(c).data(), velocity.component(c).data(), density.values().data(), n);
  const ScalarField div = espace::divergence(flux);
  ScalarField out(grid);
  k.add_scaled(out.values().data(), q1.values().data(), -1.0, div.values().data(), n);
  return out;
}

VectorField motion_rhs(const ScalarField& density, const VectorField& velocity,
                       const VectorField& q2) {
  const Grid& grid = density.grid();
  require_same_grid(grid, velocity.grid(), "motion_rhs");
  require_same_grid(grid, q2.grid(), "motion_rhs");
  if (velocity.components() != grid.rank() || q2.components() != grid.rank())
    throw ShapeMismatch("motion_rhs: vectors need one component per axis");
  const auto& k = simd::kernels();
  const std::size_t n = grid.node_count();
  VectorField out(grid, grid.rank());
  std::vector<double> dw(n);
  std::vector<double> advection(n);
  for (std::size_t c = 0; c < grid.rank(); ++c) {
    std::fill(advection.begin(), advection.end(), 0.0);
    for (std::size_t d = 0; d < grid.rank(); ++d) {
      espace::partial(grid, velocity.component(c), d, dw);
      k.mul_acc(advection.data(), velocity.component(d).data(), dw.data(), n);
    }
    auto oc = out.component(c);
    k.safe_div(oc.data(), q2.component(c).data(), density.values().data(), kDensityEpsilon, n);
    k.axpy(oc.data(), -1.0, advection.data(), n);
  }
  return out;
}

Sources clpc_sources(const FieldState& state, const CouplingParams& params) {
  state.check_shape();
  const Grid& grid = state.grid();
  const auto& k = simd::kernels();
  const std::size_t n = grid.node_count();
  Sources s{ScalarField(grid), ScalarField(grid), espace::gradient(state.pc),
            espace::gradient(state.cl)};
  const ScalarField div_u = espace::divergence(state.u);
  const ScalarField div_v = espace::divergence(state.v);
  k.scaled_mul(s.q1_cl.values().data(), params.a2, state.pc.values().data(),
               div_u.values().data(), n);
  k.scaled_mul(s.q1_pc.values().data(), params.a1, state.cl.values().data(),
               div_v.values().data(), n);
  scale(s.q2_cl.values(), params.b2);
  scale(s.q2_pc.values(), params.b1);
  return s;
}

double cfl_dt(const FieldState& state, const CouplingParams& params, double cfl_factor) {
  if (!(cfl_factor > 0.0 && cfl_factor <= 1.0))
    throw InvalidArgument("cfl_factor must lie in (0, 1]");
  state.check_shape();
  const auto& k = simd::kernels();
  const auto [a, b] = waves::biwave_coeffs(params);
  const auto speeds = waves::wave_speeds(a, b);
  double s_max = kSpeedEpsilon;
  s_max = std::max(s_max, k.max_abs(state.v.values().data(), state.v.values().size()));
  s_max = std::max(s_max, k.max_abs(state.u.values().data(), state.u.values().size()));
  s_max = std::max(s_max, std::sqrt(std::abs(speeds.c1_sq)));
  s_max = std::max(s_max, std::sqrt(std::abs(speeds.c2_sq)));
  return cfl_factor * state.grid().min_spacing() / s_max;
}

FieldState rhs(const FieldState& state, const CouplingParams& params) {
  const Sources s = clpc_sources(state, params);
  return FieldState{0.0, continuity_rhs(state.cl, state.v, s.q1_cl),
                    continuity_rhs(state.pc, state.u, s.q1_pc),
                    motion_rhs(state.cl, state.v, s.q2_cl),
                    motion_rhs(state.pc, state.u, s.q2_pc)};
}

namespace {

// out = x + alpha * y, array by array.
void combine(FieldState& out, const FieldState& x, double alpha, const FieldState& y) {
  const auto& k = simd::kernels();
  auto apply = [&](std::span<double> o, std::span<const double> a, std::span<const double> b) {
    k.add_scaled(o.data(), a.data(), alpha, b.data(), o.size());
  };
  apply(out.cl.values(), x.cl.values(), y.cl.values());
  apply(out.pc.values(), x.pc.values(), y.pc.values());
  apply(out.v.values(), x.v.values(), y.v.values());
  apply(out.u.values(), x.u.values(), y.u.values());
}

void accumulate(FieldState& y, double alpha, const FieldState& x) {
  const auto& k = simd::kernels();
  auto apply = [&](std::span<double> o, std::span<const double> a) {
    k.axpy(o.data(), alpha, a.data(), o.size());
  };
  apply(y.cl.values(), x.cl.values());
  apply(y.pc.values(), x.pc.values());
  apply(y.v.values(), x.v.values());
  apply(y.u.values(), x.u.values());
}

}  // namespace

FieldState rk4(const FieldState& state, double dt,
               const std::function<FieldState(const FieldState&)>& derivative) {
  FieldState stage = state;
  const FieldState k1 = derivative(state);
  combine(stage, state, 0.5 * dt, k1);
  stage.t = state.t + 0.5 * dt;
  const FieldState k2 = derivative(stage);
  combine(stage, state, 0.5 * dt, k2);
  const FieldState k3 = derivative(stage);
  combine(stage, state, dt, k3);
  stage.t = state.t + dt;
  const FieldState k4 = derivative(stage);

  FieldState next = state;
  accumulate(next, dt / 6.0, k1);
  accumulate(next, dt / 3.0, k2);
  accumulate(next, dt / 3.0, k3);
  accumulate(next, dt / 6.0, k4);
  next.t = state.t + dt;
  return next;
}

FieldState step(const FieldState& state, const CouplingParams& params, double dt) {
  state.check_shape();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  const double limit = cfl_dt(state, params, 1.0);
  if (dt > limit * (1.0 + 1e-12))
    throw CflViolation("time step " + std::to_string(dt) + " exceeds the CFL limit " +
                       std::to_string(limit));
  FieldState next = rk4(state, dt, [&](const FieldState& s) { return rhs(s, params); });
  if (!next.all_finite())
    throw BlowUp("non-finite field values after step ending at t = " + std::to_string(next.t),
                 next.t);
  return next;
}

NegativityCount count_negative(const FieldState& state) {
  NegativityCount out;
  out.min_cl = std::numeric_limits<double>::infinity();
  out.min_pc = std::numeric_limits<double>::infinity();
  for (double x : state.cl.values()) {
    out.cl_nodes += x < 0.0;
    out.min_cl = std::min(out.min_cl, x);
  }
  for (double x : state.pc.values()) {
    out.pc_nodes += x < 0.0;
    out.min_pc = std::min(out.min_pc, x);
  }
  return out;
}

}  // namespace efield::hydro
