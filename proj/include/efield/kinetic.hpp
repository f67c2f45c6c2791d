#pragma once

// Agent-level data and its aggregation into densities.
//
// Agents (e-particles) sit at risk coordinates x with risk velocities v and
// carry economic variables u_1..u_l. Binning them to the nearest node of a
// grid on R^n gives macro densities U_j, impulses P_j = sum u_j v and
// velocities v_j = P_j / U_j. Pairwise transactions cl_ij between a debtor
// at x and a creditor at y bin to the node pair (x, y) of a grid on R^{2n}
// and give the economic field CL(x, y) with impulses (P_X, P_Y).
//
// Every density stores mass / (quadrature weight of the node), so integrating
// a density over the whole grid returns the plain sum of the binned amounts.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "efield/espace.hpp"

namespace efield::kinetic {

struct EParticle {
  std::int64_t id = 0;
  std::vector<double> coords;     // n risk coordinates
  std::vector<double> velocity;   // n risk-velocity components
  std::vector<double> variables;  // u_1..u_l
};

struct TransactionRecord {
  std::int64_t debtor_id = 0;
  std::int64_t creditor_id = 0;
  std::vector<double> debtor_coords;    // x
  std::vector<double> creditor_coords;  // y
  double amount = 0.0;                  // currency per unit time, >= 0
  std::vector<double> debtor_velocity;
  std::vector<double> creditor_velocity;
};

// One transaction set per stochastic realization; all share one grid.
struct EmpiricalEnsemble {
  std::vector<std::vector<TransactionRecord>> realizations;
  std::vector<std::uint64_t> seeds;
};

// Per-variable macro fields on R^n.
struct MacroState {
  std::vector<espace::ScalarField> density;   // U_j
  std::vector<espace::VectorField> impulse;   // P_j
  std::vector<espace::VectorField> velocity;  // v_j
};

// Throws OutOfBounds (carrying the particle index) for particles outside the
// grid, InvalidArgument for malformed particles or a bad variable index.
espace::ScalarField macro_density(std::span<const EParticle> particles, std::size_t j,
                                  const espace::Grid& grid);
espace::VectorField macro_impulse(std::span<const EParticle> particles, std::size_t j,
                                  const espace::Grid& grid);
// P / U where U > kDensityEpsilon, else 0.
espace::VectorField macro_velocity(const espace::ScalarField& density,
                                   const espace::VectorField& impulse);
MacroState macro_state(std::span<const EParticle> particles, std::size_t variables,
                       const espace::Grid& grid);

// Sum of amounts with the given creditor id.
double loans_received(std::span<const TransactionRecord> transactions, std::int64_t creditor);
// Sum of amounts with the given debtor id.
double credits_issued(std::span<const TransactionRecord> transactions, std::int64_t debtor);

espace::ScalarField field_sample(std::span<const TransactionRecord> transactions,
                                 const espace::Grid& grid);

// n-component impulse densities on the 2n grid: P_X weights amounts by debtor
// velocity, P_Y by creditor velocity.
struct FieldImpulses {
  espace::VectorField px;
  espace::VectorField py;
};

FieldImpulses field_impulses(std::span<const TransactionRecord> transactions,
                             const espace::Grid& grid);

struct FieldDensity {
  espace::ScalarField cl;
  espace::VectorField px;
  espace::VectorField py;
  espace::VectorField vx;
  espace::VectorField vy;
  // (v_X, v_Y) as one 2n-component field, the layout used by FieldState.
  espace::VectorField velocity() const;
};

// Ensemble means of field_sample / field_impulses with v = P / CL where
// CL > kDensityEpsilon. Realizations are binned in parallel and summed in
// realization order.
FieldDensity field_density(const EmpiricalEnsemble& ensemble, const espace::Grid& grid);

struct CounterpartyIntegrals {
  espace::ScalarField loans;    // L(x): CL integrated over y
  espace::ScalarField credits;  // C(y): CL integrated over x
  double total = 0.0;
};

CounterpartyIntegrals counterparty_integrals(const espace::ScalarField& cl);

// Synthetic data for scenarios: uniform positions in the space bounds,
// exponential amounts with the given mean, normal velocities.
std::vector<TransactionRecord> generate_transactions(const espace::EconomicSpace& space,
                                                     std::size_t count, double mean_amount,
                                                     double velocity_scale, std::uint64_t seed);
std::vector<EParticle> generate_particles(const espace::EconomicSpace& space, std::size_t count,
                                          std::size_t variables, double velocity_scale,
                                          std::uint64_t seed);
EmpiricalEnsemble generate_ensemble(const espace::EconomicSpace& space, std::size_t realizations,
                                    std::size_t per_realization, double mean_amount,
                                    double velocity_scale, std::uint64_t seed);

}  // namespace efield::kinetic
