#include "efield/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "efield/error.hpp"
#include "efield/hydro.hpp"
#include "efield/parallel.hpp"
#include "efield/simd/kernels.hpp"

namespace efield::kinetic {

using espace::Grid;
using espace::ScalarField;
using espace::VectorField;

namespace {

bool finite_all(std::span<const double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

bool inside(const Grid& grid, std::size_t first_axis, std::span<const double> point) {
  for (std::size_t a = 0; a < point.size(); ++a) {
    const auto& b = grid.axis(first_axis + a).bounds;
    if (!(point[a] >= b.lo && point[a] <= b.hi)) return false;
  }
  return true;
}

// Flat index of the node nearest to the concatenation of the given blocks.
std::size_t nearest_flat(const Grid& grid, std::span<const double> x, std::span<const double> y) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < x.size(); ++a) flat += grid.nearest_node(a, x[a]) * grid.stride(a);
  for (std::size_t a = 0; a < y.size(); ++a) {
    const std::size_t axis = x.size() + a;
    flat += grid.nearest_node(axis, y[a]) * grid.stride(axis);
  }
  return flat;
}

void to_density(std::span<double> mass, const Grid& grid) {
  const std::size_t n = grid.node_count();
  for (std::size_t c = 0; c < mass.size() / n; ++c)
    for (std::size_t i = 0; i < n; ++i) mass[c * n + i] /= grid.cell_volume(i);
}

void check_particle(const EParticle& p, std::size_t index, const Grid& grid) {
  if (p.coords.size() != grid.rank() || p.velocity.size() != grid.rank())
    throw InvalidArgument("particle " + std::to_string(index) + " has " +
                          std::to_string(p.coords.size()) + " coordinates for a rank-" +
                          std::to_string(grid.rank()) + " grid");
  if (!finite_all(p.velocity) || !finite_all(p.variables))
    throw InvalidArgument("particle " + std::to_string(index) + " has non-finite values");
  if (!inside(grid, 0, p.coords))
    throw OutOfBounds("particle " + std::to_string(index) + " lies outside the space bounds",
                      index);
}

void check_record(const TransactionRecord& r, std::size_t index, const Grid& grid) {
  const std::size_t n = r.debtor_coords.size();
  if (grid.rank() != 2 * n || r.creditor_coords.size() != n || r.debtor_velocity.size() != n ||
      r.creditor_velocity.size() != n)
    throw InvalidArgument("transaction " + std::to_string(index) +
                          " does not match the field grid dimension");
  if (!(r.amount >= 0.0) || !std::isfinite(r.amount))
    throw InvalidArgument("transaction " + std::to_string(index) + " has a negative amount");
  if (!finite_all(r.debtor_velocity) || !finite_all(r.creditor_velocity))
    throw InvalidArgument("transaction " + std::to_string(index) + " has non-finite velocity");
  if (!inside(grid, 0, r.debtor_coords) || !inside(grid, n, r.creditor_coords))
    throw OutOfBounds("transaction " + std::to_string(index) + " lies outside the space bounds",
                      index);
}

void check_variable(const EParticle& p, std::size_t index, std::size_t j) {
  if (j >= p.variables.size())
    throw InvalidArgument("particle " + std::to_string(index) + " has no variable " +
                          std::to_string(j));
}

}  // namespace

ScalarField macro_density(std::span<const EParticle> particles, std::size_t j, const Grid& grid) {
  ScalarField out(grid);
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const auto& p = particles[i];
    check_particle(p, i, grid);
    check_variable(p, i, j);
    out[nearest_flat(grid, p.coords, {})] += p.variables[j];
  }
  to_density(out.values(), grid);
  return out;
}

VectorField macro_impulse(std::span<const EParticle> particles, std::size_t j, const Grid& grid) {
  VectorField out(grid, grid.rank());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const auto& p = particles[i];
    check_particle(p, i, grid);
    check_variable(p, i, j);
    const std::size_t node = nearest_flat(grid, p.coords, {});
    for (std::size_t c = 0; c < grid.rank(); ++c) out.at(c, node) += p.variables[j] * p.velocity[c];
  }
  to_density(out.values(), grid);
  return out;
}

VectorField macro_velocity(const ScalarField& density, const VectorField& impulse) {
  if (!(density.grid() == impulse.grid()))
    throw ShapeMismatch("macro_velocity: density and impulse live on different grids");
  const auto& k = simd::kernels();
  VectorField out(impulse.grid(), impulse.components());
  for (std::size_t c = 0; c < impulse.components(); ++c)
    k.safe_div(out.component(c).data(), impulse.component(c).data(), density.values().data(),
               hydro::kDensityEpsilon, density.size());
  return out;
}

MacroState macro_state(std::span<const EParticle> particles, std::size_t variables,
                       const Grid& grid) {
  MacroState out;
  for (std::size_t j = 0; j < variables; ++j) {
    out.density.push_back(macro_density(particles, j, grid));
    out.impulse.push_back(macro_impulse(particles, j, grid));
    out.velocity.push_back(macro_velocity(out.density.back(), out.impulse.back()));
  }
  return out;
}

double loans_received(std::span<const TransactionRecord> transactions, std::int64_t creditor) {
  double sum = 0.0;
  for (const auto& r : transactions)
    if (r.creditor_id == creditor) sum += r.amount;
  return sum;
}

double credits_issued(std::span<const TransactionRecord> transactions, std::int64_t debtor) {
  double sum = 0.0;
  for (const auto& r : transactions)
    if (r.debtor_id == debtor) sum += r.amount;
  return sum;
}

ScalarField field_sample(std::span<const TransactionRecord> transactions, const Grid& grid) {
  ScalarField out(grid);
  for (std::size_t i = 0; i < transactions.size(); ++i) {
    const auto& r = transactions[i];
    check_record(r, i, grid);
    out[nearest_flat(grid, r.debtor_coords, r.creditor_coords)] += r.amount;
  }
  to_density(out.values(), grid);
  return out;
}

FieldImpulses field_impulses(std::span<const TransactionRecord> transactions, const Grid& grid) {
  const std::size_t n = grid.rank() / 2;
  FieldImpulses out{VectorField(grid, n), VectorField(grid, n)};
  for (std::size_t i = 0; i < transactions.size(); ++i) {
    const auto& r = transactions[i];
    check_record(r, i, grid);
    const std::size_t node = nearest_flat(grid, r.debtor_coords, r.creditor_coords);
    for (std::size_t c = 0; c < n; ++c) {
      out.px.at(c, node) += r.amount * r.debtor_velocity[c];
      out.py.at(c, node) += r.amount * r.creditor_velocity[c];
    }
  }
  to_density(out.px.values(), grid);
  to_density(out.py.values(), grid);
  return out;
}

VectorField FieldDensity::velocity() const {
  const std::size_t n = vx.components();
  VectorField out(cl.grid(), 2 * n);
  for (std::size_t c = 0; c < n; ++c) {
    std::copy(vx.component(c).begin(), vx.component(c).end(), out.component(c).begin());
    std::copy(vy.component(c).begin(), vy.component(c).end(), out.component(n + c).begin());
  }
  return out;
}

FieldDensity field_density(const EmpiricalEnsemble& ensemble, const Grid& grid) {
  const std::size_t count = ensemble.realizations.size();
  if (count == 0) throw InvalidArgument("field_density needs at least one realization");
  if (grid.rank() % 2 != 0) throw InvalidArgument("field_density needs a rank-2n field grid");

  std::vector<ScalarField> samples(count);
  std::vector<FieldImpulses> impulses(count);
  parallel_for(count, [&](std::size_t r) {
    samples[r] = field_sample(ensemble.realizations[r], grid);
    impulses[r] = field_impulses(ensemble.realizations[r], grid);
  });

  const std::size_t n = grid.rank() / 2;
  const auto& k = simd::kernels();
  const double inv = 1.0 / static_cast<double>(count);
  FieldDensity out{ScalarField(grid), VectorField(grid, n), VectorField(grid, n),
                   VectorField(grid, n), VectorField(grid, n)};
  for (std::size_t r = 0; r < count; ++r) {
    k.axpy(out.cl.values().data(), inv, samples[r].values().data(), out.cl.size());
    k.axpy(out.px.values().data(), inv, impulses[r].px.values().data(), out.px.values().size());
    k.axpy(out.py.values().data(), inv, impulses[r].py.values().data(), out.py.values().size());
  }
  out.vx = macro_velocity(out.cl, out.px);
  out.vy = macro_velocity(out.cl, out.py);
  return out;
}

CounterpartyIntegrals counterparty_integrals(const ScalarField& cl) {
  const Grid& grid = cl.grid();
  if (grid.rank() % 2 != 0 || grid.rank() == 0)
    throw InvalidArgument("counterparty integrals need a rank-2n field");
  const std::size_t n = grid.rank() / 2;
  std::vector<std::size_t> x_axes(n);
  std::vector<std::size_t> y_axes(n);
  for (std::size_t a = 0; a < n; ++a) {
    x_axes[a] = a;
    y_axes[a] = n + a;
  }
  return {espace::integrate(cl, y_axes), espace::integrate(cl, x_axes), espace::integrate_all(cl)};
}

namespace {

std::vector<double> uniform_point(const espace::EconomicSpace& space, std::mt19937_64& rng) {
  std::vector<double> p(space.dim());
  for (std::size_t a = 0; a < space.dim(); ++a) {
    std::uniform_real_distribution<double> dist(space.bounds(a).lo, space.bounds(a).hi);
    p[a] = dist(rng);
  }
  return p;
}

std::vector<double> normal_vector(std::size_t n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

std::vector<TransactionRecord> generate_transactions(const espace::EconomicSpace& space,
                                                     std::size_t count, double mean_amount,
                                                     double velocity_scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> amount(1.0 / mean_amount);
  const auto agents = static_cast<std::int64_t>(std::max<std::size_t>(2, count / 4));
  std::uniform_int_distribution<std::int64_t> id(1, agents);
  std::vector<TransactionRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    TransactionRecord r;
    r.debtor_id = id(rng);
    r.creditor_id = id(rng);
    r.debtor_coords = uniform_point(space, rng);
    r.creditor_coords = uniform_point(space, rng);
    r.amount = amount(rng);
    r.debtor_velocity = normal_vector(space.dim(), velocity_scale, rng);
    r.creditor_velocity = normal_vector(space.dim(), velocity_scale, rng);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EParticle> generate_particles(const espace::EconomicSpace& space, std::size_t count,
                                          std::size_t variables, double velocity_scale,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> value(1.0);
  std::vector<EParticle> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    EParticle p;
    p.id = static_cast<std::int64_t>(i);
    p.coords = uniform_point(space, rng);
    p.velocity = normal_vector(space.dim(), velocity_scale, rng);
    p.variables.resize(variables);
    for (double& u : p.variables) u = value(rng);
    out.push_back(std::move(p));
  }
  return out;
}

EmpiricalEnsemble generate_ensemble(const espace::EconomicSpace& space, std::size_t realizations,
                                    std::size_t per_realization, double mean_amount,
                                    double velocity_scale, std::uint64_t seed) {
  EmpiricalEnsemble out;
  for (std::size_t r = 0; r < realizations; ++r) {
    const std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (r + 1);
    out.seeds.push_back(s);
    out.realizations.push_back(
        generate_transactions(space, per_realization, mean_amount, velocity_scale, s));
  }
  return out;
}

}  // namespace efield::kinetic
