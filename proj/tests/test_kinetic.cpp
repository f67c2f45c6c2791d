#include <cmath>
#include <vector>

#include "doctest.h"
#include "efield/error.hpp"
#include "efield/kinetic.hpp"
#include "efield/parallel.hpp"

using namespace efield::kinetic;
using efield::espace::Boundary;
using efield::espace::EconomicSpace;
using efield::espace::Grid;

namespace {

TransactionRecord tx(std::int64_t d, std::int64_t c, double x, double y, double amount,
                     double vx = 0.0, double vy = 0.0) {
  return {d, c, {x}, {y}, amount, {vx}, {vy}};
}

}  // namespace

TEST_CASE("field sample bins amounts to the nearest node pair") {
  const Grid g = efield::espace::build_grid(EconomicSpace::cube(1, 0.0, 1.0), 5, Boundary::reflective);
  const std::vector<TransactionRecord> t{tx(1, 2, 0.26, 0.74, 3.0), tx(1, 3, 0.24, 0.76, 1.0)};
  const auto cl = field_sample(t, g);
  const std::size_t idx[] = {1, 3};
  const std::size_t node = g.ravel(idx);
  CHECK(cl[node] * g.cell_volume(node) == doctest::Approx(4.0));
  CHECK(integrate_all(cl) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("field impulses weight debtor and creditor velocities separately") {
  const Grid g = efield::espace::build_grid(EconomicSpace::cube(1, 0.0, 1.0), 3, Boundary::reflective);
  const std::vector<TransactionRecord> t{tx(1, 2, 0.0, 1.0, 2.0, 0.5, -1.0)};
  const auto imp = field_impulses(t, g);
  const std::size_t idx[] = {0, 2};
  const std::size_t node = g.ravel(idx);
  const double w = g.cell_volume(node);
  CHECK(imp.px.at(0, node) * w == doctest::Approx(1.0));
  CHECK(imp.py.at(0, node) * w == doctest::Approx(-2.0));
}

TEST_CASE("out-of-bounds records are rejected with their index") {
  const Grid g = efield::espace::build_grid(EconomicSpace::cube(1, 0.0, 1.0), 4, Boundary::periodic);
  const std::vector<TransactionRecord> t{tx(1, 2, 0.5, 0.5, 1.0), tx(1, 2, 0.5, 1.5, 1.0)};
  try {
    field_sample(t, g);
    FAIL("expected OutOfBounds");
  } catch (const efield::OutOfBounds& e) {
    CHECK(e.index() == 1);
  }
  const std::vector<TransactionRecord> neg{tx(1, 2, 0.5, 0.5, -1.0)};
  CHECK_THROWS_AS(field_sample(neg, g), efield::InvalidArgument);
}

TEST_CASE("counterparty sums filter by id") {
  const std::vector<TransactionRecord> t{tx(1, 2, 0.1, 0.2, 1.0), tx(1, 3, 0.1, 0.2, 2.0),
                                         tx(3, 2, 0.1, 0.2, 4.0)};
  CHECK(loans_received(t, 2) == 5.0);
  CHECK(credits_issued(t, 1) == 3.0);
  CHECK(credits_issued(t, 2) == 0.0);
}

TEST_CASE("counterparty integrals satisfy Fubini") {
  const auto space = EconomicSpace::cube(1, 0.0, 1.0);
  const Grid g = efield::espace::build_grid(space, 9, Boundary::reflective);
  const auto t = generate_transactions(space, 300, 1.0, 0.1, 99);
  const auto cl = field_sample(t, g);
  const auto ci = counterparty_integrals(cl);
  CHECK(ci.loans.grid().rank() == 1);
  CHECK(integrate_all(ci.loans) == doctest::Approx(ci.total).epsilon(1e-13));
  CHECK(integrate_all(ci.credits) == doctest::Approx(ci.total).epsilon(1e-13));
}

TEST_CASE("macro densities, impulses and velocities") {
  const auto space = EconomicSpace::cube(1, 0.0, 1.0);
  const Grid g = efield::espace::build_space_grid(space, 3, Boundary::reflective);
  std::vector<EParticle> p{{1, {0.0}, {2.0}, {1.0, 5.0}}, {2, {0.1}, {4.0}, {3.0, 0.0}}};
  const auto st = macro_state(p, 2, g);
  // Both particles bin to node 0 with weight 0.25.
  CHECK(st.density[0][0] == doctest::Approx(16.0));
  CHECK(st.impulse[0].at(0, 0) == doctest::Approx(4.0 * 14.0));
  CHECK(st.velocity[0].at(0, 0) == doctest::Approx(3.5));
  CHECK(st.velocity[0].at(0, 1) == 0.0);  // empty node
  CHECK(st.velocity[1].at(0, 0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(macro_density(p, 2, g), efield::InvalidArgument);
}

TEST_CASE("ensemble density averages realizations independently of thread count") {
  const auto space = EconomicSpace::cube(1, 0.0, 1.0);
  const Grid g = efield::espace::build_grid(space, 8, Boundary::periodic);
  const auto ens = generate_ensemble(space, 6, 200, 2.0, 0.3, 5);
  efield::set_thread_count(1);
  const auto one = field_density(ens, g);
  efield::set_thread_count(3);
  const auto three = field_density(ens, g);
  efield::set_thread_count(1);
  CHECK(std::equal(one.cl.values().begin(), one.cl.values().end(), three.cl.values().begin()));
  CHECK(std::equal(one.vx.values().begin(), one.vx.values().end(), three.vx.values().begin()));

  double mean_sum = 0.0;
  for (const auto& r : ens.realizations)
    for (const auto& t : r) mean_sum += t.amount;
  mean_sum /= 6.0;
  CHECK(integrate_all(one.cl) == doctest::Approx(mean_sum).epsilon(1e-12));
  CHECK(one.velocity().components() == 2);
}

TEST_CASE("generators are reproducible") {
  const auto space = EconomicSpace::cube(2, -1.0, 1.0);
  const auto a = generate_transactions(space, 50, 1.0, 0.2, 42);
  const auto b = generate_transactions(space, 50, 1.0, 0.2, 42);
  const auto c = generate_transactions(space, 50, 1.0, 0.2, 43);
  CHECK(a.size() == 50);
  CHECK(a[17].amount == b[17].amount);
  CHECK(a[17].creditor_coords == b[17].creditor_coords);
  CHECK(a[17].amount != c[17].amount);
  for (const auto& r : a) CHECK(space.contains(r.debtor_coords));
}
