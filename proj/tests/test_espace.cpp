#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "efield/error.hpp"
#include "efield/espace.hpp"

using namespace efield::espace;
using efield::InvalidArgument;
using efield::ShapeMismatch;

namespace {

constexpr double kPi = std::numbers::pi;

double max_err(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("economic space validates its bounds") {
  CHECK_THROWS_AS(EconomicSpace({}), InvalidArgument);
  CHECK_THROWS_AS(EconomicSpace({{1.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(EconomicSpace({{0.0, 1.0}, {2.0, -1.0}}), InvalidArgument);
  const auto s = EconomicSpace::cube(2, 0.0, 3.0);
  CHECK(s.dim() == 2);
  CHECK(s.bounds(1).hi == 3.0);
  const double inside[] = {0.0, 3.0};
  const double outside[] = {1.0, 3.5};
  CHECK(s.contains(inside));
  CHECK_FALSE(s.contains(outside));
}

TEST_CASE("boundary labels round-trip") {
  CHECK(parse_boundary("periodic") == Boundary::periodic);
  CHECK(parse_boundary("reflective") == Boundary::reflective);
  CHECK(to_string(Boundary::reflective) == "reflective");
  CHECK_THROWS_AS(parse_boundary("open"), InvalidArgument);
}

TEST_CASE("field grids double the space and use the documented spacing") {
  const auto space = EconomicSpace::cube(1, 0.0, 2.0);
  const Grid p = build_grid(space, 16, Boundary::periodic);
  CHECK(p.rank() == 2);
  CHECK(p.node_count() == 256);
  CHECK(p.spacing(0) == doctest::Approx(2.0 / 16));
  CHECK(p.stride(0) == 16);
  CHECK(p.stride(1) == 1);
  const Grid r = build_grid(space, 17, Boundary::reflective);
  CHECK(r.spacing(1) == doctest::Approx(2.0 / 16));
  CHECK(r.coord(1, 16) == doctest::Approx(2.0));
  CHECK(build_space_grid(space, 8, Boundary::periodic).rank() == 1);
  CHECK_THROWS_AS(build_grid(space, 2, Boundary::periodic), InvalidArgument);
}

TEST_CASE("quadrature weights sum to the domain volume") {
  const EconomicSpace space({{0.0, 2.0}, {-1.0, 1.0}});
  for (Boundary b : {Boundary::periodic, Boundary::reflective}) {
    const Grid g = build_grid(space, 9, b);
    double vol = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) vol += g.cell_volume(i);
    CHECK(vol == doctest::Approx(16.0).epsilon(1e-12));
  }
}

TEST_CASE("ravel and unravel are inverse") {
  const Grid g = build_grid(EconomicSpace::cube(1, 0.0, 1.0), 5, Boundary::reflective);
  std::vector<std::size_t> idx(2);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    g.unravel(i, idx);
    CHECK(g.ravel(idx) == i);
  }
  g.unravel(7, idx);
  CHECK(idx[0] == 1);
  CHECK(idx[1] == 2);
}

TEST_CASE("nearest node rounds, wraps on periodic axes and clamps on reflective ones") {
  const auto space = EconomicSpace::cube(1, 0.0, 1.0);
  const Grid p = build_grid(space, 10, Boundary::periodic);
  CHECK(p.nearest_node(0, 0.0) == 0);
  CHECK(p.nearest_node(0, 0.14) == 1);
  CHECK(p.nearest_node(0, 0.16) == 2);
  CHECK(p.nearest_node(0, 0.97) == 0);  // 1.0 is node 0 again
  const Grid r = build_grid(space, 11, Boundary::reflective);
  CHECK(r.nearest_node(1, 1.0) == 10);
  CHECK(r.nearest_node(1, 0.96) == 10);
}

TEST_CASE("restricting a grid keeps the chosen axes") {
  const Grid g = build_grid(EconomicSpace({{0.0, 1.0}, {0.0, 2.0}}), 4, Boundary::periodic);
  const std::size_t axes[] = {1, 3};
  const Grid h = g.restrict_to(axes);
  CHECK(h.rank() == 2);
  CHECK(h.axis(0) == g.axis(1));
  CHECK(h.axis(1) == g.axis(3));
}

TEST_CASE("field constructors check sizes") {
  const Grid g = build_grid(EconomicSpace::cube(1, 0.0, 1.0), 4, Boundary::periodic);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(15)), ShapeMismatch);
  VectorField w(g, 2, 1.5);
  CHECK(w.component(1).size() == 16);
  CHECK(w.at(1, 3) == 1.5);
}

TEST_CASE("derivatives of constants vanish exactly") {
  for (Boundary b : {Boundary::periodic, Boundary::reflective}) {
    const Grid g = build_grid(EconomicSpace::cube(1, 0.0, 1.0), 7, b);
    const ScalarField f(g, 3.25);
    const auto grad = gradient(f);
    for (double x : grad.values()) CHECK(x == 0.0);
    const auto lap = laplacian(f);
    for (double x : lap.values()) CHECK(x == 0.0);
    const auto div = divergence(VectorField(g, 2, -0.75));
    for (double x : div.values()) CHECK(x == 0.0);
  }
}

TEST_CASE("periodic central differences are second order") {
  const auto space = EconomicSpace::cube(1, 0.0, 1.0);
  double prev = 0.0;
  for (std::size_t m : {16, 32, 64}) {
    const Grid g = build_grid(space, m, Boundary::periodic);
    auto f = ScalarField::sample(g, [](std::span<const double> z) {
      return std::sin(2 * kPi * z[0]) * std::cos(2 * kPi * z[1]);
    });
    std::vector<double> d(g.node_count());
    partial(g, f.values(), 0, d);
    auto exact = ScalarField::sample(g, [](std::span<const double> z) {
      return 2 * kPi * std::cos(2 * kPi * z[0]) * std::cos(2 * kPi * z[1]);
    });
    const double err = max_err(d, to_vec(exact.values()));
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("reflective one-sided differences are second order at the walls") {
  const auto space = EconomicSpace::cube(1, 0.0, 1.0);
  double prev_d = 0.0;
  double prev_l = 0.0;
  for (std::size_t m : {17, 33, 65}) {
    const Grid g = build_grid(space, m, Boundary::reflective);
    auto f = ScalarField::sample(g, [](std::span<const double> z) {
      return std::exp(z[0]) + z[1] * z[1] * z[1];
    });
    std::vector<double> d(g.node_count());
    partial(g, f.values(), 1, d);
    auto exact = ScalarField::sample(g, [](std::span<const double> z) { return 3 * z[1] * z[1]; });
    const double err_d = max_err(d, to_vec(exact.values()));
    const auto lap = laplacian(f);
    auto lap_exact =
        ScalarField::sample(g, [](std::span<const double> z) { return std::exp(z[0]) + 6 * z[1]; });
    const double err_l = max_err(to_vec(lap.values()), to_vec(lap_exact.values()));
    if (prev_d > 0.0) {
      CHECK(prev_d / err_d == doctest::Approx(4.0).epsilon(0.15));
      CHECK(prev_l / err_l == doctest::Approx(4.0).epsilon(0.15));
    }
    prev_d = err_d;
    prev_l = err_l;
  }
}

TEST_CASE("divergence sums partials") {
  const Grid g = build_grid(EconomicSpace::cube(1, 0.0, 1.0), 64, Boundary::periodic);
  VectorField w(g, 2);
  std::vector<double> z(2);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    g.node_coords(i, z);
    w.at(0, i) = std::sin(2 * kPi * z[0]);
    w.at(1, i) = std::sin(2 * kPi * z[1]);
  }
  const auto div = divergence(w);
  double err = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    g.node_coords(i, z);
    err = std::max(err, std::abs(div[i] - 2 * kPi * (std::cos(2 * kPi * z[0]) +
                                                      std::cos(2 * kPi * z[1]))));
  }
  CHECK(err < 0.025);
  CHECK_THROWS_AS(divergence(VectorField(g, 3)), ShapeMismatch);
}

TEST_CASE("integration over axes matches closed forms") {
  const Grid g = build_grid(EconomicSpace::cube(1, 0.0, 1.0), 201, Boundary::reflective);
  auto f = ScalarField::sample(g, [](std::span<const double> z) { return z[0] * z[1] * z[1]; });
  // Trapezoid error for x y^2 is O(h^2).
  CHECK(integrate_all(f) == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
  const std::size_t y_axis[] = {1};
  const ScalarField fx = integrate(f, y_axis);
  CHECK(fx.grid().rank() == 1);
  CHECK(fx[200] == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  const std::size_t all[] = {0, 1};
  const ScalarField total = integrate(f, all);
  CHECK(total.grid().rank() == 0);
  CHECK(total.size() == 1);
  CHECK(total[0] == doctest::Approx(integrate_all(f)));
}

TEST_CASE("window integration wraps periodic axes") {
  const Grid g = build_grid(EconomicSpace::cube(1, 0.0, 2.0), 128, Boundary::periodic);
  auto f = ScalarField::sample(g, [](std::span<const double> z) {
    return std::cos(kPi * (z[0] + z[1]));
  });
  const double L[] = {1.0, 1.0};
  // Integral of cos(pi (x + y)) over the unit square is -4 / pi^2.
  CHECK(integrate_window(f, L) == doctest::Approx(-4.0 / (kPi * kPi)).epsilon(1e-3));
  const double whole[] = {2.0, 2.0};
  CHECK(std::abs(integrate_window(f, whole)) < 1e-12);
  const double off_grid[] = {1.01, 1.0};
  CHECK_THROWS_AS(integrate_window(f, off_grid), InvalidArgument);
  const double too_long[] = {2.5, 1.0};
  CHECK_THROWS_AS(integrate_window(f, too_long), InvalidArgument);
}
