#pragma once

// Economic space, its tensor grids, and the discrete operators on them.
//
// A point of economic space is a vector of n risk grades. Economic fields
// depend on a pair of such points z = (x, y), so they live on a grid of rank
// 2n whose first n axes carry x and last n axes carry y. Nodes are stored in
// row-major order (axis 0 slowest).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace efield::espace {

enum class Boundary { periodic, reflective };

std::string_view to_string(Boundary kind);
// Throws InvalidArgument for unknown labels.
Boundary parse_boundary(std::string_view label);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

class EconomicSpace {
 public:
  // Throws InvalidArgument when bounds is empty or any axis has lo >= hi.
  explicit EconomicSpace(std::vector<Interval> bounds);
  static EconomicSpace cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return bounds_.size(); }
  const Interval& bounds(std::size_t axis) const { return bounds_.at(axis); }
  std::span<const Interval> bounds() const { return bounds_; }
  bool contains(std::span<const double> point) const;

  bool operator==(const EconomicSpace&) const = default;

 private:
  std::vector<Interval> bounds_;
};

struct Axis {
  Interval bounds;
  std::size_t nodes = 0;
  double spacing = 0.0;
  bool operator==(const Axis&) const = default;
};

class Grid {
 public:
  Grid() = default;
  Grid(std::vector<Axis> axes, Boundary kind);

  std::size_t rank() const { return axes_.size(); }
  const Axis& axis(std::size_t a) const { return axes_[a]; }
  Boundary boundary() const { return boundary_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t stride(std::size_t a) const { return strides_[a]; }
  double spacing(std::size_t a) const { return axes_[a].spacing; }
  double min_spacing() const;

  double coord(std::size_t a, std::size_t i) const {
    return axes_[a].bounds.lo + static_cast<double>(i) * axes_[a].spacing;
  }
  // Quadrature weight of node i along axis a: rectangle rule on periodic
  // axes, trapezoid rule on reflective ones.
  double weight(std::size_t a, std::size_t i) const;
  // Product of per-axis weights; integrating a field sums value * cell_volume.
  double cell_volume(std::size_t flat) const;

  void unravel(std::size_t flat, std::span<std::size_t> index) const;
  std::size_t ravel(std::span<const std::size_t> index) const;
  void node_coords(std::size_t flat, std::span<double> out) const;

  // Nearest node along an axis; x must lie within the axis bounds.
  std::size_t nearest_node(std::size_t a, double x) const;

  // Grid spanned by a subset of this grid's axes, in the given order.
  Grid restrict_to(std::span<const std::size_t> axes) const;

  bool operator==(const Grid& other) const {
    return boundary_ == other.boundary_ && axes_ == other.axes_;
  }

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  Boundary boundary_ = Boundary::periodic;
  std::size_t node_count_ = 1;
};

// Grid on R^{2n} for economic fields: axes (x_1..x_n, y_1..y_n).
// Periodic axes have m nodes on [lo, hi) with dx = X/m; reflective axes have m
// nodes on [lo, hi] with dx = X/(m-1). Throws InvalidArgument when m < 3.
Grid build_grid(const EconomicSpace& space, std::size_t nodes_per_axis, Boundary kind);
// Same discretization on R^n, for macro densities of single points.
Grid build_space_grid(const EconomicSpace& space, std::size_t nodes_per_axis, Boundary kind);

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(Grid grid, double fill = 0.0);
  ScalarField(Grid grid, std::vector<double> values);

  // Evaluates fn(coords) at every node.
  template <class Fn>
  static ScalarField sample(const Grid& grid, Fn&& fn) {
    ScalarField f(grid);
    std::vector<double> z(grid.rank());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      grid.node_coords(i, z);
      f.values_[i] = fn(std::span<const double>(z));
    }
    return f;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Component-major storage: all nodes of component 0, then component 1, ...
class VectorField {
 public:
  VectorField() = default;
  VectorField(Grid grid, std::size_t components, double fill = 0.0);

  const Grid& grid() const { return grid_; }
  std::size_t components() const { return components_; }
  std::size_t node_count() const { return grid_.node_count(); }
  std::span<double> component(std::size_t c);
  std::span<const double> component(std::size_t c) const;
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& at(std::size_t c, std::size_t node) { return values_[c * grid_.node_count() + node]; }
  double at(std::size_t c, std::size_t node) const {
    return values_[c * grid_.node_count() + node];
  }

 private:
  Grid grid_;
  std::size_t components_ = 0;
  std::vector<double> values_;
};

// d f / d z_axis with second-order central differences; periodic wrap or
// second-order one-sided stencils on reflective boundaries.
void partial(const Grid& grid, std::span<const double> f, std::size_t axis, std::span<double> out);

VectorField gradient(const ScalarField& f);
// Requires w.components() == grid rank.
ScalarField divergence(const VectorField& w);
// Three-point stencil per axis; one-sided four-point stencil on reflective
// boundaries (three-point when the axis has only three nodes).
ScalarField laplacian(const ScalarField& f);

// Integrates over the listed axes; the result lives on the remaining axes.
// Integrating every axis yields a rank-0 field holding a single value.
ScalarField integrate(const ScalarField& f, std::span<const std::size_t> axes);
double integrate_all(const ScalarField& f);

// Trapezoid quadrature over the box [lo_a, lo_a + lengths[a]] on every axis.
// Each length must be a whole number of cells; on periodic axes it may not
// exceed the period and nodes wrap around.
double integrate_window(const ScalarField& f, std::span<const double> lengths);

}  // namespace efield::espace
