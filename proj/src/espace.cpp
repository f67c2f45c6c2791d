#include "efield/espace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "efield/error.hpp"
#include "efield/simd/kernels.hpp"

namespace efield::espace {

std::string_view to_string(Boundary kind) {
  return kind == Boundary::periodic ? "periodic" : "reflective";
}

Boundary parse_boundary(std::string_view label) {
  if (label == "periodic") return Boundary::periodic;
  if (label == "reflective") return Boundary::reflective;
  throw InvalidArgument("unknown boundary kind '" + std::string(label) +
                        "' (expected periodic or reflective)");
}

EconomicSpace::EconomicSpace(std::vector<Interval> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw InvalidArgument("economic space needs at least one risk axis");
  for (std::size_t a = 0; a < bounds_.size(); ++a) {
    const auto& b = bounds_[a];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
      throw InvalidArgument("degenerate bounds on axis " + std::to_string(a) + ": [" +
                            std::to_string(b.lo) + ", " + std::to_string(b.hi) + "]");
  }
}

EconomicSpace EconomicSpace::cube(std::size_t dim, double lo, double hi) {
  return EconomicSpace(std::vector<Interval>(dim, Interval{lo, hi}));
}

bool EconomicSpace::contains(std::span<const double> point) const {
  if (point.size() != bounds_.size()) return false;
  for (std::size_t a = 0; a < point.size(); ++a)
    if (!(point[a] >= bounds_[a].lo && point[a] <= bounds_[a].hi)) return false;
  return true;
}

Grid::Grid(std::vector<Axis> axes, Boundary kind) : axes_(std::move(axes)), boundary_(kind) {
  strides_.assign(axes_.size(), 1);
  node_count_ = 1;
  for (std::size_t a = axes_.size(); a-- > 0;) {
    if (axes_[a].nodes < 1 || !(axes_[a].spacing > 0.0))
      throw InvalidArgument("grid axis " + std::to_string(a) + " has no nodes or spacing");
    strides_[a] = node_count_;
    node_count_ *= axes_[a].nodes;
  }
}

double Grid::min_spacing() const {
  double h = axes_.empty() ? 0.0 : axes_[0].spacing;
  for (const auto& ax : axes_) h = std::min(h, ax.spacing);
  return h;
}

double Grid::weight(std::size_t a, std::size_t i) const {
  const auto& ax = axes_[a];
  if (boundary_ == Boundary::reflective && (i == 0 || i + 1 == ax.nodes))
    return 0.5 * ax.spacing;
  return ax.spacing;
}

double Grid::cell_volume(std::size_t flat) const {
  double v = 1.0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const std::size_t i = (flat / strides_[a]) % axes_[a].nodes;
    v *= weight(a, i);
  }
  return v;
}

void Grid::unravel(std::size_t flat, std::span<std::size_t> index) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) index[a] = (flat / strides_[a]) % axes_[a].nodes;
}

std::size_t Grid::ravel(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) flat += index[a] * strides_[a];
  return flat;
}

void Grid::node_coords(std::size_t flat, std::span<double> out) const {
  for (std::size_t a = 0; a < axes_.size(); ++a)
    out[a] = coord(a, (flat / strides_[a]) % axes_[a].nodes);
}

std::size_t Grid::nearest_node(std::size_t a, double x) const {
  const auto& ax = axes_[a];
  const double r = std::nearbyint((x - ax.bounds.lo) / ax.spacing);
  const auto m = static_cast<long long>(ax.nodes);
  auto i = static_cast<long long>(r);
  if (boundary_ == Boundary::periodic) {
    i %= m;
    if (i < 0) i += m;
  } else {
    i = std::clamp(i, 0LL, m - 1);
  }
  return static_cast<std::size_t>(i);
}

Grid Grid::restrict_to(std::span<const std::size_t> axes) const {
  std::vector<Axis> kept;
  kept.reserve(axes.size());
  for (std::size_t a : axes) kept.push_back(axes_.at(a));
  return Grid(std::move(kept), boundary_);
}

namespace {

Axis make_axis(const Interval& b, std::size_t m, Boundary kind) {
  const double denom = kind == Boundary::periodic ? static_cast<double>(m)
                                                  : static_cast<double>(m - 1);
  return Axis{b, m, b.length() / denom};
}

void check_nodes(std::size_t m) {
  if (m < 3)
    throw InvalidArgument("nodes_per_axis must be at least 3 (got " + std::to_string(m) + ")");
}

}  // namespace

Grid build_grid(const EconomicSpace& space, std::size_t nodes_per_axis, Boundary kind) {
  check_nodes(nodes_per_axis);
  std::vector<Axis> axes;
  for (int block = 0; block < 2; ++block)
    for (const auto& b : space.bounds()) axes.push_back(make_axis(b, nodes_per_axis, kind));
  return Grid(std::move(axes), kind);
}

Grid build_space_grid(const EconomicSpace& space, std::size_t nodes_per_axis, Boundary kind) {
  check_nodes(nodes_per_axis);
  std::vector<Axis> axes;
  for (const auto& b : space.bounds()) axes.push_back(make_axis(b, nodes_per_axis, kind));
  return Grid(std::move(axes), kind);
}

ScalarField::ScalarField(Grid grid, double fill)
    : grid_(std::move(grid)), values_(grid_.node_count(), fill) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw ShapeMismatch("scalar field has " + std::to_string(values_.size()) +
                        " values for " + std::to_string(grid_.node_count()) + " nodes");
}

VectorField::VectorField(Grid grid, std::size_t components, double fill)
    : grid_(std::move(grid)),
      components_(components),
      values_(components * grid_.node_count(), fill) {}

std::span<double> VectorField::component(std::size_t c) {
  return std::span<double>(values_).subspan(c * grid_.node_count(), grid_.node_count());
}

std::span<const double> VectorField::component(std::size_t c) const {
  return std::span<const double>(values_).subspan(c * grid_.node_count(), grid_.node_count());
}

namespace {

// Geometry of one axis seen as (outer, axis, inner) with inner = stride.
struct AxisLayout {
  std::size_t m;
  std::size_t s;
  std::size_t outer;
};

AxisLayout layout(const Grid& grid, std::size_t axis) {
  const std::size_t m = grid.axis(axis).nodes;
  const std::size_t s = grid.stride(axis);
  return {m, s, grid.node_count() / (m * s)};
}

}  // namespace

void partial(const Grid& grid, std::span<const double> f, std::size_t axis,
             std::span<double> out) {
  if (axis >= grid.rank()) throw InvalidArgument("derivative axis out of range");
  if (f.size() != grid.node_count() || out.size() != grid.node_count())
    throw ShapeMismatch("derivative operand does not match grid");
  const auto& k = simd::kernels();
  const auto [m, s, outer] = layout(grid, axis);
  const double c = 1.0 / (2.0 * grid.spacing(axis));
  const double* src = f.data();
  double* dst = out.data();
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * m * s;
    // Interior nodes 1..m-2 form one contiguous block; neighbours sit at +-s.
    k.diff(dst + base + s, src + base + 2 * s, src + base, c, (m - 2) * s);
    const double* first = src + base;
    const double* last = src + base + (m - 1) * s;
    if (grid.boundary() == Boundary::periodic) {
      k.diff(dst + base, first + s, last, c, s);
      k.diff(dst + base + (m - 1) * s, first, last - s, c, s);
    } else {
      k.one_sided(dst + base, first, first + s, first + 2 * s, c, s);
      k.one_sided(dst + base + (m - 1) * s, last, last - s, last - 2 * s, -c, s);
    }
  }
}

VectorField gradient(const ScalarField& f) {
  const Grid& grid = f.grid();
  VectorField g(grid, grid.rank());
  for (std::size_t a = 0; a < grid.rank(); ++a) partial(grid, f.values(), a, g.component(a));
  return g;
}

ScalarField divergence(const VectorField& w) {
  const Grid& grid = w.grid();
  if (w.components() != grid.rank())
    throw ShapeMismatch("divergence needs one component per grid axis");
  ScalarField out(grid);
  if (grid.rank() == 0) return out;
  partial(grid, w.component(0), 0, out.values());
  std::vector<double> tmp(grid.node_count());
  const auto& k = simd::kernels();
  for (std::size_t a = 1; a < grid.rank(); ++a) {
    partial(grid, w.component(a), a, tmp);
    k.axpy(out.values().data(), 1.0, tmp.data(), tmp.size());
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& grid = f.grid();
  ScalarField out(grid);
  const auto& k = simd::kernels();
  const double* src = f.values().data();
  double* dst = out.values().data();
  for (std::size_t axis = 0; axis < grid.rank(); ++axis) {
    const auto [m, s, outer] = layout(grid, axis);
    const double c = 1.0 / (grid.spacing(axis) * grid.spacing(axis));
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t base = o * m * s;
      k.second_diff_acc(dst + base + s, src + base + 2 * s, src + base + s, src + base, c,
                        (m - 2) * s);
      const double* first = src + base;
      const double* last = src + base + (m - 1) * s;
      double* out_first = dst + base;
      double* out_last = dst + base + (m - 1) * s;
      if (grid.boundary() == Boundary::periodic) {
        k.second_diff_acc(out_first, first + s, first, last, c, s);
        k.second_diff_acc(out_last, first, last, last - s, c, s);
      } else if (m >= 4) {
        k.one_sided2_acc(out_first, first, first + s, first + 2 * s, first + 3 * s, c, s);
        k.one_sided2_acc(out_last, last, last - s, last - 2 * s, last - 3 * s, c, s);
      } else {
        // FIXME: first-order at the boundary for three-node reflective axes.
        k.second_diff_acc(out_first, first + 2 * s, first + s, first, c, s);
        k.second_diff_acc(out_last, last, last - s, last - 2 * s, c, s);
      }
    }
  }
  return out;
}

ScalarField integrate(const ScalarField& f, std::span<const std::size_t> axes) {
  const Grid& grid = f.grid();
  std::vector<bool> integrated(grid.rank(), false);
  for (std::size_t a : axes) {
    if (a >= grid.rank()) throw InvalidArgument("integration axis out of range");
    integrated[a] = true;
  }
  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < grid.rank(); ++a)
    if (!integrated[a]) kept.push_back(a);
  if (kept.size() == grid.rank()) return f;

  Grid reduced = grid.restrict_to(kept);
  ScalarField out(reduced);
  std::vector<std::size_t> index(grid.rank());
  std::vector<std::size_t> sub(kept.size());
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    grid.unravel(i, index);
    double w = 1.0;
    for (std::size_t a = 0; a < grid.rank(); ++a)
      if (integrated[a]) w *= grid.weight(a, index[a]);
    for (std::size_t j = 0; j < kept.size(); ++j) sub[j] = index[kept[j]];
    out[reduced.ravel(sub)] += w * f[i];
  }
  return out;
}

double integrate_all(const ScalarField& f) {
  const Grid& grid = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.node_count(); ++i) total += grid.cell_volume(i) * f[i];
  return total;
}

double integrate_window(const ScalarField& f, std::span<const double> lengths) {
  const Grid& grid = f.grid();
  if (lengths.size() != grid.rank())
    throw ShapeMismatch("window needs one length per grid axis");
  // Per-axis list of (node, weight) pairs covering the window.
  std::vector<std::vector<std::pair<std::size_t, double>>> taps(grid.rank());
  for (std::size_t a = 0; a < grid.rank(); ++a) {
    const auto& ax = grid.axis(a);
    const double cells = lengths[a] / ax.spacing;
    const double rounded = std::nearbyint(cells);
    if (!(lengths[a] > 0.0) || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
      throw InvalidArgument("window length on axis " + std::to_string(a) +
                            " is not a whole number of cells");
    const auto n_cells = static_cast<std::size_t>(rounded);
    const bool periodic = grid.boundary() == Boundary::periodic;
    if ((periodic && n_cells > ax.nodes) || (!periodic && n_cells > ax.nodes - 1))
      throw InvalidArgument("window exceeds the domain on axis " + std::to_string(a));
    std::vector<double> w(ax.nodes, 0.0);
    for (std::size_t c = 0; c < n_cells; ++c) {
      w[c % ax.nodes] += 0.5 * ax.spacing;
      w[(c + 1) % ax.nodes] += 0.5 * ax.spacing;
    }
    for (std::size_t i = 0; i < ax.nodes; ++i)
      if (w[i] != 0.0) taps[a].emplace_back(i, w[i]);
  }
  double total = 0.0;
  std::vector<std::size_t> pos(grid.rank(), 0);
  if (grid.rank() == 0) return f[0];
  while (true) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t a = 0; a < grid.rank(); ++a) {
      w *= taps[a][pos[a]].second;
      flat += taps[a][pos[a]].first * grid.stride(a);
    }
    total += w * f[flat];
    std::size_t a = grid.rank();
    while (a-- > 0) {
      if (++pos[a] < taps[a].size()) break;
      pos[a] = 0;
      if (a == 0) return total;
    }
  }
}

}  // namespace efield::espace
