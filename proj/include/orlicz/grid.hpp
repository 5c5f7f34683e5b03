#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/point.hpp"

namespace orlicz {

/// Uniform tensor grid on an interval or a rectangle. Nodes are stored row-major (axis 0 slowest).
class DomainGrid {
 public:
  DomainGrid(int dim, std::array<double, 2> lo, std::array<double, 2> hi, std::array<std::size_t, 2> nodes);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double lo(int axis) const { return lo_[axis]; }
  [[nodiscard]] double hi(int axis) const { return hi_[axis]; }
  [[nodiscard]] std::size_t nodes(int axis) const { return nodes_[axis]; }
  [[nodiscard]] double spacing(int axis) const { return h_[axis]; }
  [[nodiscard]] double measure() const { return measure_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }

  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  /// Trapezoid weights; they sum to measure().
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

  [[nodiscard]] std::size_t index(std::size_t i0, std::size_t i1 = 0) const { return i0 * nodes_[1] + i1; }

  [[nodiscard]] std::string header() const;
  bool operator==(const DomainGrid& other) const;

 private:
  int dim_;
  std::array<double, 2> lo_, hi_, h_;
  std::array<std::size_t, 2> nodes_;
  double measure_;
  std::vector<Point> points_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const DomainGrid>;

/// Throws InputError unless dim is 1 or 2, every axis has hi > lo and at least 3 nodes.
GridPtr make_grid(int dim, const std::vector<std::pair<double, double>>& extents,
                  const std::vector<std::size_t>& nodes);

/// Nodal values on a grid.
struct GridFunction {
  GridPtr grid;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(GridPtr g, std::vector<double> v);

  static GridFunction constant(GridPtr g, double c);
  static GridFunction zero(GridPtr g) { return constant(std::move(g), 0.0); }

  [[nodiscard]] std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& a);
GridFunction operator-(const GridFunction& a);

/// Per-node gradient components; components[k] has one entry per node.
struct VectorField {
  GridPtr grid;
  std::array<std::vector<double>, 2> components;

  /// Euclidean length per node.
  [[nodiscard]] std::vector<double> magnitude() const;
};

/// Central differences; along an axis, boundary nodes reflect the neighbour as a ghost value,
/// which makes that derivative component vanish there.
VectorField gradient(const GridFunction& u);
/// Transpose of gradient as a linear map on nodal vectors.
std::vector<double> gradient_adjoint(const VectorField& w);

/// Raw-array forms used on hot paths; sizes must match the grid.
void gradient_into(const DomainGrid& g, const std::vector<double>& u, std::array<std::vector<double>, 2>& out);
void gradient_adjoint_into(const DomainGrid& g, const std::array<std::vector<double>, 2>& w,
                           std::vector<double>& out);

/// Trapezoidal rule.
double integrate(const GridFunction& f);
double integrate(const DomainGrid& g, const std::vector<double>& f);

/// Uniform noise in [-1, 1], `smoothness` passes of a [1/4, 1/2, 1/4] filter along every axis,
/// rescaled so that the sup-norm equals `amplitude`.
GridFunction random_function(GridPtr grid, std::uint64_t seed, double amplitude, int smoothness);

/// height * prod cos^2 bump with support the middle half of every axis.
GridFunction bump_function(GridPtr grid, double height);

/// Sample a function of the node coordinates.
template <class F>
GridFunction sample(GridPtr grid, F&& f) {
  std::vector<double> v;
  v.reserve(grid->size());
  for (const auto& x : grid->points()) v.push_back(f(x));
  return GridFunction(std::move(grid), std::move(v));
}

/// "dim n1 [n2] lo1 hi1 [lo2 hi2]" then one value per line (shortest round-trip decimal).
std::string solution_to_text(const GridFunction& u);
GridFunction solution_from_text(const std::string& text, const std::string& source = "solution");
void write_solution(const std::string& path, const GridFunction& u);
GridFunction read_solution(const std::string& path);

}  // namespace orlicz
