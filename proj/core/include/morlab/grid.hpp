#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace morlab {

// Raised for violated preconditions and malformed inputs. The message names
// the failing relation or node.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Point = std::array<double, 3>;
using Index = std::array<int, 3>;

// Uniform tensor grid on [-W, W)^dim. Node i sits at -W + i*h and owns the
// cell [x_i - h/2, x_i + h/2), so a node sits on the origin when m is even.
struct GridSpec {
  int dim = 1;
  double half_width = 1.0;
  int points_per_axis = 4;
  bool periodic = false;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  double cell_volume() const;
  double box_volume() const;
  std::size_t size() const;

  double coord(int i) const { return -half_width + i * spacing(); }
  Index unravel(std::size_t flat) const;
  std::size_t ravel(const Index& idx) const;
  Point point(std::size_t flat) const;
  // Index of the node nearest to x along one axis, clamped to the grid.
  int nearest(double x) const;
  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, double half_width, int points_per_axis,
                   bool periodic);

// Point values with uniform quadrature weight h^dim.
struct SampledFunction {
  GridSpec grid;
  std::vector<double> values;
  double weight = 0.0;

  SampledFunction() = default;
  SampledFunction(const GridSpec& g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  double integral() const;
  double abs_integral() const;
  double max_abs() const;
};

using ScalarField = std::function<double(const Point&)>;

// Evaluates `fn` at every node. Rejects non-finite values, naming the node.
SampledFunction sample(const ScalarField& fn, const GridSpec& grid);
SampledFunction sample_table(std::vector<double> values, const GridSpec& grid);
SampledFunction zeros(const GridSpec& grid);

// Axis-aligned cube made of whole cells: lower cell index and side in cells.
struct Cube {
  Index lo{0, 0, 0};
  int side = 1;

  std::size_t cell_count(int dim) const;
  double side_length(const GridSpec& g) const { return side * g.spacing(); }
  double measure(const GridSpec& g) const;
  Point center(const GridSpec& g) const;
  bool contains(const Index& idx, int dim) const;
  bool inside(const GridSpec& g) const;
  bool operator==(const Cube&) const = default;
};

struct CubeFamily {
  std::vector<Cube> cubes;
  std::vector<int> scales;  // side lengths in cells, largest first

  std::size_t size() const { return cubes.size(); }
  bool empty() const { return cubes.empty(); }
};

// Dyadic cubes of sides m, m/2, ..., m/2^(max_scales-1) cells, each scale
// accompanied by shifted copies at offsets side*j/(t+1), j = 1..t, taken in
// every axis combination. Scales stop early once the side would drop below
// one cell or stop dividing m.
CubeFamily enumerate_cubes(const GridSpec& grid, int max_scales,
                           int translations_per_scale);

// All scales down to single cells.
CubeFamily enumerate_all_scales(const GridSpec& grid,
                                int translations_per_scale);

// Gathers the values of f on the cells of q in a fixed order.
std::vector<double> restrict_to(const SampledFunction& f, const Cube& q);
void restrict_to(const SampledFunction& f, const Cube& q,
                 std::vector<double>& out);

// f(gamma x) about the lower box corner for gamma in {1/2, 2}. Exact on the
// cell-constant representation: gamma = 1/2 repeats each cell 2^dim times and
// needs f to vanish outside the lower half box; gamma = 2 needs f constant on
// blocks of 2^dim cells. Other inputs are rejected.
SampledFunction dilate(const SampledFunction& f, double gamma);

// Summed-area table of |f| (or f) for O(1) cube sums.
class PrefixSum {
 public:
  PrefixSum(const SampledFunction& f, bool absolute);
  double sum(const Cube& q) const;

 private:
  int dim_;
  int m_;
  std::vector<double> table_;
  double at(int i, int j, int k) const;
};

}  // namespace morlab
