#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace curvlab {

/// Uniform periodic lattice on the box [-L/2, L/2)^n standing in for R^n.
///
/// Points are stored row-major with axis 0 slowest. The origin x = 0 sits at
/// index N/2 on every axis.
class Grid {
 public:
  static constexpr int max_dim = 4;

  int dim() const { return dim_; }
  int points_per_axis() const { return points_; }
  double length() const { return length_; }
  double spacing() const { return length_ / points_; }
  std::size_t size() const { return size_; }

  /// Coordinate of lattice index i along any axis.
  double coordinate(int i) const { return -0.5 * length_ + i * spacing(); }
  int origin_index() const { return points_ / 2; }

  /// Multi-index of a linear point index.
  std::array<int, max_dim> unravel(std::size_t p) const;
  std::size_t ravel(const std::array<int, max_dim>& idx) const;
  /// Squared distance of lattice point p from the origin (no periodization).
  double radius_squared(std::size_t p) const;
  std::array<double, max_dim> position(std::size_t p) const;

  /// Number of independent components of a symmetric 2-tensor.
  int sym_components() const { return dim_ * (dim_ + 1) / 2; }

  bool operator==(const Grid& other) const = default;

 private:
  friend Grid make_grid(int dim, int points, double length);
  Grid(int dim, int points, double length);

  int dim_ = 0;
  int points_ = 0;
  double length_ = 0.0;
  std::size_t size_ = 0;
};

/// Validates (n, N, L) and builds the lattice. N must be even, at least 8 and
/// 5-smooth (e.g. 16, 24, 32, 48, 64).
Grid make_grid(int dim, int points, double length);

}  // namespace curvlab
