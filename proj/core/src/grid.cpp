#include "curvlab/grid.hpp"

#include <string>

#include "curvlab/error.hpp"

namespace curvlab {

namespace {

bool is_five_smooth(int value) {
  for (int p : {2, 3, 5}) {
    while (value % p == 0) value /= p;
  }
  return value == 1;
}

}  // namespace

Grid::Grid(int dim, int points, double length) : dim_(dim), points_(points), length_(length) {
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(points_);
}

Grid make_grid(int dim, int points, double length) {
  if (dim < 2 || dim > Grid::max_dim) {
    throw InvalidArgument("grid dimension must be in {2,3,4}, got " + std::to_string(dim));
  }
  if (points < 8 || points % 2 != 0 || !is_five_smooth(points)) {
    throw InvalidArgument("points per axis must be an even 5-smooth integer >= 8, got " +
                          std::to_string(points));
  }
  if (!(length > 0.0)) {
    throw InvalidArgument("box length must be positive");
  }
  return Grid(dim, points, length);
}

std::array<int, Grid::max_dim> Grid::unravel(std::size_t p) const {
  std::array<int, max_dim> idx{};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(p % points_);
    p /= points_;
  }
  return idx;
}

std::size_t Grid::ravel(const std::array<int, max_dim>& idx) const {
  std::size_t p = 0;
  for (int a = 0; a < dim_; ++a) {
    int i = ((idx[a] % points_) + points_) % points_;
    p = p * points_ + static_cast<std::size_t>(i);
  }
  return p;
}

std::array<double, Grid::max_dim> Grid::position(std::size_t p) const {
  auto idx = unravel(p);
  std::array<double, max_dim> x{};
  for (int a = 0; a < dim_; ++a) x[a] = coordinate(idx[a]);
  return x;
}

double Grid::radius_squared(std::size_t p) const {
  auto x = position(p);
  double r2 = 0.0;
  for (int a = 0; a < dim_; ++a) r2 += x[a] * x[a];
  return r2;
}

}  // namespace curvlab
