#include "curvlab/field.hpp"

#include <algorithm>
#include <cmath>

#include "curvlab/error.hpp"

namespace curvlab {

std::size_t component_count(RankTag tag, int dim) {
  const auto n = static_cast<std::size_t>(dim);
  switch (tag) {
    case RankTag::scalar:
      return 1;
    case RankTag::one_form:
      return n;
    case RankTag::sym2:
      return n * (n + 1) / 2;
    case RankTag::christoffel:
      return n * n * (n + 1) / 2;
    case RankTag::four:
    case RankTag::r13:
      return n * n * n * n;
  }
  throw InvalidArgument("unknown rank tag");
}

template <RankTag Tag>
Field<Tag>::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != component_count(Tag, grid.dim()) * grid.size()) {
    throw InvalidArgument("field value count does not match grid and rank");
  }
}

template <RankTag Tag>
Field<Tag>& Field<Tag>::operator+=(const Field& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("field grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

template <RankTag Tag>
Field<Tag>& Field<Tag>::operator-=(const Field& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("field grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

template <RankTag Tag>
Field<Tag>& Field<Tag>::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

template <RankTag Tag>
Field<Tag>& Field<Tag>::axpy(double factor, const Field& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("field grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += factor * other.values_[i];
  return *this;
}

template <RankTag Tag>
double Field<Tag>::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

template <RankTag Tag>
bool Field<Tag>::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

template class Field<RankTag::scalar>;
template class Field<RankTag::one_form>;
template class Field<RankTag::sym2>;
template class Field<RankTag::christoffel>;
template class Field<RankTag::four>;
template class Field<RankTag::r13>;

SymTensorField kronecker(const Grid& grid, double factor) {
  SymTensorField out(grid);
  for (int i = 0; i < grid.dim(); ++i) std::ranges::fill(out(i, i), factor);
  return out;
}

SymTensorField conformal(const ScalarField& u) {
  SymTensorField out(u.grid());
  for (int i = 0; i < u.dim(); ++i) std::ranges::copy(u.values(), out(i, i).begin());
  return out;
}

SymTensorField scale(const ScalarField& u, const SymTensorField& s) {
  SymTensorField out = s;
  for (std::size_t c = 0; c < out.components(); ++c) {
    auto dst = out.component(c);
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] *= u[p];
  }
  return out;
}

ScalarField flat_trace(const SymTensorField& s) {
  ScalarField out(s.grid());
  for (int i = 0; i < s.dim(); ++i) {
    auto src = s(i, i);
    for (std::size_t p = 0; p < src.size(); ++p) out[p] += src[p];
  }
  return out;
}

ScalarField flat_inner(const SymTensorField& a, const SymTensorField& b) {
  ScalarField out(a.grid());
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double mult = (i == j) ? 1.0 : 2.0;
      auto x = a(i, j);
      auto y = b(i, j);
      for (std::size_t p = 0; p < x.size(); ++p) out[p] += mult * x[p] * y[p];
    }
  }
  return out;
}

ScalarField weight_field(const Grid& grid, double t) {
  ScalarField out(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    out[p] = std::pow(1.0 + grid.radius_squared(p), 0.5 * t);
  }
  return out;
}

}  // namespace curvlab
