#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvlab/grid.hpp"

namespace curvlab {

/// Tensor type of a field; the numeric value is the EFLD rank tag.
enum class RankTag : std::uint32_t {
  scalar = 0,
  one_form = 1,
  sym2 = 2,
  christoffel = 3,
  four = 4,
  r13 = 13,
};

/// Number of stored components for a rank on an n-dimensional grid.
std::size_t component_count(RankTag tag, int dim);

/// Storage slot of the symmetric pair (i, j) in a symmetric 2-tensor.
inline int sym_index(int dim, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * dim - i * (i - 1) / 2 + (j - i);
}

inline int four_index(int dim, int i, int j, int k, int l) {
  return ((i * dim + j) * dim + k) * dim + l;
}

/// Real field on a grid. Values are stored component-major: component c of
/// point p lives at values()[c * grid.size() + p].
template <RankTag Tag>
class Field {
 public:
  static constexpr RankTag rank = Tag;

  explicit Field(const Grid& grid)
      : grid_(grid), values_(component_count(Tag, grid.dim()) * grid.size(), 0.0) {}

  Field(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  std::size_t components() const { return values_.size() / grid_.size(); }

  std::span<double> component(std::size_t c) {
    return {values_.data() + c * grid_.size(), grid_.size()};
  }
  std::span<const double> component(std::size_t c) const {
    return {values_.data() + c * grid_.size(), grid_.size()};
  }

  std::span<double> operator()(int i, int j)
    requires(Tag == RankTag::sym2)
  {
    return component(sym_index(dim(), i, j));
  }
  std::span<const double> operator()(int i, int j) const
    requires(Tag == RankTag::sym2)
  {
    return component(sym_index(dim(), i, j));
  }
  std::span<double> operator()(int i)
    requires(Tag == RankTag::one_form)
  {
    return component(i);
  }
  std::span<const double> operator()(int i) const
    requires(Tag == RankTag::one_form)
  {
    return component(i);
  }
  /// Γ^k_{ij}
  std::span<double> operator()(int k, int i, int j)
    requires(Tag == RankTag::christoffel)
  {
    return component(k * grid_.sym_components() + sym_index(dim(), i, j));
  }
  std::span<const double> operator()(int k, int i, int j) const
    requires(Tag == RankTag::christoffel)
  {
    return component(k * grid_.sym_components() + sym_index(dim(), i, j));
  }
  std::span<double> operator()(int i, int j, int k, int l)
    requires(Tag == RankTag::four || Tag == RankTag::r13)
  {
    return component(four_index(dim(), i, j, k, l));
  }
  std::span<const double> operator()(int i, int j, int k, int l) const
    requires(Tag == RankTag::four || Tag == RankTag::r13)
  {
    return component(four_index(dim(), i, j, k, l));
  }

  double& operator[](std::size_t p)
    requires(Tag == RankTag::scalar)
  {
    return values_[p];
  }
  double operator[](std::size_t p) const
    requires(Tag == RankTag::scalar)
  {
    return values_[p];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double factor);
  /// this += factor * other
  Field& axpy(double factor, const Field& other);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double f, Field a) { return a *= f; }
  friend Field operator*(Field a, double f) { return a *= f; }

  /// max over points and components of |value|
  double max_abs() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

using ScalarField = Field<RankTag::scalar>;
using OneFormField = Field<RankTag::one_form>;
using SymTensorField = Field<RankTag::sym2>;
using ChristoffelField = Field<RankTag::christoffel>;
using FourTensorField = Field<RankTag::four>;
/// Type (1,3) tensor τ^i_{klm}, index order (i, k, l, m).
using R13Field = Field<RankTag::r13>;

extern template class Field<RankTag::scalar>;
extern template class Field<RankTag::one_form>;
extern template class Field<RankTag::sym2>;
extern template class Field<RankTag::christoffel>;
extern template class Field<RankTag::four>;
extern template class Field<RankTag::r13>;

/// Constant multiple of the Kronecker tensor.
SymTensorField kronecker(const Grid& grid, double factor = 1.0);
/// u·δ
SymTensorField conformal(const ScalarField& u);
/// Pointwise product u·S.
SymTensorField scale(const ScalarField& u, const SymTensorField& s);
/// δ-trace Σ_i S_ii.
ScalarField flat_trace(const SymTensorField& s);
/// Pointwise Frobenius inner product ⟨A, B⟩ = A_ij B_ij (flat indices).
ScalarField flat_inner(const SymTensorField& a, const SymTensorField& b);

/// The weight ⟨x⟩^t = (1+|x|²)^{t/2} on the fundamental domain.
ScalarField weight_field(const Grid& grid, double t);

}  // namespace curvlab
