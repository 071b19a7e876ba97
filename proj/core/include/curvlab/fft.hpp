#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "curvlab/grid.hpp"

namespace curvlab {

/// Half-spectrum of a real field (last axis truncated to N/2+1 slots).
using Spectrum = std::vector<std::complex<double>>;

/// Frequency table for the half-spectrum of a grid.
///
/// Slot s enumerates integer modes k with k_a ∈ {−N/2,…,N/2−1} on the leading
/// axes and k_last ∈ {0,…,N/2} on the last axis, where k_last = N/2 is the
/// Nyquist mode −N/2. ξ = 2πk/L. Each slot carries the number of full-spectrum
/// modes it stands for under Hermitian symmetry (1 or 2).
class ModeSet {
 public:
  explicit ModeSet(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return xi_squared_.size(); }

  double wavenumber(std::size_t slot, int axis) const { return xi_[slot * dim_ + axis]; }
  /// ξ_a with the Nyquist mode along axis a set to zero.
  double derivative_symbol(std::size_t slot, int axis) const {
    return nyquist_[slot * dim_ + axis] ? 0.0 : xi_[slot * dim_ + axis];
  }
  bool is_nyquist(std::size_t slot, int axis) const { return nyquist_[slot * dim_ + axis]; }
  bool touches_nyquist(std::size_t slot) const;
  double xi_squared(std::size_t slot) const { return xi_squared_[slot]; }
  /// ⟨ξ⟩ = (1+|ξ|²)^{1/2}
  double bracket(std::size_t slot) const { return std::sqrt(1.0 + xi_squared_[slot]); }
  double multiplicity(std::size_t slot) const { return multiplicity_[slot]; }
  std::size_t zero_slot() const { return 0; }

 private:
  Grid grid_;
  int dim_;
  std::vector<double> xi_;
  std::vector<char> nyquist_;
  std::vector<double> xi_squared_;
  std::vector<double> multiplicity_;
};

/// Shared, immutable mode table for a grid.
std::shared_ptr<const ModeSet> modes_for(const Grid& grid);

/// Unnormalized forward DFT of a real array laid out on the grid.
Spectrum forward(const Grid& grid, std::span<const double> values);
/// Inverse DFT scaled by N^{−n}; returns the real part.
std::vector<double> inverse(const Grid& grid, const Spectrum& spectrum);

}  // namespace curvlab
