#include "curvlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace curvlab {

namespace {

using GridKey = std::tuple<int, int, double>;

GridKey key_of(const Grid& grid) {
  return {grid.dim(), grid.points_per_axis(), grid.length()};
}

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  std::size_t real_size = 0;
  std::size_t half_size = 0;

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
  explicit Plans(const Grid& grid) {
    const int n = grid.dim();
    const int points = grid.points_per_axis();
    std::vector<int> dims(n, points);
    real_size = grid.size();
    half_size = real_size / points * (points / 2 + 1);
    double* in = fftw_alloc_real(real_size);
    fftw_complex* out = fftw_alloc_complex(half_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c = fftw_plan_dft_r2c(n, dims.data(), in, out, flags);
    c2r = fftw_plan_dft_c2r(n, dims.data(), out, in, flags);
    fftw_free(in);
    fftw_free(out);
  }
  ~Plans() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
};

// The FFTW planner is not thread-safe; plan creation is serialized here and the
// finished plans are only used through the thread-safe new-array execute calls.
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(const Grid& grid) {
  static std::map<GridKey, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(registry_mutex());
  auto& slot = cache[key_of(grid)];
  if (!slot) slot = std::make_unique<Plans>(grid);
  return *slot;
}

}  // namespace

ModeSet::ModeSet(const Grid& grid) : grid_(grid), dim_(grid.dim()) {
  const int n = dim_;
  const int points = grid.points_per_axis();
  const int half = points / 2 + 1;
  const std::size_t slots = grid.size() / points * half;
  xi_.resize(slots * n);
  nyquist_.resize(slots * n);
  xi_squared_.resize(slots);
  multiplicity_.resize(slots);
  const double unit = 2.0 * std::numbers::pi / grid.length();
  for (std::size_t s = 0; s < slots; ++s) {
    std::size_t rest = s;
    const int last = static_cast<int>(rest % half);
    rest /= half;
    double r2 = 0.0;
    for (int a = n - 1; a >= 0; --a) {
      int i;
      if (a == n - 1) {
        i = last;
      } else {
        i = static_cast<int>(rest % points);
        rest /= points;
      }
      const int k = (i < points / 2) ? i : i - points;
      xi_[s * n + a] = unit * k;
      nyquist_[s * n + a] = (i == points / 2);
      r2 += xi_[s * n + a] * xi_[s * n + a];
    }
    xi_squared_[s] = r2;
    multiplicity_[s] = (last == 0 || last == points / 2) ? 1.0 : 2.0;
  }
}

bool ModeSet::touches_nyquist(std::size_t slot) const {
  for (int a = 0; a < dim_; ++a) {
    if (nyquist_[slot * dim_ + a]) return true;
  }
  return false;
}

std::shared_ptr<const ModeSet> modes_for(const Grid& grid) {
  static std::map<GridKey, std::shared_ptr<const ModeSet>> cache;
  std::lock_guard lock(registry_mutex());
  auto& slot = cache[key_of(grid)];
  if (!slot) slot = std::make_shared<const ModeSet>(grid);
  return slot;
}

Spectrum forward(const Grid& grid, std::span<const double> values) {
  const Plans& plans = plans_for(grid);
  std::vector<double> in(values.begin(), values.end());
  Spectrum out(plans.half_size);
  fftw_execute_dft_r2c(plans.r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse(const Grid& grid, const Spectrum& spectrum) {
  const Plans& plans = plans_for(grid);
  Spectrum scratch = spectrum;  // c2r overwrites its input
  std::vector<double> out(plans.real_size);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / static_cast<double>(plans.real_size);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace curvlab
