#include "curvlab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvlab/error.hpp"

namespace curvlab {

namespace {

std::vector<Spectrum> transform_components(const SymTensorField& f) {
  std::vector<Spectrum> out;
  out.reserve(f.components());
  for (std::size_t c = 0; c < f.components(); ++c) out.push_back(forward(f.grid(), f.component(c)));
  return out;
}

SymTensorField inverse_components(const Grid& grid, const std::vector<Spectrum>& spec) {
  SymTensorField out(grid);
  for (std::size_t c = 0; c < spec.size(); ++c) {
    auto values = inverse(grid, spec[c]);
    std::ranges::copy(values, out.component(c).begin());
  }
  return out;
}

}  // namespace

L0Symbol::L0Symbol(const Grid& grid, const EinParams& params)
    : params_(params), modes_(modes_for(grid)) {
  if (!params.kappa_regular()) {
    throw KappaSingular("linearized symbol undefined at kappa = -1/n");
  }
  const int n = grid.dim();
  const double lambda = params.lambda();
  const double zero_order = params.kappa() * lambda / params.trace_factor();
  trace_eigen_.resize(modes_->size());
  beta_.resize(modes_->size());
  for (std::size_t s = 0; s < modes_->size(); ++s) {
    double xi_tilde2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = modes_->derivative_symbol(s, a);
      xi_tilde2 += d * d;
    }
    beta_[s] = 0.5 * xi_tilde2 + lambda;
    trace_eigen_[s] = beta_[s] - n * zero_order + coupling() * xi_tilde2;
    const double alpha = conformal_eigenvalue(s);
    const double beta = traceless_eigenvalue(s);
    if (!(alpha > 0.0) || !(beta > 0.0) || !(beta_[s] > 0.0) ||
        !(trace_eigen_[s] > 0.0)) {
      std::ostringstream msg;
      msg << "linearized symbol degenerate: kappa = " << params.kappa()
          << ", Lambda = " << lambda << ", |xi|^2 = " << modes_->xi_squared(s)
          << ", alpha = " << alpha << ", beta = " << beta;
      throw SymbolDegenerate(msg.str());
    }
  }
}

double L0Symbol::traceless_eigenvalue(std::size_t slot) const {
  return 0.5 * modes_->xi_squared(slot) + params_.lambda();
}

double L0Symbol::conformal_eigenvalue(std::size_t slot) const {
  const int n = params_.dim();
  const double kappa = params_.kappa();
  return ((1.0 + 2.0 * (n - 1) * kappa) * modes_->xi_squared(slot) + 2.0 * params_.lambda()) /
         (2.0 * params_.trace_factor());
}

double L0Symbol::max_order_ratio() const {
  double m = 0.0;
  for (std::size_t s = 0; s < modes_->size(); ++s) {
    m = std::max(m, modes_->xi_squared(s) / conformal_eigenvalue(s));
  }
  return m;
}

double L0Symbol::min_conformal_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < modes_->size(); ++s) m = std::min(m, conformal_eigenvalue(s));
  return m;
}

SymTensorField l0_apply(const L0Symbol& symbol, const SymTensorField& h) {
  const Grid& grid = h.grid();
  const int n = grid.dim();
  const ModeSet& modes = symbol.modes();
  const double zero_order = symbol.params().kappa() * symbol.params().lambda() /
                            symbol.params().trace_factor();
  const double coupling = symbol.coupling();
  std::vector<Spectrum> spec = transform_components(h);
  for (std::size_t s = 0; s < modes.size(); ++s) {
    std::complex<double> tr = 0.0;
    for (int i = 0; i < n; ++i) tr += spec[sym_index(n, i, i)][s];
    const double beta = symbol.discrete_traceless_eigenvalue(s);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        auto& v = spec[sym_index(n, i, j)][s];
        v = beta * v + coupling * modes.derivative_symbol(s, i) * modes.derivative_symbol(s, j) * tr;
        if (i == j) v -= zero_order * tr;
      }
    }
  }
  return inverse_components(grid, spec);
}

SymTensorField l0_solve(const L0Symbol& symbol, const SymTensorField& f) {
  const Grid& grid = f.grid();
  const int n = grid.dim();
  const ModeSet& modes = symbol.modes();
  const double zero_order = symbol.params().kappa() * symbol.params().lambda() /
                            symbol.params().trace_factor();
  const double coupling = symbol.coupling();
  std::vector<Spectrum> spec = transform_components(f);
  for (std::size_t s = 0; s < modes.size(); ++s) {
    std::complex<double> tr_f = 0.0;
    for (int i = 0; i < n; ++i) tr_f += spec[sym_index(n, i, i)][s];
    const std::complex<double> tr_h = tr_f / symbol.discrete_trace_eigenvalue(s);
    const double beta = symbol.discrete_traceless_eigenvalue(s);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        auto& v = spec[sym_index(n, i, j)][s];
        v -= coupling * modes.derivative_symbol(s, i) * modes.derivative_symbol(s, j) * tr_h;
        if (i == j) v += zero_order * tr_h;
        v /= beta;
      }
    }
  }
  return inverse_components(grid, spec);
}

}  // namespace curvlab
