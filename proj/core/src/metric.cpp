#include "curvlab/metric.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvlab/error.hpp"
#include "curvlab/spectral.hpp"

namespace curvlab {

namespace {

template <int N>
void invert_all(const SymTensorField& h, SymTensorField& inverse, SymTensorField& tilde,
                double& lambda_min, std::size_t& worst) {
  using Mat = Eigen::Matrix<double, N, N>;
  const std::size_t size = h.grid().size();
  lambda_min = std::numeric_limits<double>::infinity();
  worst = 0;
  Eigen::SelfAdjointEigenSolver<Mat> eig;
  for (std::size_t p = 0; p < size; ++p) {
    Mat g;
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j) {
        const double v = h(i, j)[p] + (i == j ? 1.0 : 0.0);
        g(i, j) = v;
        g(j, i) = v;
      }
    }
    eig.compute(g, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues()(0);
    if (!(lmin >= lambda_min)) {
      lambda_min = lmin;
      worst = p;
    }
    if (!(lmin > 0.0)) continue;
    const Mat ginv = g.inverse();
    // h̃ = −g⁻¹h carries error relative to |h| rather than to 1
    Mat hm;
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j) {
        hm(i, j) = h(i, j)[p];
        hm(j, i) = h(i, j)[p];
      }
    }
    const Mat t = -ginv * hm;
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j) {
        const double v = 0.5 * (t(i, j) + t(j, i));
        tilde(i, j)[p] = v;
        inverse(i, j)[p] = v + (i == j ? 1.0 : 0.0);
      }
    }
  }
}

}  // namespace

Metric::Metric(SymTensorField perturbation)
    : h_(std::move(perturbation)), inverse_(h_.grid()), tilde_(h_.grid()) {
  if (!h_.all_finite()) throw InvalidArgument("metric perturbation has non-finite values");
  switch (dim()) {
    case 2:
      invert_all<2>(h_, inverse_, tilde_, lambda_min_, worst_point_);
      break;
    case 3:
      invert_all<3>(h_, inverse_, tilde_, lambda_min_, worst_point_);
      break;
    case 4:
      invert_all<4>(h_, inverse_, tilde_, lambda_min_, worst_point_);
      break;
    default:
      throw InvalidArgument("unsupported metric dimension");
  }
  if (!(lambda_min_ > 0.0)) {
    std::ostringstream msg;
    msg << "metric is not Riemannian: smallest eigenvalue " << lambda_min_ << " at point "
        << worst_point_;
    throw NonRiemannian(msg.str(), lambda_min_, worst_point_);
  }
}

SymTensorField Metric::covariant() const {
  SymTensorField g = h_;
  for (int i = 0; i < dim(); ++i) {
    for (double& v : g(i, i)) v += 1.0;
  }
  return g;
}

double Metric::identity_residual() const {
  const int n = dim();
  double worst = 0.0;
  for (std::size_t p = 0; p < grid().size(); ++p) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          acc += (h_(i, j)[p] + (i == j ? 1.0 : 0.0)) * inverse_(j, k)[p];
        }
        worst = std::max(worst, std::abs(acc - (i == k ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

SymTensorField metric_inverse(const Metric& g) { return g.inverse_perturbation(); }

SymTensorField neumann_partial_sum(const SymTensorField& h, int terms) {
  const Grid& grid = h.grid();
  const int n = grid.dim();
  SymTensorField sum(grid);
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, Grid::max_dim, Grid::max_dim>;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    Mat mh(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) mh(i, j) = -h(i, j)[p];
    }
    Mat power = Mat::Identity(n, n);
    Mat acc = Mat::Identity(n, n);
    for (int k = 1; k <= terms; ++k) {
      power = power * mh;
      acc += power;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) sum(i, j)[p] = acc(i, j);
    }
  }
  return sum;
}

NeumannCheck neumann_bound_check(const SymTensorField& h, double s, double t,
                                 double algebra_constant) {
  NeumannCheck out;
  out.h_norm = sobolev_norm(h, s + 2.0, t);
  if (out.h_norm == 0.0) return out;
  const Metric g(h);
  out.inverse_norm = sobolev_norm(metric_inverse(g), s + 2.0, t);
  if (out.h_norm > 1.0 / (2.0 * algebra_constant)) {
    std::ostringstream msg;
    msg << "Neumann bound requires |h|_{s+2,t} <= 1/(2C): |h| = " << out.h_norm
        << ", |h~| = " << out.inverse_norm << ", C = " << algebra_constant;
    throw PreconditionNotMet(msg.str());
  }
  out.ratio = out.inverse_norm / out.h_norm;
  out.violated = out.ratio > 2.0;
  return out;
}

ScalarField shifted_trace_excess(const Metric& g, const SymTensorField& s, double shift) {
  ScalarField out = trace(g, s);
  if (shift != 0.0) out.axpy(shift, flat_trace(g.inverse_perturbation()));
  return out;
}

ScalarField trace(const Metric& g, const SymTensorField& s) {
  ScalarField out(g.grid());
  const int n = g.dim();
  // flat part and h̃ part summed separately so a large trace of s does not
  // pick up the rounding of g⁻¹'s unit diagonal
  const auto& inv = g.inverse_perturbation();
  for (int i = 0; i < n; ++i) {
    auto b = s(i, i);
    for (std::size_t p = 0; p < b.size(); ++p) out[p] += b[p];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double mult = (i == j) ? 1.0 : 2.0;
      auto a = inv(i, j);
      auto b = s(i, j);
      for (std::size_t p = 0; p < a.size(); ++p) out[p] += mult * a[p] * b[p];
    }
  }
  return out;
}

}  // namespace curvlab
