#include <doctest.h>

#include <functional>

#include "support.hpp"

using namespace curvlab;
using namespace testing;

namespace {

SymTensorField manufactured_h(const Grid& g, double amplitude, double width) {
  return TensorBumps{3, {TensorBump{GaussianBump{{}, width, amplitude},
                                    {1.0, 0.3, -0.2, 0.7, 0.1, -0.5}}}}
      .sample(g);
}

SymTensorField central_difference(const std::function<SymTensorField(double)>& f, double eps) {
  SymTensorField d = f(eps);
  d -= f(-eps);
  d *= 1.0 / (2.0 * eps);
  return d;
}

}  // namespace

TEST_CASE("zero_order_Z") {
  const Grid g = make_grid(3, 16, 8.0);
  const EinParams p(3, 0.3, 1.5);
  CHECK(zero_order_Z(SymTensorField(g), SymTensorField(g), p).max_abs() == 0.0);

  SUBCASE("h = 0: per-point formula") {
    const SymTensorField e = random_tensor(g, 81, 0.2);
    const SymTensorField z = zero_order_Z(SymTensorField(g), e, p);
    const ScalarField tr = flat_trace(e);
    SymTensorField expected(g);
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        for (std::size_t q = 0; q < g.size(); ++q) {
          expected(i, j)[q] = (i == j ? 0.3 * tr[q] / (1.0 + 0.9) : 0.0) - e(i, j)[q];
        }
      }
    }
    CHECK(max_diff(z, expected) <= 1e-15);
  }
  SUBCASE("h = c delta, e = 0") {
    const double c = 0.05;
    const SymTensorField z = zero_order_Z(kronecker(g, c), SymTensorField(g), p);
    const double value = (0.3 * 3.0 * 1.5 / (1.0 + c) + 1.5) / 1.9 * (1.0 + c) - 1.5;
    CHECK(z(0, 0)[7] == doctest::Approx(value).epsilon(1e-14));
    CHECK(z(1, 1)[100] == doctest::Approx(value).epsilon(1e-14));
    CHECK(z(0, 2)[7] == 0.0);
  }
  SUBCASE("singular kappa") {
    CHECK_THROWS_AS(zero_order_Z(SymTensorField(g), SymTensorField(g), EinParams(3, -1.0 / 3.0, 1.0)),
                    KappaSingular);
  }
}

TEST_CASE("assemble_F") {
  SUBCASE("vanishes at the origin") {
    for (int dim : {2, 3}) {
      const Grid g = make_grid(dim, 16, 8.0);
      for (const EinParams& p : {EinParams(dim, 0.0, 1.0), EinParams(dim, 0.4, 2.5),
                                 EinParams(dim, -0.2, 0.3)}) {
        CHECK(assemble_F(SymTensorField(g), SymTensorField(g), p).max_abs() <= 1e-13);
      }
    }
  }
  SUBCASE("h = 0 composition") {
    const Grid g = make_grid(3, 16, 8.0);
    const EinParams p(3, 0.2, 1.5);
    const SymTensorField e = sym_grad_flat(exterior_derivative(random_scalar(g, 82, 0.1)));
    SymTensorField big = e;
    big += kronecker(g, 1.5);
    SymTensorField expected = zero_order_Z(SymTensorField(g), e, p);
    expected.axpy(-1.0 / 1.5, sym_grad_flat(bianchi_cal(Metric::flat(g), big, p)));
    CHECK(max_diff(assemble_F(SymTensorField(g), e, p), expected) <= 1e-13);
  }
  SUBCASE("errors") {
    const Grid g = make_grid(3, 16, 8.0);
    CHECK_THROWS_AS(assemble_F(SymTensorField(g), SymTensorField(g), EinParams(3, 0.0, 0.0)),
                    LambdaNonPositive);
    CHECK_THROWS_AS(assemble_F(SymTensorField(g), SymTensorField(g), EinParams(3, -1.0 / 3.0, 1.0)),
                    KappaSingular);
    CHECK_THROWS_AS(assemble_F(kronecker(g, -1.5), SymTensorField(g), EinParams(3, 0.0, 1.0)),
                    NonRiemannian);
  }
  SUBCASE("Taylor remainder is quadratic") {
    const Grid g = make_grid(3, 16, 8.0);
    const EinParams p(3, 0.1, 1.0);
    const SymTensorField h = random_tensor(g, 83, 1.0);
    const SymTensorField lin = dF0(h, p);
    std::vector<double> errs;
    for (double eps : {4e-3, 2e-3, 1e-3}) {
      SymTensorField r = assemble_F(eps * h, SymTensorField(g), p);
      r.axpy(-eps, lin);
      errs.push_back(l2_norm(r));
    }
    for (std::size_t k = 1; k < errs.size(); ++k) {
      CHECK(std::log2(errs[k - 1] / errs[k]) == doctest::Approx(2.0).epsilon(0.05));
    }
  }
}

TEST_CASE("dF0") {
  const Grid g = make_grid(3, 16, 8.0);
  const EinParams p(3, 0.3, 1.2);
  const L0Symbol sym(g, p);

  SUBCASE("agrees with the Fourier symbol") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SymTensorField h = random_tensor(g, 90 + seed, 1.0);
      CHECK(rel_l2(dF0(h, p), l0_apply(sym, h)) <= 1e-12);
    }
  }
  SUBCASE("traceless block") {
    const ScalarField wave = plane_wave(g, {1, 0, 2, 0}, false);
    SymTensorField h(g);
    for (std::size_t q = 0; q < g.size(); ++q) h(1, 2)[q] = wave[q];
    const double xi2 = 5.0 * std::pow(2.0 * pi / g.length(), 2);
    SymTensorField expected = h;
    expected *= 0.5 * (xi2 + 2.0 * 1.2);
    CHECK(max_diff(dF0(h, p), expected) <= 1e-13);
  }
  SUBCASE("conformal block") {
    const std::array<int, Grid::max_dim> k{2, -1, 1, 0};
    const ScalarField u = plane_wave(g, k, true);
    const double unit = 2.0 * pi / g.length();
    const double xi2 = 6.0 * unit * unit;
    const double kappa = 0.3;
    const double lambda = 1.2;
    const double tf = 1.0 + 3.0 * kappa;
    const SymTensorField out = dF0(conformal(u), p);
    SymTensorField expected(g);
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const double diag = i == j ? 0.5 * xi2 + lambda - 3.0 * kappa * lambda / tf : 0.0;
        const double hess = p.trace_coupling() * 3.0 * k[i] * k[j] * unit * unit;
        for (std::size_t q = 0; q < g.size(); ++q) expected(i, j)[q] = (diag + hess) * u[q];
      }
    }
    CHECK(max_diff(out, expected) <= 1e-13);
    // the trace carries α(ξ)
    const double alpha = ((1.0 + 4.0 * kappa) * xi2 + 2.0 * lambda) / (2.0 * tf);
    const ScalarField tr = flat_trace(out);
    for (std::size_t q = 0; q < g.size(); q += 53) CHECK(tr[q] == doctest::Approx(3.0 * alpha * u[q]));
  }
  SUBCASE("central differences of F") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const SymTensorField h = random_tensor(g, 100 + seed, 1.0);
      const SymTensorField fd = central_difference(
          [&](double eps) { return assemble_F(eps * h, SymTensorField(g), p); }, 1e-4);
      CHECK(rel_l2(fd, dF0(h, p)) <= 1e-7);
    }
  }
  SUBCASE("finite-difference error is second order") {
    const SymTensorField h = random_tensor(g, 104, 1.0);
    const SymTensorField lin = dF0(h, p);
    std::vector<double> errs;
    for (double eps : {1e-2, 1e-3}) {
      const SymTensorField fd = central_difference(
          [&](double e) { return assemble_F(e * h, SymTensorField(g), p); }, eps);
      errs.push_back(rel_l2(fd, lin));
    }
    CHECK(std::log10(errs[0] / errs[1]) == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("d_ric_flat") {
  const Grid g = make_grid(3, 16, 8.0);
  SUBCASE("transverse traceless mode") {
    const ScalarField wave = plane_wave(g, {2, 0, 0, 0}, true);
    SymTensorField h(g);
    for (std::size_t q = 0; q < g.size(); ++q) h(1, 2)[q] = wave[q];
    SymTensorField expected = laplacian(h);
    expected *= 0.5;
    CHECK(max_diff(d_ric_flat(h), expected) <= 1e-13);
  }
  SUBCASE("random and pure gauge directions") {
    const SymTensorField random = random_tensor(g, 110, 1.0);
    const SymTensorField fd =
        central_difference([&](double eps) { return ricci(Metric(eps * random)); }, 1e-4);
    CHECK(rel_l2(fd, d_ric_flat(random)) <= 1e-7);

    // pure gauge directions lie in the kernel, so compare against ‖h‖
    const SymTensorField gauge = sym_grad_flat(random_one_form(g, 111));
    const SymTensorField fd_gauge =
        central_difference([&](double eps) { return ricci(Metric(eps * gauge)); }, 1e-4);
    CHECK(l2_norm(d_ric_flat(gauge)) <= 1e-12 * l2_norm(gauge));
    SymTensorField diff = fd_gauge;
    diff -= d_ric_flat(gauge);
    CHECK(l2_norm(diff) <= 1e-7 * l2_norm(gauge));
  }
}

TEST_CASE("d_bianchi_flat") {
  const Grid g = make_grid(3, 16, 8.0);
  const EinParams p(3, 0.3, 1.5);
  // resolved data: the discrete Leibniz rule fails at the Nyquist plane
  const SymTensorField h = random_tensor(g, 120, 1.0, 1.5);
  SUBCASE("E = Lambda delta") {
    OneFormField expected = bianchi_B(Metric::flat(g), h);
    expected *= -1.5;
    expected.axpy(p.trace_coupling() * 1.5, exterior_derivative(flat_trace(h)));
    CHECK(max_diff(d_bianchi_flat(kronecker(g, 1.5), h, p), expected) <= 1e-13);
  }
  SUBCASE("central difference in the metric") {
    SymTensorField e = random_tensor(g, 121, 0.3, 1.5);
    e += kronecker(g, 1.5);
    OneFormField fd = bianchi_cal(Metric(1e-4 * h), e, p);
    fd -= bianchi_cal(Metric(-1e-4 * h), e, p);
    fd *= 1.0 / 2e-4;
    CHECK(rel_l2(fd, d_bianchi_flat(e, h, p)) <= 1e-7);
  }
}

TEST_CASE("gauge_residual") {
  const Grid g = make_grid(3, 16, 8.0);
  const EinParams p(3, 0.2, 1.5);
  const GaugeResidual zero = gauge_residual(SymTensorField(g), SymTensorField(g), p, 2.0, 1.0);
  CHECK(zero.omega.max_abs() == 0.0);
  CHECK(zero.omega_norm == 0.0);

  const SymTensorField e = random_tensor(g, 130, 0.1);
  const GaugeResidual r = gauge_residual(SymTensorField(g), e, p, 2.0, 1.0);
  OneFormField expected = bianchi_cal(Metric::flat(g), e, p);
  expected *= 1.0 / 1.5;
  CHECK(r.omega_norm > 0.0);
  CHECK(max_diff(r.omega, expected) <= 1e-14);
  CHECK(r.omega_norm == doctest::Approx(sobolev_norm(expected, 3.0, 1.0)));
}

TEST_CASE("solve") {
  SUBCASE("e = 0 returns h = 0 after one evaluation") {
    const Grid g = make_grid(3, 16, 8.0);
    const SolveReport rep = solve(SymTensorField(g), SolveConfig{EinParams(3, 0.0, 1.0)});
    CHECK(rep.status == SolveStatus::converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.h.max_abs() == 0.0);
  }
  SUBCASE("invalid configurations") {
    const Grid g = make_grid(3, 16, 8.0);
    CHECK_THROWS_AS(solve(SymTensorField(g), SolveConfig{EinParams(3, 0.0, -1.0)}), LambdaNonPositive);
    SolveConfig low_s{EinParams(3, 0.0, 1.0)};
    low_s.s = 1.5;
    CHECK_THROWS_AS(solve(SymTensorField(g), low_s), InvalidArgument);
    SolveConfig bad_damping{EinParams(3, 0.0, 1.0)};
    bad_damping.damping = 0.0;
    CHECK_THROWS_AS(solve(SymTensorField(g), bad_damping), InvalidArgument);
  }
  SUBCASE("manufactured data") {
    const Grid g = make_grid(3, 24, 16.0);
    const SymTensorField h_star = manufactured_h(g, 1e-2, 2.0);
    for (SolveMode mode : {SolveMode::picard, SolveMode::newton_krylov}) {
      const EinParams p(3, 0.0, 1.0);
      const SymTensorField e = ein_excess(Metric(h_star), p);
      CHECK(einstein_residual(h_star, e, p, 2.0, 1.0) <= 1e-13);
      SolveConfig cfg{p};
      cfg.mode = mode;
      const SolveReport rep = solve(e, cfg);
      CHECK(rep.status == SolveStatus::converged);
      CHECK(rep.residual_history.back() <= 1e-10);
      CHECK(rep.einstein_residual <= 1e-8);
      CHECK(rep.gauge_norm <= 1e-8);
      CHECK(rep.gauge_operator_norm <= 1e-8);
      CHECK(einstein_residual(rep.h, e, p, 2.0, 1.0) == doctest::Approx(rep.einstein_residual));
      if (mode == SolveMode::newton_krylov) CHECK(rep.iterations < 15);
    }
  }
  SUBCASE("divergence on large data") {
    const Grid g = make_grid(3, 16, 8.0);
    const EinParams p(3, 0.0, 1.0);
    SymTensorField e = random_tensor(g, 140, 1.0);
    e *= 40.0 / e.max_abs();
    SolveConfig cfg{p};
    cfg.max_iter = 40;
    const SolveReport rep = solve(e, cfg);
    CHECK(rep.smallness_warning);
    CHECK(rep.status != SolveStatus::converged);
  }
}
