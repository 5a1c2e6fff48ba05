#include <doctest.h>

#include "sigmin/catenary.hpp"
#include "sigmin/singular_minimal.hpp"
#include "sigmin/surfaces.hpp"
#include "sigmin/weierstrass.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

using namespace sigmin;

namespace {

const cplx kI(0.0, 1.0);

// Residual ceiling for the lifted field system on the h = 0.01 fixtures;
// shared with the negative control, which must overshoot it by 10x or more.
// Measured: 1.64e-5 (catenary n=3), 8.10e-5 (n=4), 8.06e-5 (warped cone).
constexpr double kFieldSystemTol = 2e-4;

// Catenary cylinder over [s_lo, s_hi] x [t0, t1] with surface spacing h on
// both axes (h must be a multiple of the resolved curve step; the strides
// used below all are).
ImmersionGrid cylinder_patch(int n, double s_min, double s_max, double s_lo, double s_hi,
                             double h, double t0, double t1) {
  CatenaryParams p;
  p.n = n;
  p.lambda = 1.0;
  p.s_min = s_min;
  p.s_max = s_max;
  p.step = resolved_step(p);
  FrenetCurve curve = reconstruct_curve(solve_curvature(p));
  const int stride = static_cast<int>(std::llround(h / p.step));
  const int nt = static_cast<int>(std::llround((t1 - t0) / h)) + 1;
  return build_cylinder(curve, s_lo, s_hi, stride, t0, t1, nt);
}

ImmersionGrid off_center_cylinder(int n, double h) {
  return cylinder_patch(n, 0.0, 1.2, 0.3, 1.1, h, -0.4, 0.4);
}

// Unit-slope cone over a bent conformal chart: g = e^{t sin b} sin b *
// (cos s, sin s, 1) with b = pi/4 and (s, t) the image of the chart point
// w = u + iv under the holomorphic map w + 0.2 w^2.  Cones satisfy the
// defining equation exactly iff tan^2 b * a = 1, so this one (a = 1) is a
// genuine solution, and composing with a holomorphic map keeps the chart
// isothermal.  The bend matters: over an axis-aligned chart the cone's
// quotient data is c * e^{is} -- an exact eigenfunction of the difference
// stencils -- and, as with the cylinders, every closedness defect collapses
// to machine zero instead of decaying at the stencil order.  The warped
// chart is the one fixture where those defects are honest O(h^2) statements.
ImmersionGrid cone_conformal(double h) {
  GridChart2D chart;
  chart.s0 = -0.5;
  chart.t0 = -0.4;
  chart.hs = chart.ht = h;
  chart.ns = static_cast<int>(std::llround(1.0 / h)) + 1;
  chart.nt = static_cast<int>(std::llround(0.8 / h)) + 1;
  const double sb = std::sqrt(0.5);
  ImmersionGrid out;
  out.chart = chart;
  out.ambient_dim = 3;
  out.e = Vec::Unit(3, 2);
  out.a = 1.0;
  out.points = VectorGrid(chart, 0);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) {
      const cplx w(chart.s(i), chart.t(j));
      const cplx st = w + 0.2 * w * w;
      const double r = sb * std::exp(sb * st.imag());
      Vec p(3);
      p << r * std::cos(st.real()), r * std::sin(st.real()), r;
      out.points.at(i, j) = p;
    }
  out.points.seal();
  out.validate();
  return out;
}

// Worst-case distance between the reconstruction and the original surface
// expressed in the representation frame, over the reconstruction's valid
// region.
double roundtrip_gap(const ImmersionGrid& surf, const WeierstrassData& wd,
                     const RepresentationSurface& rec) {
  double worst = 0.0;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!rec.surface.points.valid(i, j)) continue;
      const Vec expect = representation_coordinates(wd, surf.points.at(i, j));
      worst = std::max(worst,
                       (rec.surface.points.at(i, j) - expect).lpNorm<Eigen::Infinity>());
    }
  return worst;
}

RepresentationSurface roundtrip(const ImmersionGrid& surf, const WeierstrassData& wd,
                                int base_i, int base_j) {
  IntegrationGauge ig;
  ig.base_i = base_i;
  ig.base_j = base_j;
  ig.omega_base = wd.omega.at(base_i, base_j);
  ig.y_base = representation_coordinates(wd, surf.points.at(base_i, base_j)).head(wd.p + 1);
  return integrate_gauss_map(wd.G, wd.n, ig);
}

// Classical catenoid fields at n = 2 (flat warp): phi_i = y_{i,z} without any
// conformal weight, assembled by hand since the extraction path requires
// a = n - 2 >= 1.
WeierstrassData catenoid_fields(double h) {
  GridChart2D chart;
  chart.s0 = -0.8;
  chart.t0 = 0.3;
  chart.hs = chart.ht = h;
  chart.ns = static_cast<int>(std::llround(1.6 / h)) + 1;
  chart.nt = static_cast<int>(std::llround(0.8 / h)) + 1;

  ScalarGrid y1(chart, 0), y2(chart, 0), w(chart, 0);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) {
      const double s = chart.s(i), t = chart.t(j);
      y1.at(i, j) = std::cosh(t) * std::cos(s);
      y2.at(i, j) = std::cosh(t) * std::sin(s);
      w.at(i, j) = t;
    }

  WeierstrassData d;
  d.chart = chart;
  d.n = 2;
  d.p = 1;
  d.ambient_rotation = Eigen::MatrixXd::Identity(3, 3);
  d.plane_gauge = Eigen::MatrixXd::Identity(2, 2);
  d.omega = w;

  CScalarGrid f1 = wirtinger_z(y1), f2 = wirtinger_z(y2), f3 = wirtinger_z(w);
  d.phi = ComplexGrid(chart, 1);
  d.Psi = CScalarGrid(chart, 1);
  d.G = ComplexGrid(chart, 1);
  d.lambda_sq = ScalarGrid(chart, 1);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) {
      if (!d.phi.valid(i, j)) continue;
      CVec f(3);
      f << f1.at(i, j), f2.at(i, j), f3.at(i, j);
      d.phi.at(i, j) = f;
      const cplx psi = f[0] - kI * f[1];
      d.Psi.at(i, j) = psi;
      CVec g(1);
      g[0] = f[2] / psi;
      d.G.at(i, j) = g;
      const double c = std::cosh(chart.t(j));
      d.lambda_sq.at(i, j) = c * c;
    }
  d.phi.seal();
  d.Psi.seal();
  d.G.seal();
  d.lambda_sq.seal();
  return d;
}

std::string thrown_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("warp exponent and height change: frozen values") {
  // eta((2/n)) = (2(n-2)/n) log((n/2)(2/n)) = 0 for every n.
  CHECK(std::abs(warp_exponent(0.5, 4)) <= 1e-15);
  CHECK(std::abs(warp_exponent(2.0 / 3.0, 3)) <= 1e-15);
  // eta'(1) at n = 4: 2*2/(4*1) = 1.
  CHECK(std::abs(warp_exponent_slope(1.0, 4) - 1.0) <= 1e-15);
  // e^{eta(2)} at n = 4: ((4/2)*2)^{2*2/4} = 4.
  CHECK(std::abs(std::exp(warp_exponent(2.0, 4)) - 4.0) <= 1e-14);
  // n = 2 is the flat product regardless of the height.
  CHECK(warp_exponent(-3.0, 2) == 0.0);
  CHECK(warp_exponent_slope(-3.0, 2) == 0.0);

  // Height change at n = 4: last coordinate x -> x^2 / 2.
  Vec x(3);
  x << 0.7, -0.2, 1.0;
  CHECK(std::abs(to_warped_model(x, 4)[2] - 0.5) <= 1e-15);
  x[2] = 2.0;
  CHECK(std::abs(to_warped_model(x, 4)[2] - 2.0) <= 1e-15);
  CHECK((to_warped_model(x, 4).head(2) - x.head(2)).norm() == 0.0);
}

TEST_CASE("height change is an isometry onto the warped model") {
  std::mt19937 rng(7021u);
  std::uniform_real_distribution<double> head(-2.0, 2.0);
  std::uniform_real_distribution<double> height(0.2, 3.0);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::uniform_int_distribution<int> pick_n(3, 6);
  std::uniform_int_distribution<int> pick_p(1, 2);

  double worst_pull = 0.0, worst_inv = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = pick_n(rng);
    const int dim = pick_p(rng) + 2;
    Vec x(dim), u(dim), v(dim);
    for (int k = 0; k < dim; ++k) {
      x[k] = head(rng);
      u[k] = comp(rng);
      v[k] = comp(rng);
    }
    x[dim - 1] = height(rng);

    // Pullback of the warped metric equals the phi^{n-2}-weighted flat one.
    const double got = warped_pullback(x, u, v, n);
    const double want = std::pow(x[dim - 1], n - 2) * u.dot(v);
    worst_pull = std::max(worst_pull,
                          std::abs(got - want) / std::max(1.0, std::abs(want)));

    const Vec back = from_warped_model(to_warped_model(x, n), n);
    worst_inv = std::max(worst_inv, (back - x).lpNorm<Eigen::Infinity>() /
                                        std::max(1.0, x.lpNorm<Eigen::Infinity>()));
  }
  CHECK(worst_pull <= 1e-12);
  CHECK(worst_inv <= 1e-14);
}

TEST_CASE("algebraic F-field: frozen values") {
  // p = 1 collapses to (1 - |z|^4)/2.
  CVec z1(1);
  z1 << cplx(0.5, 0.0);
  CHECK(std::abs(f_value(z1)[0] - cplx(15.0 / 32.0, 0.0)) <= 1e-16);
  z1[0] = cplx(0.0, 0.0);
  CHECK(std::abs(f_value(z1)[0] - cplx(0.5, 0.0)) <= 1e-16);
  z1[0] = std::exp(kI * 0.3);  // unit modulus is the zero set for p = 1
  CHECK(std::abs(f_value(z1)[0]) <= 1e-15);

  // p = 2 values worked by hand from the definition.
  CVec z2(2);
  z2 << cplx(0.0, 0.0), cplx(0.0, 1.0);
  CHECK(f_value(z2).norm() <= 1e-15);
  z2 << cplx(0.3, 0.2), cplx(0.1, -0.4);
  const CVec f = f_value(z2);
  CHECK(std::abs(f[0] - cplx(0.065, 0.1344)) <= 1e-15);
  CHECK(std::abs(f[1] - cplx(0.624, -0.014)) <= 1e-15);
  z2 << cplx(0.0, 0.0), cplx(0.0, 0.0);
  CHECK(std::abs(f_value(z2)[0]) <= 1e-16);
  CHECK(std::abs(f_value(z2)[1] - cplx(0.5, 0.0)) <= 1e-16);
}

TEST_CASE("classical minimal surface: lifted fields are holomorphic at n = 2") {
  // At n = 2 the warp is flat and the field system reduces to phi_zbar = 0,
  // i.e. harmonicity of the coordinates; the catenoid checks the Wirtinger
  // stacking conventions independently of the weighted machinery.
  const Window W{-0.7, 0.7, 0.4, 1.0};
  const ResidualReport rc = field_system_residual(catenoid_fields(0.02), W);
  const ResidualReport rf = field_system_residual(catenoid_fields(0.01), W);
  CHECK(rf.l_inf <= 1.5e-4);  // measured 5.14e-5 at h = 0.01
  CHECK(rc.l_inf / rf.l_inf >= 3.0);  // measured 4.00
  CHECK(rc.l_inf / rf.l_inf <= 5.0);
}

TEST_CASE("extraction from singular minimal cylinders: residual chain decays at second order") {
  const Window W{0.4, 1.0, -0.3, 0.3};
  for (int n : {3, 4}) {
    CAPTURE(n);
    const ImmersionGrid coarse = off_center_cylinder(n, 0.02);
    const ImmersionGrid fine = off_center_cylinder(n, 0.01);
    const WeierstrassData wdc = extract_representation(coarse);
    const WeierstrassData wdf = extract_representation(fine);

    // Measured at h = 0.01: iso 1.39e-5 / 5.25e-5, identity 3.00e-6 / 3.40e-5
    // for n = 3 / 4 (stencil-order defects of analytically exact identities).
    CHECK(wdf.iso_defect <= 2e-4);
    CHECK(wdf.identity_defect <= 1e-4);

    // The quadric is enforced exactly by the projection step.
    double worst_quadric = 0.0;
    for (int i = 0; i < fine.chart.ns; ++i)
      for (int j = 0; j < fine.chart.nt; ++j) {
        if (!wdf.phi.valid(i, j)) continue;
        const CVec& f = wdf.phi.at(i, j);
        cplx q(0.0, 0.0);
        for (int k = 0; k < f.size(); ++k) q += f[k] * f[k];
        worst_quadric = std::max(worst_quadric, std::abs(q) / f.squaredNorm());
      }
    CHECK(worst_quadric <= 1e-13);

    // Fine-grid maxima measured at 1.64e-5 / 8.10e-5 (field system, n = 3/4),
    // 1.02e-5 / 3.19e-5 (quotient system), 1.31e-5 / 1.55e-4 (quotient-map
    // equation); every ratio landed between 4.00 and 4.01.
    auto family = [&](const char* tag, const ResidualReport& rc, const ResidualReport& rf,
                      double tol) {
      CAPTURE(tag);
      CHECK(rf.l_inf <= tol);
      CHECK(rc.l_inf / rf.l_inf >= 3.0);
      CHECK(rc.l_inf / rf.l_inf <= 5.0);
    };
    family("field-system", field_system_residual(wdc, W), field_system_residual(wdf, W),
           kFieldSystemTol);
    family("quotient-system", quotient_system_residual(wdc, W), quotient_system_residual(wdf, W),
           1e-4);
    family("quotient-map-eq", gauss_map_residual(wdc.G, n, W), gauss_map_residual(wdf.G, n, W),
           4e-4);

    // Cylinder data depends on s alone and the height form is real there, so
    // its curl vanishes to round-off instead of to stencil order (measured
    // about 1e-14); the honest O(h^2) statement lives in the cone test.
    CHECK(height_form_residual(wdf.G, n, W).l_inf <= 1e-13);
    CHECK(height_form_residual(wdc.G, n, W).l_inf <= 1e-13);

    // Scalar quotient data is trivially aligned with F.
    CHECK(alignment_residual(wdf.G, W).l_inf == 0.0);
  }
}

TEST_CASE("integration of the quotient map reproduces the surface") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    const ImmersionGrid coarse = off_center_cylinder(n, 0.02);
    const ImmersionGrid fine = off_center_cylinder(n, 0.01);
    const WeierstrassData wdc = extract_representation(coarse);
    const WeierstrassData wdf = extract_representation(fine);

    // Same physical base node (s = 0.36, t = -0.34) at both resolutions.
    const RepresentationSurface rc = roundtrip(coarse, wdc, 3, 3);
    const RepresentationSurface rf = roundtrip(fine, wdf, 6, 6);

    // Measured gaps 2.08e-5 / 8.93e-5 at h = 0.01 with ratios 3.78 / 3.89
    // (n = 3 / 4): quadrature plus stencil error, both second order.
    const double gap_c = roundtrip_gap(coarse, wdc, rc);
    const double gap_f = roundtrip_gap(fine, wdf, rf);
    CHECK(gap_f <= 2.5e-4);
    CHECK(gap_c / gap_f >= 3.0);
    CHECK(gap_c / gap_f <= 5.0);

    // The reconstructed Psi agrees with the extracted one (measured 2.24e-5
    // and 1.44e-4).
    double psi_gap = 0.0;
    for (int i = 0; i < fine.chart.ns; ++i)
      for (int j = 0; j < fine.chart.nt; ++j)
        if (rf.Psi.valid(i, j))
          psi_gap = std::max(psi_gap, std::abs(rf.Psi.at(i, j) - wdf.Psi.at(i, j)));
    CHECK(psi_gap <= 4e-4);

    // The cylinder height form is exactly closed (s-only data), so opposite
    // staircases agree to round-off; the O(h^2) version is in the cone test.
    CHECK(rf.path_dependence.l_inf <= 1e-13);

    // Exactly real quadratures and the exact height/weight identity.
    CHECK(rf.imag_leak == 0.0);
    CHECK(rf.h_identity_defect <= 1e-12);
  }
}

TEST_CASE("exactly minimal cone: representation data varying in both directions") {
  const Window W{-0.4, 0.4, -0.3, 0.3};
  const ImmersionGrid coarse = cone_conformal(0.02);
  const ImmersionGrid fine = cone_conformal(0.01);

  // The fixture itself solves the defining equation (to stencil order).
  // Measured: 4.62e-5.
  CHECK(sm_residual(fine, W).l_inf <= 1e-3);

  const WeierstrassData wdc = extract_representation(coarse);
  const WeierstrassData wdf = extract_representation(fine);
  CHECK(wdf.iso_defect <= 2e-4);  // measured 4.82e-5

  auto family = [&](const char* tag, const ResidualReport& rc, const ResidualReport& rf,
                    double tol) {
    CAPTURE(tag);
    CHECK(rf.l_inf <= tol);
    CHECK(rc.l_inf / rf.l_inf >= 3.0);
    CHECK(rc.l_inf / rf.l_inf <= 5.0);
  };
  // Measured fine / ratio: 8.06e-5 / 3.93, 5.29e-5 / 3.93, 9.57e-6 / 3.99.
  family("field-system", field_system_residual(wdc, W), field_system_residual(wdf, W),
         kFieldSystemTol);
  family("quotient-system", quotient_system_residual(wdc, W), quotient_system_residual(wdf, W),
         1e-4);
  family("quotient-map-eq", gauss_map_residual(wdc.G, 3, W), gauss_map_residual(wdf.G, 3, W),
         4e-4);
  // The honest second-order closedness statement lives here.  Measured:
  // 2.80e-6 fine, ratio 3.99.
  family("height-form", height_form_residual(wdc.G, 3, W), height_form_residual(wdf.G, 3, W),
         1e-4);

  const RepresentationSurface rc = roundtrip(coarse, wdc, 3, 3);
  const RepresentationSurface rf = roundtrip(fine, wdf, 6, 6);
  const double gap_c = roundtrip_gap(coarse, wdc, rc);
  const double gap_f = roundtrip_gap(fine, wdf, rf);
  CHECK(gap_f <= 2.5e-4);  // measured 3.12e-5, ratio 3.75
  CHECK(gap_c / gap_f >= 3.0);
  CHECK(gap_c / gap_f <= 5.0);

  // Genuine two-dimensional data leaves an O(h^2) path dependence that must
  // decay under refinement.  Measured: 5.02e-6 fine, ratio 3.75.
  CHECK(rf.path_dependence.l_inf <= 1e-4);
  CHECK(rc.path_dependence.l_inf / rf.path_dependence.l_inf >= 2.5);
  CHECK(rc.path_dependence.l_inf / rf.path_dependence.l_inf <= 6.0);
  CHECK(rf.imag_leak == 0.0);
}

TEST_CASE("embedding in higher codimension carries the representation along") {
  const ImmersionGrid base = off_center_cylinder(3, 0.01);
  ImmersionGrid lifted = base;
  lifted.ambient_dim = 4;
  lifted.e = Vec::Unit(4, 3);
  lifted.points = VectorGrid(base.chart, base.points.margin);
  for (int i = 0; i < base.chart.ns; ++i)
    for (int j = 0; j < base.chart.nt; ++j)
      if (lifted.points.valid(i, j)) {
        const Vec& q = base.points.at(i, j);
        Vec r(4);
        r << q[0], q[1], 0.0, q[2];
        lifted.points.at(i, j) = r;
      }
  lifted.points.seal();

  const WeierstrassData wd = extract_representation(lifted);
  CHECK(wd.p == 2);

  // The dead third slot makes the first quotient component vanish
  // identically, and with it every alignment minor.
  double g1 = 0.0;
  for (int i = 0; i < lifted.chart.ns; ++i)
    for (int j = 0; j < lifted.chart.nt; ++j)
      if (wd.G.valid(i, j)) g1 = std::max(g1, std::abs(wd.G.at(i, j)[0]));
  CHECK(g1 <= 1e-14);
  const Window W{0.4, 1.0, -0.3, 0.3};
  CHECK(alignment_residual(wd.G, W).l_inf <= 1e-15);

  // The live components carry the same numbers as the p = 1 run (measured
  // 1.02e-5, 1.31e-5, 2.08e-5).
  const ResidualReport fi2 = quotient_system_residual(wd, W);
  const ResidualReport eq = gauss_map_residual(wd.G, 3, W);
  CHECK(fi2.l_inf <= 1e-4);
  CHECK(eq.l_inf <= 4e-4);

  const RepresentationSurface rec = roundtrip(lifted, wd, 6, 6);
  CHECK(roundtrip_gap(lifted, wd, rec) <= 2.5e-4);
}

TEST_CASE("gauge walk keeps apex-crossing windows usable") {
  // Across the apex the identity gauge's Psi passes through zero (the first
  // coordinate's derivative equals the curve speed there), so the walk must
  // settle on a swap.  The window is chosen so a node hits s = 0 exactly.
  const ImmersionGrid surf = cylinder_patch(3, -0.6, 0.6, -0.44, 0.44, 0.01, -0.4, 0.4);
  const WeierstrassData wd = extract_representation(surf);
  CHECK(!wd.plane_gauge.isIdentity(1e-14));

  // Measured 1.75e-5 and 2.95e-5: the swap costs nothing in accuracy.
  const Window W{-0.35, 0.35, -0.3, 0.3};
  CHECK(field_system_residual(wd, W).l_inf <= kFieldSystemTol);
  const RepresentationSurface rec = roundtrip(surf, wd, 6, 6);
  CHECK(roundtrip_gap(surf, wd, rec) <= 3e-4);
}

TEST_CASE("negative controls: non-minimal lift and noisy quotient data") {
  // A round cylinder is isothermal but never singular minimal; its lifted
  // fields are far from holomorphic-with-warp.  Window dodges the Psi zero
  // at s = -pi/2.
  GridChart2D chart;
  chart.s0 = -1.0;
  chart.t0 = -0.4;
  chart.hs = chart.ht = 0.0125;
  chart.ns = 57;
  chart.nt = 65;
  const ImmersionGrid round = round_cylinder(chart, 1.0, 4.0, 1.0);
  const WeierstrassData bad = extract_representation(round);
  // Measured 8.76e-1 -- four orders of magnitude above the solution ceiling,
  // far past the required 10x.
  CHECK(field_system_residual(bad).l_inf >= 10.0 * kFieldSystemTol);

  // Perturbing the quotient map at the 1e-2 level must inflate the
  // second-order equation residual by well over an order of magnitude.
  const ImmersionGrid fine = off_center_cylinder(3, 0.01);
  const WeierstrassData wd = extract_representation(fine);
  const Window W{0.4, 1.0, -0.3, 0.3};
  const double clean = gauss_map_residual(wd.G, 3, W).l_inf;

  ComplexGrid noisy = wd.G;
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> amp(-1e-2, 1e-2);
  for (int i = 0; i < fine.chart.ns; ++i)
    for (int j = 0; j < fine.chart.nt; ++j)
      if (noisy.valid(i, j))
        for (int k = 0; k < noisy.at(i, j).size(); ++k)
          noisy.at(i, j)[k] += cplx(amp(rng), amp(rng));
  // Second differences of the noise scale like 1e-2 / h^2: measured
  // inflation factor 3.8e6.
  const double dirty = gauss_map_residual(noisy, 3, W).l_inf;
  CHECK(dirty >= 10.0 * clean);
}

TEST_CASE("representation rejects what it must") {
  GridChart2D chart;
  chart.s0 = chart.t0 = 0.0;
  chart.hs = chart.ht = 0.1;
  chart.ns = chart.nt = 9;

  // Flat horizontal patch: constant height.  The identity gauge kills Psi,
  // the swap rescues it, and then the height component of G is identically
  // zero -- not substantial.
  const ImmersionGrid flat = plane_patch(chart, 1.0, 2.0);
  CHECK(thrown_message([&] { extract_representation(flat); }).find("substantial") !=
        std::string::npos);

  // With the candidate list trimmed to the identity the walk must give up.
  ExtractOptions only_id;
  only_id.transforms = std::vector<Eigen::MatrixXd>{Eigen::MatrixXd::Identity(2, 2)};
  CHECK(thrown_message([&] { extract_representation(flat, only_id); }).find("gauge") !=
        std::string::npos);

  // Non-integer exponent has no lift of this form.
  CHECK_THROWS_AS(extract_representation(plane_patch(chart, 1.0, 1.5)), ParamError);

  // Polar sphere chart is not isothermal.
  GridChart2D polar;
  polar.s0 = 0.2;
  polar.t0 = 0.0;
  polar.hs = polar.ht = 0.02;
  polar.ns = polar.nt = 21;
  CHECK_THROWS_AS(extract_representation(sphere_patch_polar(polar, 1.0, 1.0)), ParamError);

  // Warped-model domain errors.
  CHECK_THROWS_AS(warp_exponent(-1.0, 3), ParamError);
  CHECK_THROWS_AS(warp_exponent(1.0, 1), ParamError);
  Vec bad(2);
  bad << 1.0, -1.0;
  CHECK_THROWS_AS(to_warped_model(bad, 3), ParamError);
  CHECK_THROWS_AS(f_value(CVec()), ParamError);

  // Integration gauge errors.
  const ImmersionGrid fine = off_center_cylinder(3, 0.02);
  const WeierstrassData wd = extract_representation(fine);
  IntegrationGauge ig;
  ig.base_i = ig.base_j = 3;
  ig.omega_base = 0.0;
  CHECK_THROWS_AS(integrate_gauss_map(wd.G, 3, ig), ParamError);
  ig.omega_base = 1.0;
  ig.y_base = Vec::Zero(5);
  CHECK_THROWS_AS(integrate_gauss_map(wd.G, 3, ig), ParamError);
  ig.y_base = Vec::Zero(2);
  CHECK_THROWS_AS(integrate_gauss_map(wd.G, 2, ig), ParamError);
}
