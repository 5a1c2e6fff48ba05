#pragma once

// Weierstrass-type representation for singular minimal surfaces.
//
// A surface with 2H = (a/phi) e_perp, a = n-2, lifts isometrically (up to the
// conformal weight phi^a) to a minimal surface in the warped half-space
//
//   <,>_warp = e^{eta(w)} (dx_1^2 + ... + dx_{p+1}^2) + dw^2,
//   eta(w)   = (2(n-2)/n) log((n/2) w),
//
// via the height change  w = (2/n) x_{p+2}^{n/2}  (the density axis is taken
// to be the last coordinate).  In an isothermal chart z = s + i t the lift is
// encoded by p+2 first-order fields
//
//   phi_i = e^{eta/2} y_{i,z}  (i <= p+1),    phi_{p+2} = w_z,
//
// which satisfy  sum phi_i^2 = 0  and  sum |phi_i|^2 = lambda^2 / 2.  After an
// isometry of the x_1..x_{p+1} plane making  Psi = phi_1 - i phi_2  nowhere
// zero, everything collapses to the quotient map G_i = phi_{2+i} / Psi, from
// which the surface can be rebuilt by quadrature.  This header provides the
// extraction, the residual families that certify each layer of that chain,
// and the converse integration.

#include "sigmin/geometry.hpp"

#include <optional>
#include <vector>

namespace sigmin {

// ---------------------------------------------------------------------------
// Warped half-space model.

// Warp exponent eta(w) and its derivative.  w > 0 for n >= 3; the n = 2 case
// degenerates to the flat product (eta = 0 for any w), which recovers the
// classical minimal-surface picture and is allowed here for cross-checks.
double warp_exponent(double w, int n);
double warp_exponent_slope(double w, int n);

// Height change tau(x) = (x_1, ..., x_{p+1}, (2/n) x_{p+2}^{n/2}) sending the
// phi^{n-2}-weighted upper half-space isometrically onto the warped model.
// Last coordinate must be positive (any sign for n = 2).
Vec to_warped_model(const Vec& x, int n);
Vec from_warped_model(const Vec& xw, int n);

// Pullback metric of the warped model under to_warped_model, evaluated on
// tangent vectors u, v at x via the analytic Jacobian.  Equals
// x_{p+2}^{n-2} <u, v> when the map is the claimed isometry.
double warped_pullback(const Vec& x, const Vec& u, const Vec& v, int n);

// ---------------------------------------------------------------------------
// The algebraic F-field steering the quotient map.
//
//   F(z) = ((1 + |<z,z>|^2)/2 + ||z||^2) e_p - z_p (<zbar,zbar> z + zbar)
//
// with <,> the complex-bilinear and ||.|| the Hermitian product on C^p.
// For p = 1 this is the scalar (1 - |z|^4) / 2.
CVec f_value(const CVec& z);
ComplexGrid f_field(const ComplexGrid& G);

// ---------------------------------------------------------------------------
// Extracted representation data.

struct WeierstrassData {
  GridChart2D chart;
  int n = 3;  // density exponent is a = n-2
  int p = 1;  // surface codimension in R^{p+2}

  // Frames fixed during extraction: ambient_rotation maps the input ambient
  // coordinates so the density direction becomes the last axis; plane_gauge
  // is the orthogonal transform of the x_1..x_{p+1} plane chosen so that Psi
  // stays away from zero.  representation_coordinates() composes both.
  Eigen::MatrixXd ambient_rotation;
  Eigen::MatrixXd plane_gauge;

  ComplexGrid phi;       // p+2 fields per node (quadric enforced exactly)
  CScalarGrid Psi;       // phi_1 - i phi_2, nowhere zero on the valid region
  ComplexGrid G;         // quotient map, p components
  ScalarGrid omega;      // lifted height (2/n) phi^{n/2}
  ScalarGrid lambda_sq;  // conformal factor of the lifted metric

  double iso_defect = 0.0;       // sup relative isothermality defect
  double identity_defect = 0.0;  // sup rel. defect of sum |phi_i|^2 = lambda^2/2
};

struct ExtractOptions {
  // Relative isothermality defect allowed, |(E - G) - 2iF| / (E + G).  The
  // centered stencils already contribute O(h^2), so this cannot be pushed to
  // round-off for genuinely isothermal charts.
  double iso_tol = 1e-3;
  // Relative floor the best gauge candidate's worst-case |Psi| must clear,
  // also used for the substantiality check max |G_p| > 0.
  double field_floor = 1e-10;
  // Gauge candidates to score (the one maximizing the worst-case |Psi| over
  // the chart wins); defaults to default_plane_gauges(p+1).
  std::optional<std::vector<Eigen::MatrixXd>> transforms;
};

// Identity followed by all coordinate transpositions of the (p+1)-plane.
// Plane rotations only rephase Psi for p = 1, so swaps are the useful moves.
std::vector<Eigen::MatrixXd> default_plane_gauges(int dim);

// Extract the representation from an isothermally parametrized singular
// minimal surface patch with integer exponent a = n-2 >= 1.  Throws
// ParamError on a non-isothermal chart or non-integer exponent, NumericError
// when every gauge candidate leaves Psi with a zero (exhausted gauge) or when
// the height is constant (non-substantial lift, G_p identically zero).
WeierstrassData extract_representation(const ImmersionGrid& surf,
                                       const ExtractOptions& opt = {});

// Input ambient point expressed in the frame the representation lives in
// (ambient rotation followed by the plane gauge on the first p+1 slots).
Vec representation_coordinates(const WeierstrassData& data, const Vec& point);

// ---------------------------------------------------------------------------
// Residual families.  Each returns the norms of a stacked complex field that
// vanishes identically (to stencil order) iff the corresponding layer of the
// representation holds.

// First-order system of the lifted fields:
//   2 phi_{i,zbar} + eta' conj(phi_i) phi_{p+2}           (i <= p+1)
//   2 phi_{p+2,zbar} - eta' sum_{i<=p+1} |phi_i|^2
ResidualReport field_system_residual(const WeierstrassData& data,
                                     std::optional<Window> window = {});

// First-order system of the quotient data (Psi, G, omega):
//   Psi_zbar - (eta'/2) |Psi|^2 <Gbar,Gbar> G_p
//   G_zbar   - (eta'/2) conj(Psi) F(G)
//   omega_z  - Psi G_p
ResidualReport quotient_system_residual(const WeierstrassData& data,
                                        std::optional<Window> window = {});

// Autonomous second-order equation satisfied by the quotient map alone:
//   G_zbar z = -(n/(n-2)) (||G_zbar||^2/||F||^2) G_p F
//              + (||G_zbar||^2/||F||^2) <G,G> conj(G_p) F
//              + (<G_zbar, conj F>/||F||^2) F_z
ResidualReport gauss_map_residual(const ComplexGrid& G, int n,
                                  std::optional<Window> window = {});

// Alignment G_zbar || F(G): all 2x2 minors of the pair.  Identically zero
// for p = 1 (scalar data), reported as such.
ResidualReport alignment_residual(const ComplexGrid& G,
                                  std::optional<Window> window = {});

// Closedness of the real 1-form  2 Re(Lambda G_p dz)  whose potential drives
// the height and the conformal weight: Im d/dzbar (Lambda G_p), with
// Lambda = <conj(G_zbar), F> / ||F||^2.
ResidualReport height_form_residual(const ComplexGrid& G, int n,
                                    std::optional<Window> window = {});

// ---------------------------------------------------------------------------
// Converse: integrate a quotient map back into a surface patch.

struct IntegrationGauge {
  int base_i = 2, base_j = 2;  // node whose data pins all constants
  double omega_base = 0.0;     // lifted height at the base node, > 0
  Vec y_base;                  // first p+1 coordinates there; empty = zeros
};

struct RepresentationSurface {
  ImmersionGrid surface;  // density axis last, a = n-2; margins sealed
  ScalarGrid nu;          // potential of 2 Re(Lambda G_p dz), zero at base
  ScalarGrid omega;       // omega_base * exp((n/(n-2)) nu)
  ScalarGrid h;           // conformal quadrature weight, (n-2) h = phi
  CScalarGrid Psi;        // reconstructed field (n/(n-2)) omega Lambda

  // Same potential integrated along the opposite staircase orientation;
  // bounds the path dependence left by the discrete closedness defect.
  ResidualReport path_dependence;
  double h_identity_defect = 0.0;  // sup |(n-2) h - ((n/2) omega)^{2/n}|
  double imag_leak = 0.0;          // sup |Im| of the coordinate potentials
};

// Quadrature of the representation formulas from the quotient map alone:
//   y_1 has dz-form Lambda h (1 - <G,G>),  y_2 has  i Lambda h (1 + <G,G>),
//   y_{2+j} has 2 Lambda h G_j (j < p), and the density coordinate is
//   (n-2) h.  Real coordinates are line integrals of f dz + conj(f) dzbar.
RepresentationSurface integrate_gauss_map(const ComplexGrid& G, int n,
                                          const IntegrationGauge& gauge);

}  // namespace sigmin
