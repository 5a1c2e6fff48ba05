#pragma once

// Discrete extrinsic geometry of immersed surface patches g : chart -> R^m.
//
// Mean curvature trace convention: H is the mean curvature VECTOR normalized
// so that 2H = trace_g(alpha) for surfaces (and nH = trace for n-manifolds in
// geometry_nd.hpp).  All derivatives are the centered stencils from
// numerics.hpp, so every pointwise quantity needs the node to sit at least
// one layer inside the chart (two for the Laplace-Beltrami operator).

#include "sigmin/numerics.hpp"

namespace sigmin {

struct ImmersionGrid {
  GridChart2D chart;
  int ambient_dim = 3;  // m = p + 2
  VectorGrid points;    // samples of g, R^m per node
  Vec e;                // unit density direction
  double a = 1.0;       // homogeneity exponent, a > 0

  int codim() const { return ambient_dim - 2; }
  double phi(int i, int j) const { return points.at(i, j).dot(e); }

  // phi = <g, e> as a scalar field on the same chart.
  ScalarGrid phi_grid() const;

  // Cheap structural checks: unit e, a > 0, phi > 0, finite points.
  void validate() const;
};

struct FundamentalData {
  Vec r_s, r_t;                        // tangent vectors
  Eigen::Matrix2d metric;              // [ <r_s,r_s> <r_s,r_t> ; . <r_t,r_t> ]
  Eigen::Matrix2d inverse_metric;
  std::vector<Vec> normal_frame;       // p orthonormal normals (deterministic)
  Vec alpha_ss, alpha_st, alpha_tt;    // vector second fundamental form
  Vec H;                               // mean curvature vector, 2H = tr_g alpha
};

// Tangents/metric/normal frame/second form/mean curvature at an interior
// node (one layer in).  Throws NumericError on a degenerate metric
// (det <= 1e-10) or when the normal frame comes up short.
FundamentalData fundamental_data(const ImmersionGrid& surf, int i, int j);

// Component of x orthogonal to the tangent plane (metric projection; no
// normal frame involved, hence gauge-free).
Vec normal_part(const FundamentalData& fd, const Vec& x);

// Intrinsic Laplacian (1/sqrt(det g)) d_i(sqrt(det g) g^{ij} d_j f) at a node
// two layers inside the chart (nested centered stencils).
double laplace_beltrami(const ImmersionGrid& surf, const ScalarGrid& f, int i, int j);

// Squared intrinsic gradient g^{ij} d_i f d_j f at an interior node.
double gradient_sq(const ImmersionGrid& surf, const ScalarGrid& f, int i, int j);

// Shape operator A_normal in the coordinate basis: A = g^{-1} W with
// W_ij = <alpha_ij, normal>.  g*A is symmetric; eigenvalues are real.
Eigen::Matrix2d shape_operator(const FundamentalData& fd, const Vec& normal);

}  // namespace sigmin
