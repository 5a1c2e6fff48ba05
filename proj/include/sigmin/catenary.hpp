#pragma once

// Generating curves for singular-minimal cylinders: the curvature ODE with
// its first integral, Frenet reconstruction of the plane curve, the constant
// direction field built from it, and the cylinder assembly g(s,t) = c(s) + t w.
//
// The curvature function solves
//   kdot^2 + ((n-1)/(n-2))^2 k^4 - ((n-1)/lambda)^2 k^(2n/(n-1)) = 0
// integrated in second-order form from the apex k(0) = k_max, kdot(0) = 0.
// Only lambda^2 enters the coefficients; a negative lambda yields the same
// curve with the distinguished direction reflected, so |lambda| is used in
// all derived quantities.

#include "sigmin/geometry.hpp"

namespace sigmin {

struct CatenaryParams {
  int n = 3;            // dimension parameter; exponent a = n - 2
  double lambda = 1.0;  // nonzero scale parameter
  double s_min = -1.0;  // window start (multiple of step, <= 0)
  double s_max = 1.0;   // window end (multiple of step, >= 0)
  double step = 1e-3;   // RK4 step
  void validate() const;
};

// Apex curvature ((n-2)/|lambda|)^((n-1)/(n-2)), the root of the first
// integral with kdot = 0.
double catenary_k_max(const CatenaryParams& p);

// Step fine enough for stiff parameter combinations: 1e-3 divided by the
// next power of two at or above k_max^2, so lattices at millimeter-multiple
// endpoints stay aligned.  (The curve loops on scale 1/k_max; fourth-order
// error constants grow like powers of k_max.)
double resolved_step(const CatenaryParams& p);

// Value of the conserved quantity at a state (vanishes along solutions).
double catenary_first_integral(const CatenaryParams& p, double k, double kdot);

struct CurvatureSolution {
  CatenaryParams params;
  std::vector<double> s;     // ascending, contains 0
  std::vector<double> k;     // positive, trimmed at the 1e-8 floor
  std::vector<double> kdot;
  size_t apex;               // index with s = 0
};

// Integrate the curvature ODE over [s_min, s_max] from the apex.
CurvatureSolution solve_curvature(const CatenaryParams& p);

struct FrenetCurve {
  CatenaryParams params;
  std::vector<double> s, theta, k, kdot, u, v;
  std::vector<Eigen::Vector2d> position;   // (x, z) with z = <c, e>
  std::vector<Eigen::Vector2d> e_samples;  // e rebuilt per node from frame components
  Eigen::Vector2d e;                       // (0, 1) after alignment
  size_t apex;
};

// Frenet integration theta' = k, c' = (cos theta, sin theta), aligned so the
// reconstructed direction field is (0,1) and <c,e> = u = |lambda| k^(-1/(n-1)).
FrenetCurve reconstruct_curve(const CurvatureSolution& sol);

// Cylinder over the curve: (x(s), t, z(s)) with e = e_z and a = n-2.  The
// sample window [s_lo, s_hi] must land on curve nodes; `stride` subsamples
// the curve so the surface spacing is stride * step.  Constant-curvature
// input (a circle arc) is rejected: the defining equation then degenerates
// to the excluded round cylinder.
ImmersionGrid build_cylinder(const FrenetCurve& curve, double s_lo, double s_hi, int stride,
                             double t0, double t1, int nt);

// The classical non-examples (cone, tangent developable, circle cylinder)
// with parameters chosen so the defining equation genuinely fails on them.
std::vector<std::pair<std::string, ImmersionGrid>> excluded_case_surfaces();

}  // namespace sigmin
