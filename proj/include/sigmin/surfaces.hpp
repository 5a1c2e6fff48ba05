#pragma once

// Catalog of analytic test patches.  Everything here is deterministic;
// the "random" family draws its coefficients from a fixed-seed generator so
// runs are reproducible bit for bit.

#include "sigmin/geometry.hpp"

#include <functional>

namespace sigmin {

// Graph z = psi(s, t) over the chart, density direction e_z.
ImmersionGrid graph_surface(const GridChart2D& chart, const std::function<double(double, double)>& psi,
                            double a);

// Flat horizontal patch at the given height.
ImmersionGrid plane_patch(const GridChart2D& chart, double height, double a);

// Sphere of radius R centered at (0,0,center_z), Mercator chart
// (s = longitude, t = conformal latitude); conformal, so also used as an
// isothermal source for the lifted-representation tests.
ImmersionGrid sphere_patch_mercator(const GridChart2D& chart, double R, double center_z, double a);

// Sphere of radius R centered at the origin, polar chart
// (s = inclination from the equator toward +z, t = azimuth).
ImmersionGrid sphere_patch_polar(const GridChart2D& chart, double R, double a);

// Round cylinder: circle of radius R centered at height center_z in the
// x-z plane, swept along y.  The generating curve is a circle, so this is
// the classic excluded case: never a-singular minimal, and its lift is the
// standard non-minimal control.  center_z > R keeps <g,e> positive.
ImmersionGrid round_cylinder(const GridChart2D& chart, double R, double center_z, double a);

// Cone over a horizontal circle: g(s,t) = t * c(s) with c on the unit
// sphere at polar angle beta; chart t-range must stay positive.
ImmersionGrid cone_patch(const GridChart2D& chart, double beta, double a);

// Tangent developable of a helix (radius 1, pitch b, lifted by z0):
// g(s,t) = c(s) + t * c'(s); keep t > 0 away from the singular edge.
ImmersionGrid tangent_developable_patch(const GridChart2D& chart, double b, double z0, double a);

// Deterministic family of gentle analytic surfaces for operator
// cross-checks; indices 0..7 are graphs in R^3, 8..9 graphs in R^4 (p = 2).
ImmersionGrid analytic_test_surface(int index, const GridChart2D& chart);

}  // namespace sigmin
