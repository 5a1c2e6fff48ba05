#pragma once

// Rotational extension: sweep a profile patch g = (h, phi e) under the
// orthogonal group fixing the h-plane, producing the n-dimensional orbit
// submanifold f(x, y) = (h(x), phi(x) j(y)) with j on the unit (n-2)-sphere.
//
// The profile's height phi = <g, e> becomes the orbit radius, so e must be
// the last coordinate axis of the profile's ambient space.  The structural
// route evaluates n H_f = P(2 H_g - ((n-2)/phi) e_perp) from profile data
// alone; the numeric route differentiates the built grid and knows nothing
// about the symmetry, which is what makes the comparison a real check.

#include "sigmin/geometry.hpp"
#include "sigmin/geometry_nd.hpp"

namespace sigmin {

struct RotationalSpec {
  ImmersionGrid profile;  // e must be the last ambient axis; phi > 0
  int n = 3;              // orbit dimension; adds n-2 angle axes
  std::vector<int> angle_counts;                       // n-2 entries, >= 5
  std::vector<std::pair<double, double>> angle_ranges; // polar ones inside (0, pi)
  void validate() const;
};

// Spherical chart of the unit sphere in R^(k+1) for k angles: the leading
// k-1 angles are polar, the last is the azimuth.
Vec sphere_point(const std::vector<double>& angles);

// The isometry carrying profile ambient vectors to the orbit point: the h
// components pass through, the e component is scattered along j.
Vec rotate_vector(const Vec& xi, const Vec& j);

// Sample f over chart x angle lattice; axes are (s, t, theta_1..theta_{n-2}).
ImmersionGridND build_rotational(const RotationalSpec& spec);

// Angle values of a built node, for reconstructing j at that node.
std::vector<double> node_angles(const RotationalSpec& spec, const std::vector<int>& node);

// n H_f at profile node (i, j) and the given angles, from profile data only.
Vec structural_mean_curvature(const RotationalSpec& spec, int i, int j,
                              const std::vector<double>& angles);

// Spectrum of the shape operator toward the distinguished normal (the normal
// part of the orbit direction P(e)), with the orbit axes' common eigenvalue
// isolated: mu = -<P(e), eta>/phi carries the sphere directions.
struct UmbilicReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double mu_axis = 0.0;         // mean Rayleigh quotient over the angle axes
  double mu_spread = 0.0;       // max deviation among those quotients
  int multiplicity = 0;         // eigenvalues within cluster_tol of mu_axis
  double cluster_width = 0.0;
  double gap = 0.0;             // distance from mu_axis to the nearest outsider
  bool generic = false;         // multiplicity == n-2 exactly
  bool conclusive = false;      // gap resolvably larger than the cluster scale
};

UmbilicReport umbilic_check(const RotationalSpec& spec, const ImmersionGridND& sub,
                            const std::vector<int>& node, double cluster_tol);

}  // namespace sigmin
