#pragma once

// Residuals and functionals for surfaces that are minimal with respect to
// the density <g,e>^a: the defining equation, the weighted energy and its
// first variation, the conformally weighted mean curvature (two independent
// routes), and the support-function Laplacian identities.

#include "sigmin/geometry.hpp"

namespace sigmin {

// Perturbation field eta on the chart; must vanish on a boundary collar at
// least `collar` layers wide so the perturbed and unperturbed energies see
// identical boundary cells.
struct VariationField {
  VectorGrid eta;
  int collar = 2;
  void validate(const ImmersionGrid& surf) const;
};

// Smooth product bump, zero outside the collar, times a constant direction.
VariationField bump_variation(const ImmersionGrid& surf, const Vec& direction, double amplitude);

// Same bump times the first normal-frame vector at each node.
VariationField bump_normal_variation(const ImmersionGrid& surf, double amplitude);

// Scalar bump value (shared by the builders above and the test oracles).
double bump_value(const GridChart2D& chart, int collar, double s, double t);

// The component of e orthogonal to the tangent plane at a node.
Vec density_normal_component(const ImmersionGrid& surf, const FundamentalData& fd);

// Pointwise defect of the defining equation, R = 2H - (a/phi) e_perp,
// evaluated one layer inside the chart.
VectorGrid sm_residual_field(const ImmersionGrid& surf);
ResidualReport sm_residual(const ImmersionGrid& surf, std::optional<Window> window = {});

// Weighted area E = sum phi^a sqrt(det g) hs ht over interior-node cells.
double energy(const ImmersionGrid& surf);

// Central-difference derivative of t -> E(g + t eta) at t = 0.
double first_variation_numeric(const ImmersionGrid& surf, const VariationField& var, double dt);

// Closed-form first variation: sum phi^(a-1) <a e_perp - 2 phi H, eta> dL
// over the same interior cells as energy().
double first_variation_analytic(const ImmersionGrid& surf, const VariationField& var);

// Mean curvature of the surface under the conformally rescaled ambient
// metric phi^a <.,.>, via the rescaling identity applied to Euclidean data.
VectorGrid weighted_mean_curvature(const ImmersionGrid& surf);

// Independent route: assemble the conformal ambient connection, correct the
// coordinate second derivatives, project onto the normal frame, and trace
// with the weighted first fundamental form.
VectorGrid weighted_mean_curvature_direct(const ImmersionGrid& surf);

// Defect of the conformal second-form identity
// alpha_w(X,Y) = alpha(X,Y) - (a/2phi) <X,Y> e_perp, max over components.
ResidualReport second_form_conformal_residual(const ImmersionGrid& surf,
                                              std::optional<Window> window = {});

// |Lap phi - (a/phi)|e_perp|^2|; zero in the continuum exactly on a-singular
// minimal surfaces.  Needs two interior layers.
ResidualReport laplacian_identity_residual(const ImmersionGrid& surf,
                                           std::optional<Window> window = {});

// |(1/2) Lap(phi^2) - phi Lap(phi) - |grad phi|^2|; a calculus identity on
// every immersion, so this isolates pure discretization error.
ResidualReport laplacian_product_rule_residual(const ImmersionGrid& surf,
                                               std::optional<Window> window = {});

// Pointwise values of (1/2) Lap(phi^2); >= 1 - O(h^2) on verified instances
// with a >= 1.
ScalarGrid half_laplacian_phi_sq(const ImmersionGrid& surf);

}  // namespace sigmin
