#include "sigmin/singular_minimal.hpp"

#include <cmath>

namespace sigmin {

namespace {
int energy_margin(const ImmersionGrid& surf) { return std::max(1, surf.points.margin + 1); }

double cell_weight(const ImmersionGrid& surf, int i, int j) {
  const FundamentalData fd = fundamental_data(surf, i, j);
  return std::sqrt(fd.metric.determinant()) * surf.chart.hs * surf.chart.ht;
}
}  // namespace

void VariationField::validate(const ImmersionGrid& surf) const {
  if (!eta.chart.same_nodes(surf.chart)) throw ParamError("variation chart mismatch");
  if (collar < 2) throw ParamError("variation collar must be at least 2 layers");
  for (int i = 0; i < eta.chart.ns; ++i)
    for (int j = 0; j < eta.chart.nt; ++j) {
      const Vec& v = eta.at(i, j);
      if (v.size() != surf.ambient_dim || !v.allFinite()) throw NumericError("bad variation vector");
      const int d = std::min(std::min(i, eta.chart.ns - 1 - i), std::min(j, eta.chart.nt - 1 - j));
      if (d < collar && v.norm() != 0.0) throw ParamError("variation must vanish on the collar");
    }
}

double bump_value(const GridChart2D& chart, int collar, double s, double t) {
  // Product bump (1-x^2)^3 (1-y^2)^3 stretched over the open region strictly
  // inside the collar; C^2 at the cutoff, which keeps the perturbed-energy
  // stencils second-order accurate.
  const double sa = chart.s(collar), sb = chart.s(chart.ns - 1 - collar);
  const double ta = chart.t(collar), tb = chart.t(chart.nt - 1 - collar);
  const double x = (2.0 * s - sa - sb) / (sb - sa);
  const double y = (2.0 * t - ta - tb) / (tb - ta);
  if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0) return 0.0;
  const double bx = std::pow(1.0 - x * x, 3);
  const double by = std::pow(1.0 - y * y, 3);
  return bx * by;
}

VariationField bump_variation(const ImmersionGrid& surf, const Vec& direction, double amplitude) {
  if (direction.size() != surf.ambient_dim) throw ParamError("variation direction dimension mismatch");
  VariationField var;
  var.eta = VectorGrid(surf.chart);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      var.eta.at(i, j) =
          amplitude * bump_value(surf.chart, var.collar, surf.chart.s(i), surf.chart.t(j)) * direction;
  var.validate(surf);
  return var;
}

VariationField bump_normal_variation(const ImmersionGrid& surf, double amplitude) {
  VariationField var;
  var.eta = VectorGrid(surf.chart);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      const double b = bump_value(surf.chart, var.collar, surf.chart.s(i), surf.chart.t(j));
      if (b == 0.0) {
        var.eta.at(i, j) = Vec::Zero(surf.ambient_dim);
      } else {
        const FundamentalData fd = fundamental_data(surf, i, j);
        var.eta.at(i, j) = amplitude * b * fd.normal_frame.front();
      }
    }
  var.validate(surf);
  return var;
}

Vec density_normal_component(const ImmersionGrid& surf, const FundamentalData& fd) {
  return normal_part(fd, surf.e);
}

VectorGrid sm_residual_field(const ImmersionGrid& surf) {
  VectorGrid out(surf.chart, surf.points.margin + 1);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const FundamentalData fd = fundamental_data(surf, i, j);
      const Vec e_perp = normal_part(fd, surf.e);
      out.at(i, j) = 2.0 * fd.H - (surf.a / surf.phi(i, j)) * e_perp;
    }
  out.seal();
  return out;
}

ResidualReport sm_residual(const ImmersionGrid& surf, std::optional<Window> window) {
  return residual_norms("sm_residual", sm_residual_field(surf), window);
}

double energy(const ImmersionGrid& surf) {
  const int m = energy_margin(surf);
  double total = 0.0;
  for (int i = m; i < surf.chart.ns - m; ++i)
    for (int j = m; j < surf.chart.nt - m; ++j)
      total += std::pow(surf.phi(i, j), surf.a) * cell_weight(surf, i, j);
  return total;
}

double first_variation_numeric(const ImmersionGrid& surf, const VariationField& var, double dt) {
  var.validate(surf);
  if (!(dt > 0.0)) throw ParamError("first variation step must be positive");
  ImmersionGrid plus = surf, minus = surf;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      plus.points.at(i, j) += dt * var.eta.at(i, j);
      minus.points.at(i, j) -= dt * var.eta.at(i, j);
    }
  return (energy(plus) - energy(minus)) / (2.0 * dt);
}

double first_variation_analytic(const ImmersionGrid& surf, const VariationField& var) {
  var.validate(surf);
  const int m = energy_margin(surf);
  double total = 0.0;
  for (int i = m; i < surf.chart.ns - m; ++i)
    for (int j = m; j < surf.chart.nt - m; ++j) {
      const Vec& eta = var.eta.at(i, j);
      if (eta.norm() == 0.0) continue;
      const FundamentalData fd = fundamental_data(surf, i, j);
      const double phi = surf.phi(i, j);
      const Vec e_perp = normal_part(fd, surf.e);
      const Vec force = surf.a * e_perp - 2.0 * phi * fd.H;
      total += std::pow(phi, surf.a - 1.0) * force.dot(eta) *
               std::sqrt(fd.metric.determinant()) * surf.chart.hs * surf.chart.ht;
    }
  return total;
}

VectorGrid weighted_mean_curvature(const ImmersionGrid& surf) {
  VectorGrid out(surf.chart, surf.points.margin + 1);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const FundamentalData fd = fundamental_data(surf, i, j);
      const double phi = surf.phi(i, j);
      const Vec e_perp = normal_part(fd, surf.e);
      out.at(i, j) = std::pow(phi, -surf.a) * (fd.H - (surf.a / (2.0 * phi)) * e_perp);
    }
  out.seal();
  return out;
}

namespace {
// Raw coordinate second derivatives corrected by the conformal ambient
// connection of the metric phi^a <.,.>: for coordinate fields X, Y,
//   D~_X dg(Y) = d2g(X,Y) + (a/2 phi)(<X,e> dg(Y) + <Y,e> dg(X) - <dgX,dgY> e).
// Built from the position stencils directly so this stays an independent
// route from fundamental_data's projected second form.
struct ConformalJet {
  Vec beta_ss, beta_st, beta_tt;
};

ConformalJet conformal_second_derivatives(const ImmersionGrid& surf, const FundamentalData& fd,
                                          double phi, int i, int j) {
  const auto& P = surf.points;
  const double hs = surf.chart.hs, ht = surf.chart.ht;
  const Vec g_ss = (P.at(i + 1, j) - 2.0 * P.at(i, j) + P.at(i - 1, j)) / (hs * hs);
  const Vec g_tt = (P.at(i, j + 1) - 2.0 * P.at(i, j) + P.at(i, j - 1)) / (ht * ht);
  const Vec g_st =
      (P.at(i + 1, j + 1) - P.at(i + 1, j - 1) - P.at(i - 1, j + 1) + P.at(i - 1, j - 1)) /
      (4.0 * hs * ht);

  const double c = surf.a / (2.0 * phi);
  const double es = fd.r_s.dot(surf.e), et = fd.r_t.dot(surf.e);
  ConformalJet out;
  out.beta_ss = g_ss + c * (2.0 * es * fd.r_s - fd.metric(0, 0) * surf.e);
  out.beta_st = g_st + c * (es * fd.r_t + et * fd.r_s - fd.metric(0, 1) * surf.e);
  out.beta_tt = g_tt + c * (2.0 * et * fd.r_t - fd.metric(1, 1) * surf.e);
  return out;
}

Vec frame_projection(const FundamentalData& fd, const Vec& x) {
  Vec out = Vec::Zero(x.size());
  for (const Vec& nu : fd.normal_frame) out += nu.dot(x) * nu;
  return out;
}
}  // namespace

VectorGrid weighted_mean_curvature_direct(const ImmersionGrid& surf) {
  VectorGrid out(surf.chart, surf.points.margin + 1);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const FundamentalData fd = fundamental_data(surf, i, j);
      const double phi = surf.phi(i, j);
      const ConformalJet cj = conformal_second_derivatives(surf, fd, phi, i, j);
      const Vec a_ss = frame_projection(fd, cj.beta_ss);
      const Vec a_st = frame_projection(fd, cj.beta_st);
      const Vec a_tt = frame_projection(fd, cj.beta_tt);
      const Eigen::Matrix2d& gi = fd.inverse_metric;
      // Weighted inverse metric is phi^(-a) g^{ij}; 2H = weighted trace.
      out.at(i, j) = 0.5 * std::pow(phi, -surf.a) *
                     (gi(0, 0) * a_ss + 2.0 * gi(0, 1) * a_st + gi(1, 1) * a_tt);
    }
  out.seal();
  return out;
}

ResidualReport second_form_conformal_residual(const ImmersionGrid& surf,
                                              std::optional<Window> window) {
  ScalarGrid defect(surf.chart, surf.points.margin + 1);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!defect.valid(i, j)) continue;
      const FundamentalData fd = fundamental_data(surf, i, j);
      const double phi = surf.phi(i, j);
      const Vec e_perp = normal_part(fd, surf.e);
      const ConformalJet cj = conformal_second_derivatives(surf, fd, phi, i, j);
      const double c = surf.a / (2.0 * phi);
      double worst = 0.0;
      const Vec d_ss = frame_projection(fd, cj.beta_ss) - (fd.alpha_ss - c * fd.metric(0, 0) * e_perp);
      const Vec d_st = frame_projection(fd, cj.beta_st) - (fd.alpha_st - c * fd.metric(0, 1) * e_perp);
      const Vec d_tt = frame_projection(fd, cj.beta_tt) - (fd.alpha_tt - c * fd.metric(1, 1) * e_perp);
      worst = std::max({d_ss.norm(), d_st.norm(), d_tt.norm()});
      defect.at(i, j) = worst;
    }
  defect.seal();
  return residual_norms("second_form_conformal", defect, window);
}

ResidualReport laplacian_identity_residual(const ImmersionGrid& surf, std::optional<Window> window) {
  const ScalarGrid phi = surf.phi_grid();
  ScalarGrid defect(surf.chart, std::max(surf.points.margin, phi.margin) + 2);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!defect.valid(i, j)) continue;
      const FundamentalData fd = fundamental_data(surf, i, j);
      const Vec e_perp = normal_part(fd, surf.e);
      const double lhs = laplace_beltrami(surf, phi, i, j);
      const double rhs = (surf.a / surf.phi(i, j)) * e_perp.squaredNorm();
      defect.at(i, j) = lhs - rhs;
    }
  defect.seal();
  return residual_norms("laplacian_identity", defect, window);
}

ResidualReport laplacian_product_rule_residual(const ImmersionGrid& surf,
                                               std::optional<Window> window) {
  const ScalarGrid phi = surf.phi_grid();
  ScalarGrid phi_sq(surf.chart, phi.margin);
  for (size_t k = 0; k < phi.values.size(); ++k) phi_sq.values[k] = phi.values[k] * phi.values[k];

  ScalarGrid defect(surf.chart, std::max(surf.points.margin, phi.margin) + 2);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!defect.valid(i, j)) continue;
      const double half_lap_sq = 0.5 * laplace_beltrami(surf, phi_sq, i, j);
      const double lap = laplace_beltrami(surf, phi, i, j);
      const double grad = gradient_sq(surf, phi, i, j);
      defect.at(i, j) = half_lap_sq - (surf.phi(i, j) * lap + grad);
    }
  defect.seal();
  return residual_norms("laplacian_product_rule", defect, window);
}

ScalarGrid half_laplacian_phi_sq(const ImmersionGrid& surf) {
  const ScalarGrid phi = surf.phi_grid();
  ScalarGrid phi_sq(surf.chart, phi.margin);
  for (size_t k = 0; k < phi.values.size(); ++k) phi_sq.values[k] = phi.values[k] * phi.values[k];
  ScalarGrid out(surf.chart, std::max(surf.points.margin, phi.margin) + 2);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = 0.5 * laplace_beltrami(surf, phi_sq, i, j);
  out.seal();
  return out;
}

}  // namespace sigmin
