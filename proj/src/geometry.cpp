#include "sigmin/geometry.hpp"

#include <cmath>

namespace sigmin {

namespace {
constexpr double kMetricDetFloor = 1e-10;

// Centered first/second differences of the position field at one node.
struct NodeJets {
  Vec g_s, g_t, g_ss, g_st, g_tt;
};

NodeJets node_jets(const ImmersionGrid& surf, int i, int j) {
  const auto& P = surf.points;
  const double hs = surf.chart.hs, ht = surf.chart.ht;
  NodeJets n;
  n.g_s = (P.at(i + 1, j) - P.at(i - 1, j)) / (2.0 * hs);
  n.g_t = (P.at(i, j + 1) - P.at(i, j - 1)) / (2.0 * ht);
  n.g_ss = (P.at(i + 1, j) - 2.0 * P.at(i, j) + P.at(i - 1, j)) / (hs * hs);
  n.g_tt = (P.at(i, j + 1) - 2.0 * P.at(i, j) + P.at(i, j - 1)) / (ht * ht);
  n.g_st = (P.at(i + 1, j + 1) - P.at(i + 1, j - 1) - P.at(i - 1, j + 1) + P.at(i - 1, j - 1)) /
           (4.0 * hs * ht);
  return n;
}

Eigen::Matrix2d first_form(const NodeJets& n) {
  Eigen::Matrix2d g;
  g(0, 0) = n.g_s.dot(n.g_s);
  g(0, 1) = g(1, 0) = n.g_s.dot(n.g_t);
  g(1, 1) = n.g_t.dot(n.g_t);
  return g;
}
}  // namespace

ScalarGrid ImmersionGrid::phi_grid() const {
  ScalarGrid out(chart, points.margin);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = points.at(i, j).dot(e);
  out.seal();
  return out;
}

void ImmersionGrid::validate() const {
  chart.validate();
  if (ambient_dim < 3) throw ParamError("immersion needs ambient dimension >= 3");
  if (e.size() != ambient_dim) throw SchemaError("density vector size does not match ambient dimension");
  if (std::abs(e.norm() - 1.0) > 1e-12) throw ParamError("density vector must be unit");
  if (!(a > 0.0)) throw ParamError("homogeneity exponent must be positive");
  if ((int)points.values.size() != chart.count()) throw SchemaError("point array does not match chart");
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) {
      if (!points.valid(i, j)) continue;
      const Vec& p = points.at(i, j);
      if (p.size() != ambient_dim) throw SchemaError("point dimension mismatch");
      if (!p.allFinite()) throw NumericError("non-finite surface point");
      if (!(p.dot(e) > 0.0)) throw NumericError("support function <g,e> must stay positive");
    }
}

FundamentalData fundamental_data(const ImmersionGrid& surf, int i, int j) {
  const int inner = std::min(std::min(i, surf.chart.ns - 1 - i), std::min(j, surf.chart.nt - 1 - j));
  if (inner < surf.points.margin + 1)
    throw ParamError("fundamental_data needs an interior node (one stencil layer)");

  FundamentalData fd;
  const NodeJets n = node_jets(surf, i, j);
  fd.r_s = n.g_s;
  fd.r_t = n.g_t;
  fd.metric = first_form(n);
  const double det = fd.metric.determinant();
  if (!(det > kMetricDetFloor)) throw NumericError("degenerate metric (det <= 1e-10)");
  fd.inverse_metric = fd.metric.inverse();

  // Deterministic normal frame: orthonormalize the ambient basis against the
  // tangent plane and keep the first p survivors, in index order.
  std::vector<Vec> tangent_on = gram_schmidt({fd.r_s, fd.r_t}, {});
  if (tangent_on.size() != 2) throw NumericError("tangent vectors do not span a plane");
  std::vector<Vec> ambient;
  for (int k = 0; k < surf.ambient_dim; ++k) ambient.push_back(Vec::Unit(surf.ambient_dim, k));
  fd.normal_frame = gram_schmidt(ambient, tangent_on);
  if ((int)fd.normal_frame.size() != surf.ambient_dim - 2)
    throw NumericError("normal frame rank deficiency");

  // Second form = metric-orthogonal part of the second partials.
  fd.alpha_ss = n.g_ss;
  fd.alpha_st = n.g_st;
  fd.alpha_tt = n.g_tt;
  for (Vec* alpha : {&fd.alpha_ss, &fd.alpha_st, &fd.alpha_tt}) {
    Eigen::Vector2d proj(fd.r_s.dot(*alpha), fd.r_t.dot(*alpha));
    Eigen::Vector2d coef = fd.inverse_metric * proj;
    *alpha -= coef[0] * fd.r_s + coef[1] * fd.r_t;
  }

  const Eigen::Matrix2d& gi = fd.inverse_metric;
  fd.H = 0.5 * (gi(0, 0) * fd.alpha_ss + 2.0 * gi(0, 1) * fd.alpha_st + gi(1, 1) * fd.alpha_tt);
  return fd;
}

Vec normal_part(const FundamentalData& fd, const Vec& x) {
  Eigen::Vector2d proj(fd.r_s.dot(x), fd.r_t.dot(x));
  Eigen::Vector2d coef = fd.inverse_metric * proj;
  return x - coef[0] * fd.r_s - coef[1] * fd.r_t;
}

double laplace_beltrami(const ImmersionGrid& surf, const ScalarGrid& f, int i, int j) {
  const int inner = std::min(std::min(i, surf.chart.ns - 1 - i), std::min(j, surf.chart.nt - 1 - j));
  if (inner < std::max(surf.points.margin, f.margin) + 2)
    throw ParamError("laplace_beltrami needs two interior layers");

  // Divergence-form stencil: flux F^k = sqrt(det g) g^{kl} d_l f evaluated at
  // the four neighbors, then centered divergence divided by sqrt(det g).
  auto flux = [&](int ii, int jj, int comp) {
    const NodeJets n = node_jets(surf, ii, jj);
    const Eigen::Matrix2d g = first_form(n);
    const double det = g.determinant();
    if (!(det > kMetricDetFloor)) throw NumericError("degenerate metric in laplace_beltrami");
    const Eigen::Matrix2d gi = g.inverse();
    const double fs = (f.at(ii + 1, jj) - f.at(ii - 1, jj)) / (2.0 * surf.chart.hs);
    const double ft = (f.at(ii, jj + 1) - f.at(ii, jj - 1)) / (2.0 * surf.chart.ht);
    const double root = std::sqrt(det);
    return comp == 0 ? root * (gi(0, 0) * fs + gi(0, 1) * ft)
                     : root * (gi(1, 0) * fs + gi(1, 1) * ft);
  };

  const double div = (flux(i + 1, j, 0) - flux(i - 1, j, 0)) / (2.0 * surf.chart.hs) +
                     (flux(i, j + 1, 1) - flux(i, j - 1, 1)) / (2.0 * surf.chart.ht);
  const double det = first_form(node_jets(surf, i, j)).determinant();
  return div / std::sqrt(det);
}

double gradient_sq(const ImmersionGrid& surf, const ScalarGrid& f, int i, int j) {
  const NodeJets n = node_jets(surf, i, j);
  const Eigen::Matrix2d g = first_form(n);
  const double det = g.determinant();
  if (!(det > kMetricDetFloor)) throw NumericError("degenerate metric in gradient_sq");
  const Eigen::Matrix2d gi = g.inverse();
  const double fs = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * surf.chart.hs);
  const double ft = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * surf.chart.ht);
  return gi(0, 0) * fs * fs + 2.0 * gi(0, 1) * fs * ft + gi(1, 1) * ft * ft;
}

Eigen::Matrix2d shape_operator(const FundamentalData& fd, const Vec& normal) {
  Eigen::Matrix2d W;
  W(0, 0) = fd.alpha_ss.dot(normal);
  W(0, 1) = W(1, 0) = fd.alpha_st.dot(normal);
  W(1, 1) = fd.alpha_tt.dot(normal);
  return fd.inverse_metric * W;
}

}  // namespace sigmin
