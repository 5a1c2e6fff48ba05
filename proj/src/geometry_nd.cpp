#include "sigmin/geometry_nd.hpp"

#include "sigmin/numerics.hpp"

#include <cmath>

namespace sigmin {

void ImmersionGridND::validate() const {
  const size_t n = dims.size();
  if (n < 2) throw ParamError("ND immersion needs at least two parameter axes");
  if (origin.size() != n || spacing.size() != n) throw SchemaError("ND chart arrays disagree");
  long count = 1;
  for (size_t k = 0; k < n; ++k) {
    if (dims[k] < 5) throw ParamError("ND chart needs at least 5 nodes per axis");
    if (!(spacing[k] > 0.0)) throw ParamError("ND chart spacing must be positive");
    count *= dims[k];
  }
  if ((long)points.size() != count) throw SchemaError("ND point array does not match chart");
  if (ambient_dim <= (int)n) throw ParamError("ND immersion needs positive codimension");
  for (const Vec& p : points)
    if (p.size() != ambient_dim || !p.allFinite()) throw NumericError("bad ND surface point");
}

namespace {

// Tangents and metric at an interior node; shared by both entry points.
void first_order_data(const ImmersionGridND& sub, const std::vector<int>& node,
                      MeanCurvatureND& out) {
  const int n = sub.order();
  out.tangents.resize(n);
  std::vector<int> probe = node;
  for (int axis = 0; axis < n; ++axis) {
    probe[axis] = node[axis] + 1;
    Vec fwd = sub.at(probe);
    probe[axis] = node[axis] - 1;
    Vec bwd = sub.at(probe);
    probe[axis] = node[axis];
    out.tangents[axis] = (fwd - bwd) / (2.0 * sub.spacing[axis]);
  }
  out.metric.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      out.metric(a, b) = out.metric(b, a) = out.tangents[a].dot(out.tangents[b]);
  const double det = out.metric.determinant();
  if (!(det > 1e-10)) throw NumericError("degenerate ND metric");
  out.inverse_metric = out.metric.inverse();
}

// Raw second partial along axes (a, b): three-point stencil on the diagonal,
// four-corner stencil off it.
Vec second_partial(const ImmersionGridND& sub, const std::vector<int>& node, int a, int b) {
  std::vector<int> probe = node;
  if (a == b) {
    probe[a] = node[a] + 1;
    Vec fwd = sub.at(probe);
    probe[a] = node[a] - 1;
    Vec bwd = sub.at(probe);
    return (fwd - 2.0 * sub.at(node) + bwd) / (sub.spacing[a] * sub.spacing[a]);
  }
  probe[a] = node[a] + 1;
  probe[b] = node[b] + 1;
  Vec pp = sub.at(probe);
  probe[b] = node[b] - 1;
  Vec pm = sub.at(probe);
  probe[a] = node[a] - 1;
  Vec mm = sub.at(probe);
  probe[b] = node[b] + 1;
  Vec mp = sub.at(probe);
  return (pp - pm - mp + mm) / (4.0 * sub.spacing[a] * sub.spacing[b]);
}

// Component of x orthogonal to the tangent space, via the metric projection.
Vec normal_part_nd(const MeanCurvatureND& data, const Vec& x) {
  const int n = (int)data.tangents.size();
  Eigen::VectorXd proj(n);
  for (int a = 0; a < n; ++a) proj[a] = data.tangents[a].dot(x);
  Eigen::VectorXd coef = data.inverse_metric * proj;
  Vec out = x;
  for (int a = 0; a < n; ++a) out -= coef[a] * data.tangents[a];
  return out;
}

void check_node(const ImmersionGridND& sub, const std::vector<int>& node) {
  if ((int)node.size() != sub.order()) throw ParamError("node index order mismatch");
  if (!sub.interior(node, 1)) throw ParamError("ND curvature data needs an interior node");
}

}  // namespace

MeanCurvatureND mean_curvature_nd(const ImmersionGridND& sub, const std::vector<int>& node) {
  check_node(sub, node);
  MeanCurvatureND out;
  first_order_data(sub, node, out);
  const int n = sub.order();
  Vec trace = Vec::Zero(sub.ambient_dim);
  for (int a = 0; a < n; ++a) trace += out.inverse_metric(a, a) * second_partial(sub, node, a, a);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      trace += 2.0 * out.inverse_metric(a, b) * second_partial(sub, node, a, b);
  out.H_times_n = normal_part_nd(out, trace);
  return out;
}

FundamentalDataND fundamental_data_nd(const ImmersionGridND& sub, const std::vector<int>& node) {
  check_node(sub, node);
  FundamentalDataND out;
  first_order_data(sub, node, out);
  const int n = sub.order();

  std::vector<Vec> tan_on = gram_schmidt(out.tangents, {});
  if ((int)tan_on.size() != n) throw NumericError("ND tangent space collapsed");
  std::vector<Vec> basis(sub.ambient_dim);
  for (int k = 0; k < sub.ambient_dim; ++k) {
    basis[k] = Vec::Zero(sub.ambient_dim);
    basis[k][k] = 1.0;
  }
  out.normal_frame = gram_schmidt(basis, tan_on);
  if ((int)out.normal_frame.size() != sub.ambient_dim - n)
    throw NumericError("ND normal frame came up short");

  out.alpha.assign(n, std::vector<Vec>(n));
  Vec trace = Vec::Zero(sub.ambient_dim);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Vec ab = normal_part_nd(out, second_partial(sub, node, a, b));
      out.alpha[a][b] = ab;
      out.alpha[b][a] = ab;
      trace += (a == b ? 1.0 : 2.0) * out.inverse_metric(a, b) * ab;
    }
  out.H_times_n = trace;
  return out;
}

}  // namespace sigmin
