#include "sigmin/rotational.hpp"

#include <cmath>
#include <limits>

namespace sigmin {

namespace {

constexpr double kPolarMargin = 0.2;  // keeps sin(theta) bounded away from 0

std::vector<double> angle_spacings(const RotationalSpec& spec) {
  std::vector<double> h(spec.angle_counts.size());
  for (size_t k = 0; k < h.size(); ++k)
    h[k] = (spec.angle_ranges[k].second - spec.angle_ranges[k].first) /
           double(spec.angle_counts[k] - 1);
  return h;
}

}  // namespace

void RotationalSpec::validate() const {
  profile.validate();
  const int last = profile.ambient_dim - 1;
  if (std::abs(profile.e[last] - 1.0) > 1e-12 || profile.e.head(last).norm() > 1e-12)
    throw ParamError("rotational profile must carry e on its last ambient axis");
  if (n < 3) throw ParamError("rotational extension needs n >= 3");
  const size_t k = size_t(n - 2);
  if (angle_counts.size() != k || angle_ranges.size() != k)
    throw ParamError("rotational spec needs n-2 angle counts and ranges");
  for (size_t m = 0; m < k; ++m) {
    if (angle_counts[m] < 5) throw ParamError("rotational: need >= 5 nodes per angle axis");
    const auto [lo, hi] = angle_ranges[m];
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw ParamError("rotational: bad angle range");
    // All but the final (azimuthal) angle are polar and must avoid the
    // coordinate poles where the sphere chart degenerates.
    if (m + 1 < k && (lo < kPolarMargin || hi > M_PI - kPolarMargin))
      throw ParamError("rotational: polar angle range too close to the poles");
  }
}

Vec sphere_point(const std::vector<double>& angles) {
  const size_t k = angles.size();
  if (k == 0) throw ParamError("sphere_point needs at least one angle");
  Vec j(k + 1);
  double prefix = 1.0;
  for (size_t m = 0; m < k; ++m) {
    j[m] = prefix * std::cos(angles[m]);
    prefix *= std::sin(angles[m]);
  }
  j[k] = prefix;
  return j;
}

Vec rotate_vector(const Vec& xi, const Vec& j) {
  const long q = xi.size() - 1;
  Vec out(q + j.size());
  out.head(q) = xi.head(q);
  out.tail(j.size()) = xi[q] * j;
  return out;
}

ImmersionGridND build_rotational(const RotationalSpec& spec) {
  spec.validate();
  const GridChart2D& chart = spec.profile.chart;
  const int order = spec.n;
  const std::vector<double> ah = angle_spacings(spec);

  ImmersionGridND sub;
  sub.origin = {chart.s0, chart.t0};
  sub.spacing = {chart.hs, chart.ht};
  sub.dims = {chart.ns, chart.nt};
  for (int m = 0; m < spec.n - 2; ++m) {
    sub.origin.push_back(spec.angle_ranges[m].first);
    sub.spacing.push_back(ah[m]);
    sub.dims.push_back(spec.angle_counts[m]);
  }
  sub.ambient_dim = spec.profile.ambient_dim - 1 + (spec.n - 1);

  long count = 1;
  for (int d : sub.dims) count *= d;
  sub.points.resize(count);
  std::vector<int> node(order);
  std::vector<double> angles(order - 2);
  for (long flat = 0; flat < count; ++flat) {
    long rem = flat;
    for (int kk = order - 1; kk >= 0; --kk) {
      node[kk] = int(rem % sub.dims[kk]);
      rem /= sub.dims[kk];
    }
    for (int m = 0; m < order - 2; ++m) angles[m] = sub.origin[2 + m] + node[2 + m] * ah[m];
    sub.points[flat] = rotate_vector(spec.profile.points.at(node[0], node[1]), sphere_point(angles));
  }
  sub.validate();
  return sub;
}

std::vector<double> node_angles(const RotationalSpec& spec, const std::vector<int>& node) {
  if ((int)node.size() != spec.n) throw ParamError("node_angles: index order mismatch");
  const std::vector<double> ah = angle_spacings(spec);
  std::vector<double> angles(size_t(spec.n - 2));
  for (size_t m = 0; m < angles.size(); ++m)
    angles[m] = spec.angle_ranges[m].first + node[2 + m] * ah[m];
  return angles;
}

Vec structural_mean_curvature(const RotationalSpec& spec, int i, int j,
                              const std::vector<double>& angles) {
  const FundamentalData fd = fundamental_data(spec.profile, i, j);
  const double phi = spec.profile.phi(i, j);
  const Vec profile_part =
      2.0 * fd.H - (double(spec.n - 2) / phi) * normal_part(fd, spec.profile.e);
  return rotate_vector(profile_part, sphere_point(angles));
}

UmbilicReport umbilic_check(const RotationalSpec& spec, const ImmersionGridND& sub,
                            const std::vector<int>& node, double cluster_tol) {
  if (!(cluster_tol > 0.0)) throw ParamError("umbilic_check: cluster_tol must be positive");
  const FundamentalDataND fd = fundamental_data_nd(sub, node);
  const int order = sub.order();

  // Distinguished normal: the normal part of the orbit direction P(e).
  const Vec pe = rotate_vector(spec.profile.e, sphere_point(node_angles(spec, node)));
  Vec eta = Vec::Zero(sub.ambient_dim);
  for (const Vec& nu : fd.normal_frame) eta += pe.dot(nu) * nu;
  if (eta.norm() <= 1e-10)
    throw NumericError("umbilic_check: orbit direction is tangent, no distinguished normal");
  eta.normalize();

  Eigen::MatrixXd W(order, order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) W(a, b) = fd.alpha[a][b].dot(eta);

  UmbilicReport rep;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(W, fd.metric);
  rep.eigenvalues = es.eigenvalues();

  // The angle axes should share one principal value; Rayleigh quotients of
  // the coordinate directions estimate it without any eigenvector matching.
  double sum = 0.0;
  for (int a = 2; a < order; ++a) sum += W(a, a) / fd.metric(a, a);
  rep.mu_axis = sum / double(order - 2);
  for (int a = 2; a < order; ++a)
    rep.mu_spread = std::max(rep.mu_spread, std::abs(W(a, a) / fd.metric(a, a) - rep.mu_axis));

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo, gap = lo;
  for (int a = 0; a < order; ++a) {
    const double ev = rep.eigenvalues[a];
    if (std::abs(ev - rep.mu_axis) <= cluster_tol) {
      ++rep.multiplicity;
      lo = std::min(lo, ev);
      hi = std::max(hi, ev);
    } else {
      gap = std::min(gap, std::abs(ev - rep.mu_axis));
    }
  }
  rep.cluster_width = rep.multiplicity > 0 ? hi - lo : 0.0;
  rep.gap = gap;  // +inf when every eigenvalue joined the cluster
  rep.generic = rep.multiplicity == order - 2;
  rep.conclusive = gap > 4.0 * std::max({cluster_tol, rep.cluster_width, rep.mu_spread});
  return rep;
}

}  // namespace sigmin
