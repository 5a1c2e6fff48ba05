#include "sigmin/weierstrass.hpp"

#include <cmath>

namespace sigmin {

namespace {

// ||F(G)||^2 below this is treated as the degenerate branch of the
// representation (e.g. a vertical plane, where F vanishes identically) and
// refused rather than divided by.
constexpr double kFSquaredFloor = 1e-14;

const cplx kI(0.0, 1.0);

int quotient_dim(const ComplexGrid& G) {
  for (int i = 0; i < G.chart.ns; ++i)
    for (int j = 0; j < G.chart.nt; ++j)
      if (G.valid(i, j)) return static_cast<int>(G.at(i, j).size());
  throw NumericError("quotient map grid has no valid nodes");
}

void require_codim(int n, const char* who) {
  if (n < 3) throw ParamError(std::string(who) + " needs n >= 3 (a = n - 2 >= 1)");
}

CScalarGrid conj_grid(const CScalarGrid& f) {
  CScalarGrid out(f.chart, f.margin);
  for (int i = 0; i < f.chart.ns; ++i)
    for (int j = 0; j < f.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = std::conj(f.at(i, j));
  out.seal();
  return out;
}

// Lambda = <conj(G_zbar), F(G)> / ||F||^2, the dz-component of the 1-form
// whose potential drives the height and the conformal weight.
CScalarGrid lambda_form(const ComplexGrid& G, int n) {
  require_codim(n, "lambda form");
  ComplexGrid Gzb = wirtinger_zbar(G);
  ComplexGrid F = f_field(G);
  CScalarGrid out(G.chart, Gzb.margin);
  for (int i = 0; i < out.chart.ns; ++i)
    for (int j = 0; j < out.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const CVec& f = F.at(i, j);
      const double ff = f.squaredNorm();
      if (ff < kFSquaredFloor)
        throw NumericError("representation is degenerate: F(G) vanishes on the chart");
      // Eigen's dot conjugates the first factor: sum conj(G_zbar,k) F_k.
      out.at(i, j) = Gzb.at(i, j).dot(f) / ff;
    }
  out.seal();
  return out;
}

// Mirror of cumulative_integral with the staircase orientation flipped
// (base column first, then every row off it).  Used only to measure how much
// the discrete form fails to be closed.
CScalarGrid cumulative_integral_t_first(const CScalarGrid& form_z, const CScalarGrid& form_zbar,
                                        int base_i, int base_j) {
  const auto& chart = form_z.chart;
  const int m = std::max(form_z.margin, form_zbar.margin);
  CScalarGrid out(chart, m);
  if (!out.valid(base_i, base_j))
    throw ParamError("cumulative integral: base node outside valid region");

  auto segment = [&](int i0, int j0, int i1, int j1) {
    const int di = i1 - i0, dj = j1 - j0;
    const cplx dz = di != 0 ? cplx(di * chart.hs, 0.0) : cplx(0.0, dj * chart.ht);
    const cplx fz = 0.5 * (form_z.at(i0, j0) + form_z.at(i1, j1));
    const cplx fzb = 0.5 * (form_zbar.at(i0, j0) + form_zbar.at(i1, j1));
    return fz * dz + fzb * std::conj(dz);
  };

  out.at(base_i, base_j) = cplx(0.0, 0.0);
  for (int j = base_j + 1; j <= chart.nt - 1 - m; ++j)
    out.at(base_i, j) = out.at(base_i, j - 1) + segment(base_i, j - 1, base_i, j);
  for (int j = base_j - 1; j >= m; --j)
    out.at(base_i, j) = out.at(base_i, j + 1) + segment(base_i, j + 1, base_i, j);
  for (int j = m; j <= chart.nt - 1 - m; ++j) {
    for (int i = base_i + 1; i <= chart.ns - 1 - m; ++i)
      out.at(i, j) = out.at(i - 1, j) + segment(i - 1, j, i, j);
    for (int i = base_i - 1; i >= m; --i)
      out.at(i, j) = out.at(i + 1, j) + segment(i + 1, j, i, j);
  }
  out.seal();
  return out;
}

void check_data(const WeierstrassData& d) {
  if (d.n < 2) throw ParamError("representation data needs n >= 2");
  if (d.p < 1) throw ParamError("representation data needs codimension p >= 1");
  if (!d.phi.chart.same_nodes(d.Psi.chart) || !d.phi.chart.same_nodes(d.G.chart) ||
      !d.phi.chart.same_nodes(d.omega.chart))
    throw ParamError("representation data grids live on different charts");
}

}  // namespace

// ---------------------------------------------------------------------------
// Warped half-space model.

double warp_exponent(double w, int n) {
  if (n < 2) throw ParamError("warp exponent needs n >= 2");
  if (n == 2) return 0.0;
  if (!(w > 0.0)) throw ParamError("warp exponent needs positive height");
  return (2.0 * (n - 2) / n) * std::log(0.5 * n * w);
}

double warp_exponent_slope(double w, int n) {
  if (n < 2) throw ParamError("warp exponent needs n >= 2");
  if (n == 2) return 0.0;
  if (!(w > 0.0)) throw ParamError("warp exponent needs positive height");
  return 2.0 * (n - 2) / (n * w);
}

Vec to_warped_model(const Vec& x, int n) {
  if (n < 2) throw ParamError("warped model needs n >= 2");
  if (x.size() < 1) throw ParamError("warped model needs at least one coordinate");
  const double last = x[x.size() - 1];
  if (n > 2 && !(last > 0.0)) throw ParamError("warped model needs positive last coordinate");
  Vec out = x;
  out[x.size() - 1] = (2.0 / n) * std::pow(last, 0.5 * n);
  return out;
}

Vec from_warped_model(const Vec& xw, int n) {
  if (n < 2) throw ParamError("warped model needs n >= 2");
  if (xw.size() < 1) throw ParamError("warped model needs at least one coordinate");
  const double last = xw[xw.size() - 1];
  if (n > 2 && !(last > 0.0)) throw ParamError("warped model needs positive last coordinate");
  Vec out = xw;
  out[xw.size() - 1] = std::pow(0.5 * n * last, 2.0 / n);
  return out;
}

double warped_pullback(const Vec& x, const Vec& u, const Vec& v, int n) {
  if (x.size() != u.size() || x.size() != v.size())
    throw ParamError("warped pullback needs equally sized vectors");
  const int last = static_cast<int>(x.size()) - 1;
  const double xl = x[last];
  const double w = (2.0 / n) * std::pow(xl, 0.5 * n);
  const double jac_last = std::pow(xl, 0.5 * n - 1.0);
  double head = 0.0;
  for (int k = 0; k < last; ++k) head += u[k] * v[k];
  return std::exp(warp_exponent(w, n)) * head + jac_last * jac_last * u[last] * v[last];
}

// ---------------------------------------------------------------------------
// F-field.

CVec f_value(const CVec& z) {
  const int p = static_cast<int>(z.size());
  if (p < 1) throw ParamError("F needs at least one component");
  cplx zz(0.0, 0.0);
  for (int k = 0; k < p; ++k) zz += z[k] * z[k];
  const double nsq = z.squaredNorm();
  const cplx zp = z[p - 1];
  CVec out = CVec::Zero(p);
  out[p - 1] = cplx(0.5 * (1.0 + std::norm(zz)) + nsq, 0.0);
  out -= zp * (std::conj(zz) * z + z.conjugate());
  return out;
}

ComplexGrid f_field(const ComplexGrid& G) {
  ComplexGrid out(G.chart, G.margin);
  for (int i = 0; i < G.chart.ns; ++i)
    for (int j = 0; j < G.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = f_value(G.at(i, j));
  out.seal();
  return out;
}

// ---------------------------------------------------------------------------
// Extraction.

std::vector<Eigen::MatrixXd> default_plane_gauges(int dim) {
  if (dim < 2) throw ParamError("plane gauge needs dimension >= 2");
  std::vector<Eigen::MatrixXd> out;
  out.push_back(Eigen::MatrixXd::Identity(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Identity(dim, dim);
      T(i, i) = T(j, j) = 0.0;
      T(i, j) = T(j, i) = 1.0;
      out.push_back(T);
    }
  return out;
}

WeierstrassData extract_representation(const ImmersionGrid& surf, const ExtractOptions& opt) {
  surf.validate();
  const int dim = surf.ambient_dim;
  const int p = dim - 2;
  const long a_int = std::llround(surf.a);
  if (std::abs(surf.a - static_cast<double>(a_int)) > 1e-9 || a_int < 1)
    throw ParamError("representation needs an integer exponent a = n - 2 >= 1");
  const int n = static_cast<int>(a_int) + 2;

  WeierstrassData data;
  data.chart = surf.chart;
  data.n = n;
  data.p = p;

  // Rotate the ambient so the density direction is the last coordinate axis.
  // A Householder reflection is enough: isothermality and phi = <g,e> are
  // insensitive to the ambient orientation.
  const Vec axis = Vec::Unit(dim, dim - 1);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(dim, dim);
  {
    Vec diff = surf.e - axis;
    if (diff.norm() > 1e-14) {
      diff.normalize();
      Q -= 2.0 * diff * diff.transpose();
    }
  }
  data.ambient_rotation = Q;

  const int mp = surf.points.margin;
  ScalarGrid phi = surf.phi_grid();

  data.omega = ScalarGrid(surf.chart, mp);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      if (data.omega.valid(i, j))
        data.omega.at(i, j) = (2.0 / n) * std::pow(phi.at(i, j), 0.5 * n);
  data.omega.seal();

  // First fundamental form of the chart (Euclidean; the warped form is a
  // pointwise conformal multiple, so the isothermality test is shared).
  VectorGrid gs = central_diff(surf.points, Axis::S);
  VectorGrid gt = central_diff(surf.points, Axis::T);
  data.lambda_sq = ScalarGrid(surf.chart, mp + 1);
  double iso_defect = 0.0;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!data.lambda_sq.valid(i, j)) continue;
      const double E = gs.at(i, j).squaredNorm();
      const double Gm = gt.at(i, j).squaredNorm();
      const double F = gs.at(i, j).dot(gt.at(i, j));
      const double defect = std::hypot(E - Gm, 2.0 * F) / (E + Gm);
      iso_defect = std::max(iso_defect, defect);
      data.lambda_sq.at(i, j) = std::pow(phi.at(i, j), surf.a) * 0.5 * (E + Gm);
    }
  data.lambda_sq.seal();
  data.iso_defect = iso_defect;
  if (iso_defect > opt.iso_tol)
    throw ParamError("chart is not isothermal: relative defect " + std::to_string(iso_defect));

  // Lifted first-order fields phi_i = e^{eta/2} y_{i,z}, phi_{p+2} = omega_z,
  // with e^{eta/2} = phi^{(n-2)/2}.
  ComplexGrid fields(surf.chart, mp + 1);
  {
    std::vector<CScalarGrid> head(p + 1);
    for (int k = 0; k <= p; ++k) {
      ScalarGrid yk(surf.chart, mp);
      for (int i = 0; i < surf.chart.ns; ++i)
        for (int j = 0; j < surf.chart.nt; ++j)
          if (yk.valid(i, j)) yk.at(i, j) = Q.row(k).dot(surf.points.at(i, j));
      yk.seal();
      head[k] = wirtinger_z(yk);
    }
    CScalarGrid wz = wirtinger_z(data.omega);
    for (int i = 0; i < surf.chart.ns; ++i)
      for (int j = 0; j < surf.chart.nt; ++j) {
        if (!fields.valid(i, j)) continue;
        const double scale = std::pow(phi.at(i, j), 0.5 * (n - 2));
        CVec f(p + 2);
        for (int k = 0; k <= p; ++k) f[k] = scale * head[k].at(i, j);
        f[p + 1] = wz.at(i, j);
        fields.at(i, j) = f;
      }
    fields.seal();
  }

  // Reference scale for the floors: sup of the total field magnitude
  // (gauge-invariant, comparable to lambda / sqrt(2)).
  double ref = 0.0;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      if (fields.valid(i, j)) ref = std::max(ref, fields.at(i, j).norm());
  if (!(ref > 0.0)) throw NumericError("lifted fields vanish identically");

  // Walk the plane gauges and keep the candidate whose worst-case |Psi| is
  // largest; a first-fit search could settle for a gauge that merely clears
  // the floor while grazing a zero, which would blow up the quotient map.
  // Candidates act on the first p+1 fields only; ties keep the earlier entry
  // so the identity wins whenever it is as good as any swap.
  const std::vector<Eigen::MatrixXd> candidates =
      opt.transforms ? *opt.transforms : default_plane_gauges(p + 1);
  if (candidates.empty()) throw ParamError("plane gauge candidate list is empty");
  double best = -1.0;
  size_t best_idx = 0;
  for (size_t c = 0; c < candidates.size(); ++c) {
    const Eigen::MatrixXd& T = candidates[c];
    if (T.rows() != p + 1 || T.cols() != p + 1)
      throw ParamError("plane gauge candidate has the wrong size");
    const Eigen::MatrixXcd Tc = T.cast<cplx>();
    double min_psi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < surf.chart.ns; ++i)
      for (int j = 0; j < surf.chart.nt; ++j) {
        if (!fields.valid(i, j)) continue;
        const CVec head = Tc * fields.at(i, j).head(p + 1);
        min_psi = std::min(min_psi, std::abs(head[0] - kI * head[1]));
      }
    if (min_psi > best) {
      best = min_psi;
      best_idx = c;
    }
  }
  if (best <= opt.field_floor * ref)
    throw NumericError("every plane gauge candidate leaves Psi with a zero on the chart");
  data.plane_gauge = candidates[best_idx];
  if (!data.plane_gauge.isIdentity(0.0)) {
    const Eigen::MatrixXcd Tc = data.plane_gauge.cast<cplx>();
    for (int i = 0; i < surf.chart.ns; ++i)
      for (int j = 0; j < surf.chart.nt; ++j)
        if (fields.valid(i, j))
          fields.at(i, j).head(p + 1) = (Tc * fields.at(i, j).head(p + 1)).eval();
  }

  // Enforce the quadric sum phi_i^2 = 0 exactly: with S = -sum_{i>2} phi_i^2
  // / Psi, replace (phi_1, phi_2) by ((Psi+S)/2, i(Psi-S)/2).  Psi itself is
  // untouched and the adjustment is O(h^2) for genuinely isothermal data.
  data.Psi = CScalarGrid(surf.chart, mp + 1);
  data.G = ComplexGrid(surf.chart, mp + 1);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j) {
      if (!fields.valid(i, j)) continue;
      CVec& f = fields.at(i, j);
      const cplx psi = f[0] - kI * f[1];
      cplx tail(0.0, 0.0);
      for (int k = 2; k < p + 2; ++k) tail += f[k] * f[k];
      const cplx S = -tail / psi;
      f[0] = 0.5 * (psi + S);
      f[1] = 0.5 * kI * (psi - S);
      data.Psi.at(i, j) = psi;
      CVec g(p);
      for (int k = 0; k < p; ++k) g[k] = f[k + 2] / psi;
      data.G.at(i, j) = g;
    }
  data.Psi.seal();
  data.G.seal();
  data.phi = fields;

  // Substantiality: a constant height makes G_p identically zero and the
  // whole quotient construction collapses.
  double sup_gp = 0.0, sup_g = 0.0;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      if (data.G.valid(i, j)) {
        sup_gp = std::max(sup_gp, std::abs(data.G.at(i, j)[p - 1]));
        sup_g = std::max(sup_g, data.G.at(i, j).norm());
      }
  if (sup_gp <= opt.field_floor * std::max(1.0, sup_g))
    throw NumericError("lift is not substantial: the height component of G vanishes");

  double idd = 0.0;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      if (data.phi.valid(i, j)) {
        const double half = 0.5 * data.lambda_sq.at(i, j);
        idd = std::max(idd, std::abs(data.phi.at(i, j).squaredNorm() - half) / half);
      }
  data.identity_defect = idd;
  return data;
}

Vec representation_coordinates(const WeierstrassData& data, const Vec& point) {
  if (point.size() != data.ambient_rotation.rows())
    throw ParamError("point dimension does not match the representation frame");
  Vec q = data.ambient_rotation * point;
  q.head(data.p + 1) = (data.plane_gauge * q.head(data.p + 1)).eval();
  return q;
}

// ---------------------------------------------------------------------------
// Residual families.

ResidualReport field_system_residual(const WeierstrassData& data, std::optional<Window> window) {
  check_data(data);
  const int p = data.p;
  ComplexGrid dphi = wirtinger_zbar(data.phi);
  ComplexGrid out(data.chart, dphi.margin);
  for (int i = 0; i < data.chart.ns; ++i)
    for (int j = 0; j < data.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const double ep = warp_exponent_slope(data.omega.at(i, j), data.n);
      const CVec& f = data.phi.at(i, j);
      const CVec& df = dphi.at(i, j);
      CVec r(p + 2);
      for (int k = 0; k <= p; ++k) r[k] = 2.0 * df[k] + ep * std::conj(f[k]) * f[p + 1];
      r[p + 1] = 2.0 * df[p + 1] - ep * f.head(p + 1).squaredNorm();
      out.at(i, j) = r;
    }
  out.seal();
  return residual_norms("field system", out, window);
}

ResidualReport quotient_system_residual(const WeierstrassData& data, std::optional<Window> window) {
  check_data(data);
  const int p = data.p;
  CScalarGrid dPsi = wirtinger_zbar(data.Psi);
  ComplexGrid dG = wirtinger_zbar(data.G);
  CScalarGrid wz = wirtinger_z(data.omega);
  ComplexGrid F = f_field(data.G);
  ComplexGrid out(data.chart, dG.margin);
  for (int i = 0; i < data.chart.ns; ++i)
    for (int j = 0; j < data.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const double ep = warp_exponent_slope(data.omega.at(i, j), data.n);
      const cplx psi = data.Psi.at(i, j);
      const CVec& g = data.G.at(i, j);
      cplx gg(0.0, 0.0);
      for (int k = 0; k < p; ++k) gg += g[k] * g[k];
      CVec r(p + 2);
      r[0] = dPsi.at(i, j) - 0.5 * ep * std::norm(psi) * std::conj(gg) * g[p - 1];
      for (int k = 0; k < p; ++k)
        r[k + 1] = dG.at(i, j)[k] - 0.5 * ep * std::conj(psi) * F.at(i, j)[k];
      r[p + 1] = wz.at(i, j) - psi * g[p - 1];
      out.at(i, j) = r;
    }
  out.seal();
  return residual_norms("quotient system", out, window);
}

ResidualReport gauss_map_residual(const ComplexGrid& G, int n, std::optional<Window> window) {
  require_codim(n, "quotient-map equation");
  const int p = quotient_dim(G);
  ComplexGrid Gzb = wirtinger_zbar(G);
  ComplexGrid Gzbz = wirtinger_z(Gzb);
  ComplexGrid F = f_field(G);
  ComplexGrid Fz = wirtinger_z(F);
  const double ratio = static_cast<double>(n) / (n - 2);
  ComplexGrid out(G.chart, Gzbz.margin);
  for (int i = 0; i < G.chart.ns; ++i)
    for (int j = 0; j < G.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const CVec& g = G.at(i, j);
      const CVec& gzb = Gzb.at(i, j);
      const CVec& f = F.at(i, j);
      const double ff = f.squaredNorm();
      if (ff < kFSquaredFloor)
        throw NumericError("representation is degenerate: F(G) vanishes on the chart");
      const double gzb_sq = gzb.squaredNorm();
      cplx gg(0.0, 0.0);
      cplx pair(0.0, 0.0);  // <G_zbar, conj F>, complex-bilinear
      for (int k = 0; k < p; ++k) {
        gg += g[k] * g[k];
        pair += gzb[k] * std::conj(f[k]);
      }
      const cplx gp = g[p - 1];
      out.at(i, j) = Gzbz.at(i, j) + (ratio * (gzb_sq / ff) * gp) * f -
                     ((gzb_sq / ff) * gg * std::conj(gp)) * f - (pair / ff) * Fz.at(i, j);
    }
  out.seal();
  return residual_norms("quotient-map equation", out, window);
}

ResidualReport alignment_residual(const ComplexGrid& G, std::optional<Window> window) {
  const int p = quotient_dim(G);
  if (p == 1) {
    // A single component is always parallel to F; report the trivial zero so
    // callers can treat every codimension uniformly.
    ResidualReport r;
    r.name = "alignment";
    r.h = G.chart.hmax();
    return r;
  }
  ComplexGrid Gzb = wirtinger_zbar(G);
  ComplexGrid F = f_field(G);
  ComplexGrid out(G.chart, Gzb.margin);
  const int minors = p * (p - 1) / 2;
  for (int i = 0; i < G.chart.ns; ++i)
    for (int j = 0; j < G.chart.nt; ++j) {
      if (!out.valid(i, j)) continue;
      const CVec& d = Gzb.at(i, j);
      const CVec& f = F.at(i, j);
      CVec r(minors);
      int idx = 0;
      for (int k = 0; k < p; ++k)
        for (int l = k + 1; l < p; ++l) r[idx++] = d[k] * f[l] - d[l] * f[k];
      out.at(i, j) = r;
    }
  out.seal();
  return residual_norms("alignment", out, window);
}

ResidualReport height_form_residual(const ComplexGrid& G, int n, std::optional<Window> window) {
  require_codim(n, "height form");
  const int p = quotient_dim(G);
  CScalarGrid lam = lambda_form(G, n);
  CScalarGrid form(G.chart, lam.margin);
  for (int i = 0; i < G.chart.ns; ++i)
    for (int j = 0; j < G.chart.nt; ++j)
      if (form.valid(i, j)) form.at(i, j) = lam.at(i, j) * G.at(i, j)[p - 1];
  form.seal();
  CScalarGrid d = wirtinger_zbar(form);
  ScalarGrid out(G.chart, d.margin);
  for (int i = 0; i < G.chart.ns; ++i)
    for (int j = 0; j < G.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = d.at(i, j).imag();
  out.seal();
  return residual_norms("height form", out, window);
}

// ---------------------------------------------------------------------------
// Converse integration.

RepresentationSurface integrate_gauss_map(const ComplexGrid& G, int n,
                                          const IntegrationGauge& gauge) {
  require_codim(n, "representation integration");
  const int p = quotient_dim(G);
  if (!(gauge.omega_base > 0.0)) throw ParamError("integration needs omega_base > 0");
  Vec y_base = gauge.y_base;
  if (y_base.size() == 0) y_base = Vec::Zero(p + 1);
  if (y_base.size() != p + 1) throw ParamError("y_base needs p + 1 entries");

  const auto& chart = G.chart;
  CScalarGrid lam = lambda_form(G, n);
  const int m = lam.margin;

  RepresentationSurface out;

  // Potential nu of 2 Re(Lambda G_p dz); real by construction since the
  // zbar-component is the conjugate form.
  CScalarGrid height_z(chart, m);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j)
      if (height_z.valid(i, j)) height_z.at(i, j) = lam.at(i, j) * G.at(i, j)[p - 1];
  height_z.seal();
  CScalarGrid height_zb = conj_grid(height_z);
  CScalarGrid nu_c = cumulative_integral(height_z, height_zb, gauge.base_i, gauge.base_j);
  CScalarGrid nu_alt = cumulative_integral_t_first(height_z, height_zb, gauge.base_i, gauge.base_j);

  double imag_leak = 0.0;
  out.nu = ScalarGrid(chart, m);
  ScalarGrid path_gap(chart, m);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j)
      if (out.nu.valid(i, j)) {
        imag_leak = std::max(imag_leak, std::abs(nu_c.at(i, j).imag()));
        out.nu.at(i, j) = nu_c.at(i, j).real();
        path_gap.at(i, j) = std::abs(nu_alt.at(i, j) - nu_c.at(i, j));
      }
  out.nu.seal();
  path_gap.seal();
  out.path_dependence = residual_norms("path dependence", path_gap);

  // Height, quadrature weight and the reconstructed Psi.  The exponent
  // relations make (n-2) h = ((n/2) omega)^{2/n} hold identically; the defect
  // recorded below only picks up floating-point noise.
  const double h0 = std::pow(0.5 * n * gauge.omega_base, 2.0 / n) / (n - 2);
  out.omega = ScalarGrid(chart, m);
  out.h = ScalarGrid(chart, m);
  out.Psi = CScalarGrid(chart, m);
  double h_defect = 0.0;
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j)
      if (out.omega.valid(i, j)) {
        const double nu_ij = out.nu.at(i, j);
        const double w = gauge.omega_base * std::exp((static_cast<double>(n) / (n - 2)) * nu_ij);
        const double h = h0 * std::exp((2.0 / (n - 2)) * nu_ij);
        out.omega.at(i, j) = w;
        out.h.at(i, j) = h;
        out.Psi.at(i, j) = (static_cast<double>(n) / (n - 2)) * w * lam.at(i, j);
        h_defect = std::max(h_defect, std::abs((n - 2) * h - std::pow(0.5 * n * w, 2.0 / n)));
      }
  out.omega.seal();
  out.h.seal();
  out.Psi.seal();
  out.h_identity_defect = h_defect;

  // Coordinate 1-forms: y_k has dz-component listed below and the conjugate
  // zbar-component, so each potential is a real line integral.
  VectorGrid points(chart, m);
  std::vector<ScalarGrid> coords(p + 1);
  for (int k = 0; k <= p; ++k) {
    CScalarGrid form(chart, m);
    for (int i = 0; i < chart.ns; ++i)
      for (int j = 0; j < chart.nt; ++j) {
        if (!form.valid(i, j)) continue;
        const CVec& g = G.at(i, j);
        cplx gg(0.0, 0.0);
        for (int q = 0; q < p; ++q) gg += g[q] * g[q];
        const cplx base = lam.at(i, j) * out.h.at(i, j);
        if (k == 0)
          form.at(i, j) = base * (1.0 - gg);
        else if (k == 1)
          form.at(i, j) = kI * base * (1.0 + gg);
        else
          form.at(i, j) = 2.0 * base * g[k - 2];
      }
    form.seal();
    CScalarGrid cum = cumulative_integral(form, conj_grid(form), gauge.base_i, gauge.base_j);
    coords[k] = ScalarGrid(chart, m);
    for (int i = 0; i < chart.ns; ++i)
      for (int j = 0; j < chart.nt; ++j)
        if (coords[k].valid(i, j)) {
          imag_leak = std::max(imag_leak, std::abs(cum.at(i, j).imag()));
          coords[k].at(i, j) = cum.at(i, j).real() + y_base[k];
        }
    coords[k].seal();
  }
  out.imag_leak = imag_leak;

  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j)
      if (points.valid(i, j)) {
        Vec pt(p + 2);
        for (int k = 0; k <= p; ++k) pt[k] = coords[k].at(i, j);
        pt[p + 1] = (n - 2) * out.h.at(i, j);
        points.at(i, j) = pt;
      }
  points.seal();

  out.surface.chart = chart;
  out.surface.ambient_dim = p + 2;
  out.surface.points = points;
  out.surface.e = Vec::Unit(p + 2, p + 1);
  out.surface.a = static_cast<double>(n - 2);
  out.surface.validate();
  return out;
}

}  // namespace sigmin
