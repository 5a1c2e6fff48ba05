#include "sigmin/numerics.hpp"

#include <cmath>

namespace sigmin {

Vec rk4_step(const OdeFn& f, double s, const Vec& y, double h) {
  const Vec k1 = f(s, y);
  const Vec k2 = f(s + 0.5 * h, y + 0.5 * h * k1);
  const Vec k3 = f(s + 0.5 * h, y + 0.5 * h * k2);
  const Vec k4 = f(s + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

OdeTrajectory rk4_solve(const OdeFn& f, double s0, const Vec& y0, double s1, double step,
                        const std::function<bool(double, const Vec&)>& stop) {
  if (!(step > 0.0)) throw ParamError("rk4_solve: step must be positive");
  const double span = s1 - s0;
  const double h = span >= 0.0 ? step : -step;
  const long nsteps = std::lround(std::abs(span) / step);
  if (std::abs(nsteps * step - std::abs(span)) > 1e-9 * std::max(1.0, std::abs(span)))
    throw ParamError("rk4_solve: |s1 - s0| must be an integer multiple of step");

  OdeTrajectory traj;
  traj.s.reserve(nsteps + 1);
  traj.y.reserve(nsteps + 1);
  traj.s.push_back(s0);
  traj.y.push_back(y0);
  Vec y = y0;
  for (long k = 0; k < nsteps; ++k) {
    const double s = s0 + k * h;
    y = rk4_step(f, s, y, h);
    if (!y.allFinite()) throw NumericError("rk4_solve: state became non-finite near s=" + std::to_string(s + h));
    if (stop && stop(s + h, y)) break;
    // Track s by index, not accumulation, to avoid drift over long runs.
    traj.s.push_back(s0 + (k + 1) * h);
    traj.y.push_back(y);
  }
  return traj;
}

GridPath staircase_path(int i0, int j0, int i1, int j1, bool s_first) {
  GridPath path;
  path.emplace_back(i0, j0);
  int i = i0, j = j0;
  auto run_s = [&] {
    while (i != i1) {
      i += i1 > i ? 1 : -1;
      path.emplace_back(i, j);
    }
  };
  auto run_t = [&] {
    while (j != j1) {
      j += j1 > j ? 1 : -1;
      path.emplace_back(i, j);
    }
  };
  if (s_first) {
    run_s();
    run_t();
  } else {
    run_t();
    run_s();
  }
  return path;
}

cplx path_integral(const CScalarGrid& form_z, const CScalarGrid& form_zbar, const GridPath& path) {
  if (!form_z.chart.same_nodes(form_zbar.chart)) throw ParamError("path_integral: mismatched charts");
  cplx total(0.0, 0.0);
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    const auto [i0, j0] = path[k];
    const auto [i1, j1] = path[k + 1];
    const int di = i1 - i0, dj = j1 - j0;
    if (std::abs(di) + std::abs(dj) != 1) throw ParamError("path_integral: path must move one node per segment");
    if (!form_z.valid(i0, j0) || !form_z.valid(i1, j1) || !form_zbar.valid(i0, j0) ||
        !form_zbar.valid(i1, j1))
      throw NumericError("path_integral: path leaves the valid region");
    // dz along the segment: hs on s-legs, i*ht on t-legs (sign per direction).
    const cplx dz = di != 0 ? cplx(di * form_z.chart.hs, 0.0) : cplx(0.0, dj * form_z.chart.ht);
    const cplx fz = 0.5 * (form_z.at(i0, j0) + form_z.at(i1, j1));
    const cplx fzb = 0.5 * (form_zbar.at(i0, j0) + form_zbar.at(i1, j1));
    total += fz * dz + fzb * std::conj(dz);
  }
  return total;
}

CScalarGrid cumulative_integral(const CScalarGrid& form_z, const CScalarGrid& form_zbar,
                                int base_i, int base_j) {
  if (!form_z.chart.same_nodes(form_zbar.chart)) throw ParamError("cumulative_integral: mismatched charts");
  const auto& chart = form_z.chart;
  const int m = std::max(form_z.margin, form_zbar.margin);
  CScalarGrid out(chart, m);
  if (!out.valid(base_i, base_j)) throw ParamError("cumulative_integral: base node outside valid region");

  auto segment = [&](int i0, int j0, int i1, int j1) {
    const int di = i1 - i0, dj = j1 - j0;
    const cplx dz = di != 0 ? cplx(di * chart.hs, 0.0) : cplx(0.0, dj * chart.ht);
    const cplx fz = 0.5 * (form_z.at(i0, j0) + form_z.at(i1, j1));
    const cplx fzb = 0.5 * (form_zbar.at(i0, j0) + form_zbar.at(i1, j1));
    return fz * dz + fzb * std::conj(dz);
  };

  // Base row first, then every column off it: one staircase per node.
  out.at(base_i, base_j) = cplx(0.0, 0.0);
  for (int i = base_i + 1; i <= chart.ns - 1 - m; ++i)
    out.at(i, base_j) = out.at(i - 1, base_j) + segment(i - 1, base_j, i, base_j);
  for (int i = base_i - 1; i >= m; --i)
    out.at(i, base_j) = out.at(i + 1, base_j) + segment(i + 1, base_j, i, base_j);
  for (int i = m; i <= chart.ns - 1 - m; ++i) {
    for (int j = base_j + 1; j <= chart.nt - 1 - m; ++j)
      out.at(i, j) = out.at(i, j - 1) + segment(i, j - 1, i, j);
    for (int j = base_j - 1; j >= m; --j)
      out.at(i, j) = out.at(i, j + 1) + segment(i, j + 1, i, j);
  }
  out.seal();
  return out;
}

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, const std::vector<Vec>& against,
                              double tol) {
  std::vector<Vec> basis = against;
  std::vector<Vec> accepted;
  for (const Vec& v : vectors) {
    Vec r = v;
    for (const Vec& b : basis) r -= b.dot(r) * b;
    // Second sweep for numerical orthogonality (classical -> modified refresh).
    for (const Vec& b : basis) r -= b.dot(r) * b;
    const double scale = std::max(1.0, v.norm());
    if (r.norm() < tol * scale) continue;
    r.normalize();
    basis.push_back(r);
    accepted.push_back(r);
  }
  return accepted;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw ParamError("bisect: need lo < hi");
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw ParamError("bisect: no sign change on interval");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sigmin
