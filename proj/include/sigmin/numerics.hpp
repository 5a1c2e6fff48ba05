#pragma once

// Finite differences, Wirtinger derivatives, RK4, grid path integrals,
// Gram-Schmidt and bisection.  All stencils are second-order centered ones;
// one-sided differences are deliberately not offered, boundary layers are
// dropped instead (see Grid::margin).

#include "sigmin/grid.hpp"

#include <functional>
#include <utility>

namespace sigmin {

enum class Axis { S = 0, T = 1 };

// (f(x+h) - f(x-h)) / 2h along the chosen chart axis; margin grows by one.
template <class T>
Grid<T> central_diff(const Grid<T>& f, Axis axis) {
  Grid<T> out(f.chart, f.margin + 1);
  const int di = axis == Axis::S ? 1 : 0;
  const int dj = axis == Axis::S ? 0 : 1;
  const double h = axis == Axis::S ? f.chart.hs : f.chart.ht;
  for (int i = 0; i < f.chart.ns; ++i)
    for (int j = 0; j < f.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = (f.at(i + di, j + dj) - f.at(i - di, j - dj)) / (2.0 * h);
  out.seal();
  return out;
}

// (f(x+h) - 2f(x) + f(x-h)) / h^2 along one axis.
template <class T>
Grid<T> second_diff(const Grid<T>& f, Axis axis) {
  Grid<T> out(f.chart, f.margin + 1);
  const int di = axis == Axis::S ? 1 : 0;
  const int dj = axis == Axis::S ? 0 : 1;
  const double h = axis == Axis::S ? f.chart.hs : f.chart.ht;
  for (int i = 0; i < f.chart.ns; ++i)
    for (int j = 0; j < f.chart.nt; ++j)
      if (out.valid(i, j))
        out.at(i, j) = (f.at(i + di, j + dj) - 2.0 * f.at(i, j) + f.at(i - di, j - dj)) / (h * h);
  out.seal();
  return out;
}

// Mixed partial d^2 f / ds dt with the four-corner stencil.
template <class T>
Grid<T> cross_diff(const Grid<T>& f) {
  Grid<T> out(f.chart, f.margin + 1);
  const double d = 4.0 * f.chart.hs * f.chart.ht;
  for (int i = 0; i < f.chart.ns; ++i)
    for (int j = 0; j < f.chart.nt; ++j)
      if (out.valid(i, j))
        out.at(i, j) =
            (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) - f.at(i - 1, j + 1) + f.at(i - 1, j - 1)) / d;
  out.seal();
  return out;
}

inline CScalarGrid to_complex(const ScalarGrid& f) {
  CScalarGrid out(f.chart, f.margin);
  for (size_t k = 0; k < f.values.size(); ++k) out.values[k] = cplx(f.values[k], 0.0);
  return out;
}

// Wirtinger derivatives for z = s + i t:
//   d/dz    = (d/ds - i d/dt) / 2
//   d/dzbar = (d/ds + i d/dt) / 2
template <class T>
Grid<T> wirtinger_z(const Grid<T>& f) {
  Grid<T> ds = central_diff(f, Axis::S);
  Grid<T> dt = central_diff(f, Axis::T);
  Grid<T> out(f.chart, f.margin + 1);
  const cplx ih(0.0, 0.5);
  for (int i = 0; i < f.chart.ns; ++i)
    for (int j = 0; j < f.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = 0.5 * ds.at(i, j) - ih * dt.at(i, j);
  out.seal();
  return out;
}

template <class T>
Grid<T> wirtinger_zbar(const Grid<T>& f) {
  Grid<T> ds = central_diff(f, Axis::S);
  Grid<T> dt = central_diff(f, Axis::T);
  Grid<T> out(f.chart, f.margin + 1);
  const cplx ih(0.0, 0.5);
  for (int i = 0; i < f.chart.ns; ++i)
    for (int j = 0; j < f.chart.nt; ++j)
      if (out.valid(i, j)) out.at(i, j) = 0.5 * ds.at(i, j) + ih * dt.at(i, j);
  out.seal();
  return out;
}

inline CScalarGrid wirtinger_z(const ScalarGrid& f) { return wirtinger_z(to_complex(f)); }
inline CScalarGrid wirtinger_zbar(const ScalarGrid& f) { return wirtinger_zbar(to_complex(f)); }

// ---------------------------------------------------------------------------
// Runge-Kutta 4

using OdeFn = std::function<Vec(double, const Vec&)>;

Vec rk4_step(const OdeFn& f, double s, const Vec& y, double h);

struct OdeTrajectory {
  std::vector<double> s;
  std::vector<Vec> y;
};

// Fixed-step integration from s0 to s1 (s1 may be below s0; the step sign is
// adopted automatically).  Optional stop predicate ends integration early,
// keeping the last accepted state.  Non-finite states abort.
OdeTrajectory rk4_solve(const OdeFn& f, double s0, const Vec& y0, double s1, double step,
                        const std::function<bool(double, const Vec&)>& stop = nullptr);

// ---------------------------------------------------------------------------
// Path integrals of 1-forms  f dz + g dzbar  along axis-aligned node paths.

using GridPath = std::vector<std::pair<int, int>>;

// L-shaped staircase between two nodes; runs the s-leg first when s_first.
GridPath staircase_path(int i0, int j0, int i1, int j1, bool s_first = true);

// Composite trapezoid rule along consecutive path nodes (each pair must be
// one step along a single axis).  dz is hs on s-legs and i*ht on t-legs.
cplx path_integral(const CScalarGrid& form_z, const CScalarGrid& form_zbar, const GridPath& path);

// Antiderivative on the whole valid region: value at each node is the path
// integral from `base` along a row-then-column staircase.
CScalarGrid cumulative_integral(const CScalarGrid& form_z, const CScalarGrid& form_zbar,
                                int base_i, int base_j);

// ---------------------------------------------------------------------------
// Linear algebra / scalar root helpers

// Orthonormalize `vectors` against the (already orthonormal) `against` set
// and against each other, in order; candidates whose residual falls below
// tol * max(1, |v|) are dropped.  Deterministic rank detection.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, const std::vector<Vec>& against,
                              double tol = 1e-10);

// Bisection for a sign change of f on [lo, hi]; interval width tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

}  // namespace sigmin
