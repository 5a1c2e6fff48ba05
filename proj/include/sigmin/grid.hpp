#pragma once

// Uniform 2D parameter charts and sampled fields over them.
//
// Conventions used throughout:
//   - node (i,j) sits at (s0 + i*hs, t0 + j*ht); storage is row-major with
//     the t-index fastest: values[i*nt + j]
//   - the complex chart coordinate is z = s + i t
//   - `margin` counts boundary layers that hold no meaningful data.  Every
//     centered difference shaves one layer, so derived grids carry
//     margin+1.  Invalid entries are poisoned with NaN so accidental reads
//     show up in norms immediately.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigmin {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridChart2D {
  double s0 = 0.0, t0 = 0.0;
  double hs = 0.0, ht = 0.0;
  int ns = 0, nt = 0;

  double s(int i) const { return s0 + i * hs; }
  double t(int j) const { return t0 + j * ht; }
  cplx z(int i, int j) const { return {s(i), t(j)}; }
  int count() const { return ns * nt; }
  int index(int i, int j) const { return i * nt + j; }
  double hmax() const { return std::max(hs, ht); }

  void validate() const {
    if (ns < 5 || nt < 5)
      throw ParamError("chart needs at least 5 nodes per axis");
    if (!(hs > 0.0) || !(ht > 0.0)) throw ParamError("chart spacing must be positive");
  }

  bool same_nodes(const GridChart2D& o, double tol = 1e-12) const {
    return ns == o.ns && nt == o.nt && std::abs(s0 - o.s0) <= tol &&
           std::abs(t0 - o.t0) <= tol && std::abs(hs - o.hs) <= tol &&
           std::abs(ht - o.ht) <= tol;
  }
};

namespace detail {
inline double nan_like(double) { return std::numeric_limits<double>::quiet_NaN(); }
inline cplx nan_like(cplx) {
  const double q = std::numeric_limits<double>::quiet_NaN();
  return {q, q};
}
inline Vec nan_like(const Vec& sample) {
  return Vec::Constant(sample.size(), std::numeric_limits<double>::quiet_NaN());
}
inline CVec nan_like(const CVec& sample) {
  const double q = std::numeric_limits<double>::quiet_NaN();
  return CVec::Constant(sample.size(), cplx{q, q});
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(cplx v) { return std::abs(v); }
inline double magnitude(const Vec& v) { return v.norm(); }
inline double magnitude(const CVec& v) { return v.norm(); }
}  // namespace detail

template <class T>
struct Grid {
  GridChart2D chart;
  int margin = 0;
  std::vector<T> values;

  Grid() = default;
  Grid(const GridChart2D& c, int m = 0) : chart(c), margin(m), values(c.count()) {}

  T& at(int i, int j) { return values[chart.index(i, j)]; }
  const T& at(int i, int j) const { return values[chart.index(i, j)]; }

  bool valid(int i, int j) const {
    const int d = std::min(std::min(i, chart.ns - 1 - i), std::min(j, chart.nt - 1 - j));
    return d >= margin;
  }

  // Poison everything outside the valid region (call after filling).
  void seal() {
    const T* sample = nullptr;
    for (int i = 0; i < chart.ns && !sample; ++i)
      for (int j = 0; j < chart.nt; ++j)
        if (valid(i, j)) {
          sample = &at(i, j);
          break;
        }
    if (!sample) throw NumericError("grid has no valid nodes to seal");
    const T poison = detail::nan_like(*sample);
    for (int i = 0; i < chart.ns; ++i)
      for (int j = 0; j < chart.nt; ++j)
        if (!valid(i, j)) at(i, j) = poison;
  }

  // Copy of the valid region as a margin-0 grid on the shrunken chart.
  Grid<T> shrink() const {
    if (margin == 0) return *this;
    GridChart2D c = chart;
    c.s0 = chart.s(margin);
    c.t0 = chart.t(margin);
    c.ns = chart.ns - 2 * margin;
    c.nt = chart.nt - 2 * margin;
    if (c.ns < 1 || c.nt < 1) throw NumericError("grid margin consumed the whole chart");
    Grid<T> out(c, 0);
    for (int i = 0; i < c.ns; ++i)
      for (int j = 0; j < c.nt; ++j) out.at(i, j) = at(i + margin, j + margin);
    return out;
  }
};

using ScalarGrid = Grid<double>;
using VectorGrid = Grid<Vec>;
using CScalarGrid = Grid<cplx>;
using ComplexGrid = Grid<CVec>;

// Optional physical sub-rectangle used to restrict norm evaluation; needed
// when comparing residuals across resolutions so both runs are measured over
// the same piece of the chart.
struct Window {
  double s_lo, s_hi, t_lo, t_hi;
  bool contains(double s, double t) const {
    return s >= s_lo && s <= s_hi && t >= t_lo && t <= t_hi;
  }
};

struct ResidualReport {
  std::string name;
  double l_inf = 0.0;
  double l2 = 0.0;
  double h = 0.0;  // representative grid spacing, max(hs, ht)
  std::optional<double> order_estimate;
  double threshold = 0.0;
  bool pass = true;

  ResidualReport& check(double thr) {
    threshold = thr;
    pass = l_inf <= thr;
    return *this;
  }
};

template <class T>
ResidualReport residual_norms(const std::string& name, const Grid<T>& g,
                              std::optional<Window> window = {}) {
  ResidualReport r;
  r.name = name;
  r.h = g.chart.hmax();
  double sum_sq = 0.0;
  long count = 0;
  for (int i = 0; i < g.chart.ns; ++i)
    for (int j = 0; j < g.chart.nt; ++j) {
      if (!g.valid(i, j)) continue;
      if (window && !window->contains(g.chart.s(i), g.chart.t(j))) continue;
      const double m = detail::magnitude(g.at(i, j));
      if (!std::isfinite(m)) throw NumericError("non-finite value in residual field '" + name + "'");
      r.l_inf = std::max(r.l_inf, m);
      sum_sq += m * m;
      ++count;
    }
  if (count == 0) throw NumericError("residual norm over empty node set: " + name);
  r.l2 = std::sqrt(sum_sq * g.chart.hs * g.chart.ht);
  return r;
}

// log2 ratio of coarse/fine residuals; ~2 for second-order convergence.
inline double order_estimate(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) throw NumericError("order estimate needs positive norms");
  return std::log2(coarse / fine);
}

}  // namespace sigmin
