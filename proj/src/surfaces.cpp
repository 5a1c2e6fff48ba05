#include "sigmin/surfaces.hpp"

#include <array>
#include <cmath>
#include <random>

namespace sigmin {

namespace {
ImmersionGrid make_grid(const GridChart2D& chart, int ambient_dim, double a,
                        const std::function<Vec(double, double)>& f, const Vec& e) {
  ImmersionGrid surf;
  surf.chart = chart;
  surf.ambient_dim = ambient_dim;
  surf.a = a;
  surf.e = e;
  surf.points = VectorGrid(chart);
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) surf.points.at(i, j) = f(chart.s(i), chart.t(j));
  surf.validate();
  return surf;
}
}  // namespace

ImmersionGrid graph_surface(const GridChart2D& chart, const std::function<double(double, double)>& psi,
                            double a) {
  return make_grid(chart, 3, a,
                   [&](double s, double t) {
                     Vec p(3);
                     p << s, t, psi(s, t);
                     return p;
                   },
                   Vec::Unit(3, 2));
}

ImmersionGrid plane_patch(const GridChart2D& chart, double height, double a) {
  return graph_surface(chart, [height](double, double) { return height; }, a);
}

ImmersionGrid sphere_patch_mercator(const GridChart2D& chart, double R, double center_z, double a) {
  return make_grid(chart, 3, a,
                   [&](double s, double t) {
                     const double sech = 1.0 / std::cosh(t);
                     Vec p(3);
                     p << R * sech * std::cos(s), R * sech * std::sin(s),
                         center_z + R * std::tanh(t);
                     return p;
                   },
                   Vec::Unit(3, 2));
}

ImmersionGrid sphere_patch_polar(const GridChart2D& chart, double R, double a) {
  return make_grid(chart, 3, a,
                   [&](double s, double t) {
                     Vec p(3);
                     p << R * std::cos(s) * std::cos(t), R * std::cos(s) * std::sin(t),
                         R * std::sin(s);
                     return p;
                   },
                   Vec::Unit(3, 2));
}

ImmersionGrid round_cylinder(const GridChart2D& chart, double R, double center_z, double a) {
  return make_grid(chart, 3, a,
                   [&](double s, double t) {
                     Vec p(3);
                     p << R * std::cos(s / R), t, center_z + R * std::sin(s / R);
                     return p;
                   },
                   Vec::Unit(3, 2));
}

ImmersionGrid cone_patch(const GridChart2D& chart, double beta, double a) {
  const double sb = std::sin(beta), cb = std::cos(beta);
  return make_grid(chart, 3, a,
                   [&](double s, double t) {
                     Vec p(3);
                     p << t * sb * std::cos(s), t * sb * std::sin(s), t * cb;
                     return p;
                   },
                   Vec::Unit(3, 2));
}

ImmersionGrid tangent_developable_patch(const GridChart2D& chart, double b, double z0, double a) {
  return make_grid(chart, 3, a,
                   [&](double s, double t) {
                     Vec p(3);
                     p << std::cos(s) - t * std::sin(s), std::sin(s) + t * std::cos(s),
                         z0 + b * s + t * b;
                     return p;
                   },
                   Vec::Unit(3, 2));
}

ImmersionGrid analytic_test_surface(int index, const GridChart2D& chart) {
  if (index < 0 || index > 9) throw ParamError("analytic_test_surface index must be 0..9");
  std::mt19937 rng(12345u + (unsigned)index);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unif(rng); };

  const double base = draw(1.4, 2.2);
  const double a = std::array<double, 4>{0.5, 1.0, 2.0, 3.0}[index % 4];
  const double amp1 = draw(0.05, 0.15), amp2 = draw(0.02, 0.08);
  const double w1 = draw(0.6, 1.4), w2 = draw(0.8, 1.8);
  const double ph1 = draw(0.0, 6.28), ph2 = draw(0.0, 6.28);

  auto psi = [=](double s, double t) {
    return base + amp1 * std::sin(w1 * s + ph1) * std::cos(w2 * t + ph2) +
           amp2 * std::cos(w2 * s - ph2) * std::sin(w1 * t + ph1);
  };

  if (index < 8) return graph_surface(chart, psi, a);

  // Codimension-2 members: graphs (s, t, chi, psi) in R^4 with e = e_4.
  const double amp3 = draw(0.05, 0.12), w3 = draw(0.5, 1.2), ph3 = draw(0.0, 6.28);
  auto chi = [=](double s, double t) { return amp3 * std::sin(w3 * (s + t) + ph3); };
  return make_grid(chart, 4, a,
                   [&](double s, double t) {
                     Vec p(4);
                     p << s, t, chi(s, t), psi(s, t);
                     return p;
                   },
                   Vec::Unit(4, 3));
}

}  // namespace sigmin
