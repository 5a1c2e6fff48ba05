#pragma once

// n-parameter immersion grids f : chart^n -> R^(n+p) and their mean
// curvature, used for the rotationally extended submanifolds.  Same centered
// stencils as the 2D machinery; trace convention n*H = trace_g(alpha).

#include "sigmin/grid.hpp"

namespace sigmin {

struct ImmersionGridND {
  std::vector<double> origin;   // n entries
  std::vector<double> spacing;  // n entries, all > 0
  std::vector<int> dims;        // n entries, all >= 5
  int ambient_dim = 0;
  std::vector<Vec> points;  // flattened, last axis fastest

  int order() const { return (int)dims.size(); }

  long flat_index(const std::vector<int>& node) const {
    long idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + node[k];
    return idx;
  }
  Vec& at(const std::vector<int>& node) { return points[flat_index(node)]; }
  const Vec& at(const std::vector<int>& node) const { return points[flat_index(node)]; }

  double coord(int axis, int index) const { return origin[axis] + index * spacing[axis]; }
  bool interior(const std::vector<int>& node, int layers = 1) const {
    for (size_t k = 0; k < dims.size(); ++k)
      if (node[k] < layers || node[k] > dims[k] - 1 - layers) return false;
    return true;
  }
  void validate() const;
};

struct MeanCurvatureND {
  std::vector<Vec> tangents;       // df along each axis
  Eigen::MatrixXd metric;          // n x n
  Eigen::MatrixXd inverse_metric;
  Vec H_times_n;                   // n * H = g^{ij} alpha_ij (normal part)
};

// Metric and mean curvature at an interior node (one layer in on every axis).
MeanCurvatureND mean_curvature_nd(const ImmersionGridND& sub, const std::vector<int>& node);

struct FundamentalDataND : MeanCurvatureND {
  std::vector<Vec> normal_frame;          // p orthonormal normals
  std::vector<std::vector<Vec>> alpha;    // vector second form, alpha[a][b]
};

// Full second fundamental form at an interior node; mean_curvature_nd is its
// weighted trace and shares the stencils.
FundamentalDataND fundamental_data_nd(const ImmersionGridND& sub, const std::vector<int>& node);

}  // namespace sigmin
