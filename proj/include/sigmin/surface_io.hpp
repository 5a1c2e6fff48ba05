#pragma once

// File formats for the command-line pipelines: surface JSON, representation
// data JSON, residual-report JSON, generating-curve CSV, and OBJ meshes.
// Everything numeric is serialized at 17 significant digits so files round
// the trip bit-exactly; reading goes through a schema-checking JSON parser.

#include "sigmin/catenary.hpp"
#include "sigmin/weierstrass.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sigmin {

// {"chart":{"s0","t0","hs","ht","ns","nt"}, "ambient_dim", "a", "e":[...],
//  "points":[[... ambient_dim floats ...] ...]} with points row-major in
// (i, j).  A surface with sealed margins is written as its valid region, so
// files always hold a full rectangle of finite points.
void write_surface_json(const std::string& path, const ImmersionGrid& surf);
ImmersionGrid read_surface_json(const std::string& path);

// Full representation payload: chart, n, p, both frames, scalar fields, and
// the complex grids (each with its stencil margin; nodes outside the valid
// region are null).  Complex numbers are [re, im] pairs.
void write_weierstrass_json(const std::string& path, const WeierstrassData& data);
WeierstrassData read_weierstrass_json(const std::string& path);

// Report written by every command: the residual checks it ran plus named
// scalar values and free-form notes.  The overall "pass" is the conjunction
// of the per-check verdicts; order estimates appear only on checks that were
// run at two resolutions.
struct CommandReport {
  std::string command;
  std::vector<ResidualReport> checks;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::string>> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};
void write_report_json(const std::string& path, const CommandReport& report);

// Variation fields and other per-node vector data:
// {"chart":{...}, "ambient_dim", "values":[[...]]} row-major, finite floats.
VectorGrid read_vector_field_json(const std::string& path);

// Generating-curve samples with the fixed header "s,x,z,k,u,v".
void write_curve_csv(const std::string& path, const FrenetCurve& curve);

// Triangle mesh of rectangular patches of 3-vectors (quads split along the
// diagonal); only ambient dimension 3 is meshable.  The multi-patch form
// writes disjoint meshes into one file.
void write_obj(const std::string& path, const VectorGrid& points);
void write_obj(const std::string& path, const std::vector<VectorGrid>& patches);

}  // namespace sigmin
