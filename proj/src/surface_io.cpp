#include "sigmin/surface_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sigmin {

namespace {

using nlohmann::json;

// All floats go out at 17 significant digits: enough for the binary value to
// survive a write/read cycle exactly.
std::string fmt(double v) {
  if (!std::isfinite(v)) throw SchemaError("non-finite value cannot be serialized");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

void chart_json(std::ostream& os, const GridChart2D& c) {
  os << "{\"s0\":" << fmt(c.s0) << ",\"t0\":" << fmt(c.t0) << ",\"hs\":" << fmt(c.hs)
     << ",\"ht\":" << fmt(c.ht) << ",\"ns\":" << c.ns << ",\"nt\":" << c.nt << "}";
}

void matrix_json(std::ostream& os, const Eigen::MatrixXd& m) {
  os << "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) os << ",";
    os << "[";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << ",";
      os << fmt(m(r, c));
    }
    os << "]";
  }
  os << "]";
}

void cplx_json(std::ostream& os, cplx v) {
  os << "[" << fmt(v.real()) << "," << fmt(v.imag()) << "]";
}

// Grids are written row-major with null at nodes outside the valid region.
template <class T, class Emit>
void grid_json(std::ostream& os, const Grid<T>& g, Emit emit) {
  os << "{\"margin\":" << g.margin << ",\"values\":[";
  for (int i = 0; i < g.chart.ns; ++i)
    for (int j = 0; j < g.chart.nt; ++j) {
      if (i || j) os << ",";
      if (g.valid(i, j))
        emit(os, g.at(i, j));
      else
        os << "null";
    }
  os << "]}";
}

void commit(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

// --- reading helpers -------------------------------------------------------

json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw SchemaError(std::string("missing or non-numeric field \"") + key + "\"");
  return j[key].get<double>();
}

int need_int(const json& j, const char* key) {
  const double v = need_number(j, key);
  if (v != std::floor(v)) throw SchemaError(std::string("field \"") + key + "\" must be integral");
  return static_cast<int>(v);
}

GridChart2D read_chart(const json& j) {
  if (!j.contains("chart") || !j["chart"].is_object())
    throw SchemaError("missing \"chart\" object");
  const json& c = j["chart"];
  GridChart2D chart;
  chart.s0 = need_number(c, "s0");
  chart.t0 = need_number(c, "t0");
  chart.hs = need_number(c, "hs");
  chart.ht = need_number(c, "ht");
  chart.ns = need_int(c, "ns");
  chart.nt = need_int(c, "nt");
  return chart;
}

const json& need_array(const json& j, const char* key, size_t len) {
  if (!j.contains(key) || !j[key].is_array())
    throw SchemaError(std::string("missing array field \"") + key + "\"");
  if (j[key].size() != len)
    throw SchemaError(std::string("array \"") + key + "\" has length " +
                      std::to_string(j[key].size()) + ", expected " + std::to_string(len));
  return j[key];
}

Vec read_vec(const json& arr, int dim, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    throw SchemaError(std::string(what) + " must be an array of " + std::to_string(dim) +
                      " numbers");
  Vec v(dim);
  for (int k = 0; k < dim; ++k) {
    if (!arr[k].is_number()) throw SchemaError(std::string(what) + " holds a non-number");
    v[k] = arr[k].get<double>();
  }
  if (!v.allFinite()) throw SchemaError(std::string(what) + " holds a non-finite value");
  return v;
}

cplx read_cplx(const json& arr, const char* what) {
  const Vec pair = read_vec(arr, 2, what);
  return {pair[0], pair[1]};
}

Eigen::MatrixXd read_matrix(const json& j, const char* key, int rows, int cols) {
  const json& arr = need_array(j, key, rows);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) m.row(r) = read_vec(arr[r], cols, key).transpose();
  return m;
}

// Reconstruct a grid, requiring null exactly outside the margin.
template <class T, class ReadNode>
Grid<T> read_grid(const json& j, const char* key, const GridChart2D& chart, ReadNode read_node) {
  if (!j.contains(key) || !j[key].is_object())
    throw SchemaError(std::string("missing grid field \"") + key + "\"");
  const json& g = j[key];
  const int margin = need_int(g, "margin");
  if (margin < 0 || 2 * margin >= std::min(chart.ns, chart.nt))
    throw SchemaError(std::string("grid \"") + key + "\" has an unusable margin");
  const json& vals = need_array(g, "values", static_cast<size_t>(chart.count()));
  Grid<T> out(chart, margin);
  for (int i = 0; i < chart.ns; ++i)
    for (int j2 = 0; j2 < chart.nt; ++j2) {
      const json& node = vals[chart.index(i, j2)];
      if (out.valid(i, j2)) {
        if (node.is_null())
          throw SchemaError(std::string("grid \"") + key + "\" is null at a valid node");
        out.at(i, j2) = read_node(node);
      } else if (!node.is_null()) {
        throw SchemaError(std::string("grid \"") + key + "\" has data outside its margin");
      }
    }
  out.seal();
  return out;
}

}  // namespace

void write_surface_json(const std::string& path, const ImmersionGrid& surf) {
  surf.validate();
  const VectorGrid pts = surf.points.shrink();
  std::ostringstream os;
  os << "{\"chart\":";
  chart_json(os, pts.chart);
  os << ",\"ambient_dim\":" << surf.ambient_dim << ",\"a\":" << fmt(surf.a) << ",\"e\":[";
  for (int k = 0; k < surf.e.size(); ++k) os << (k ? "," : "") << fmt(surf.e[k]);
  os << "],\"points\":[";
  for (int i = 0; i < pts.chart.ns; ++i)
    for (int j = 0; j < pts.chart.nt; ++j) {
      if (i || j) os << ",";
      os << "[";
      const Vec& p = pts.at(i, j);
      for (int k = 0; k < p.size(); ++k) os << (k ? "," : "") << fmt(p[k]);
      os << "]";
    }
  os << "]}\n";
  commit(path, os.str());
}

ImmersionGrid read_surface_json(const std::string& path) {
  const json j = parse_file(path);
  ImmersionGrid surf;
  surf.chart = read_chart(j);
  surf.chart.validate();
  surf.ambient_dim = need_int(j, "ambient_dim");
  if (surf.ambient_dim < 3) throw SchemaError("ambient_dim must be at least 3");
  surf.a = need_number(j, "a");
  if (!j.contains("e")) throw SchemaError("missing array field \"e\"");
  surf.e = read_vec(j["e"], surf.ambient_dim, "\"e\"");
  if (std::abs(surf.e.norm() - 1.0) > 1e-9)
    throw SchemaError("density direction \"e\" is not a unit vector");
  const json& pts = need_array(j, "points", static_cast<size_t>(surf.chart.count()));
  surf.points = VectorGrid(surf.chart, 0);
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j2 = 0; j2 < surf.chart.nt; ++j2)
      surf.points.at(i, j2) = read_vec(pts[surf.chart.index(i, j2)], surf.ambient_dim, "point");
  surf.validate();
  return surf;
}

void write_weierstrass_json(const std::string& path, const WeierstrassData& data) {
  std::ostringstream os;
  os << "{\"chart\":";
  chart_json(os, data.chart);
  os << ",\"n\":" << data.n << ",\"p\":" << data.p << ",\"ambient_rotation\":";
  matrix_json(os, data.ambient_rotation);
  os << ",\"plane_gauge\":";
  matrix_json(os, data.plane_gauge);
  os << ",\"iso_defect\":" << fmt(data.iso_defect)
     << ",\"identity_defect\":" << fmt(data.identity_defect);
  auto emit_cvec = [](std::ostream& o, const CVec& v) {
    o << "[";
    for (int k = 0; k < v.size(); ++k) {
      if (k) o << ",";
      cplx_json(o, v[k]);
    }
    o << "]";
  };
  os << ",\"phi\":";
  grid_json(os, data.phi, emit_cvec);
  os << ",\"Psi\":";
  grid_json(os, data.Psi, [](std::ostream& o, cplx v) { cplx_json(o, v); });
  os << ",\"G\":";
  grid_json(os, data.G, emit_cvec);
  os << ",\"omega\":";
  grid_json(os, data.omega, [](std::ostream& o, double v) { o << fmt(v); });
  os << ",\"lambda_sq\":";
  grid_json(os, data.lambda_sq, [](std::ostream& o, double v) { o << fmt(v); });
  os << "}\n";
  commit(path, os.str());
}

WeierstrassData read_weierstrass_json(const std::string& path) {
  const json j = parse_file(path);
  WeierstrassData data;
  data.chart = read_chart(j);
  data.chart.validate();
  data.n = need_int(j, "n");
  data.p = need_int(j, "p");
  if (data.n < 3 || data.p < 1) throw SchemaError("need n >= 3 and p >= 1");
  data.ambient_rotation = read_matrix(j, "ambient_rotation", data.p + 2, data.p + 2);
  data.plane_gauge = read_matrix(j, "plane_gauge", data.p + 1, data.p + 1);
  data.iso_defect = need_number(j, "iso_defect");
  data.identity_defect = need_number(j, "identity_defect");
  auto cvec_reader = [](int dim, const char* what) {
    return [dim, what](const json& node) {
      if (!node.is_array() || static_cast<int>(node.size()) != dim)
        throw SchemaError(std::string(what) + " node has the wrong component count");
      CVec v(dim);
      for (int k = 0; k < dim; ++k) v[k] = read_cplx(node[k], what);
      return v;
    };
  };
  data.phi = read_grid<CVec>(j, "phi", data.chart, cvec_reader(data.p + 2, "\"phi\""));
  data.Psi = read_grid<cplx>(j, "Psi", data.chart,
                             [](const json& node) { return read_cplx(node, "\"Psi\""); });
  data.G = read_grid<CVec>(j, "G", data.chart, cvec_reader(data.p, "\"G\""));
  auto scalar_node = [](const json& node) {
    if (!node.is_number()) throw SchemaError("scalar grid holds a non-number");
    return node.get<double>();
  };
  data.omega = read_grid<double>(j, "omega", data.chart, scalar_node);
  data.lambda_sq = read_grid<double>(j, "lambda_sq", data.chart, scalar_node);
  return data;
}

void write_report_json(const std::string& path, const CommandReport& report) {
  std::ostringstream os;
  os << "{\"command\":\"" << escape(report.command) << "\",\"pass\":"
     << (report.pass() ? "true" : "false") << ",\"checks\":[";
  for (size_t k = 0; k < report.checks.size(); ++k) {
    const ResidualReport& c = report.checks[k];
    if (k) os << ",";
    os << "{\"name\":\"" << escape(c.name) << "\",\"l_inf\":" << fmt(c.l_inf)
       << ",\"l2\":" << fmt(c.l2) << ",\"h\":" << fmt(c.h);
    if (c.order_estimate) os << ",\"order_estimate\":" << fmt(*c.order_estimate);
    os << ",\"threshold\":" << fmt(c.threshold) << ",\"pass\":" << (c.pass ? "true" : "false")
       << "}";
  }
  os << "],\"values\":{";
  for (size_t k = 0; k < report.values.size(); ++k) {
    if (k) os << ",";
    os << "\"" << escape(report.values[k].first) << "\":" << fmt(report.values[k].second);
  }
  os << "},\"notes\":{";
  for (size_t k = 0; k < report.notes.size(); ++k) {
    if (k) os << ",";
    os << "\"" << escape(report.notes[k].first) << "\":\"" << escape(report.notes[k].second)
       << "\"";
  }
  os << "}}\n";
  commit(path, os.str());
}

void write_curve_csv(const std::string& path, const FrenetCurve& curve) {
  std::ostringstream os;
  os << "s,x,z,k,u,v\n";
  for (size_t i = 0; i < curve.s.size(); ++i)
    os << fmt(curve.s[i]) << "," << fmt(curve.position[i].x()) << ","
       << fmt(curve.position[i].y()) << "," << fmt(curve.k[i]) << "," << fmt(curve.u[i]) << ","
       << fmt(curve.v[i]) << "\n";
  commit(path, os.str());
}

VectorGrid read_vector_field_json(const std::string& path) {
  const json j = parse_file(path);
  GridChart2D chart = read_chart(j);
  chart.validate();
  const int dim = need_int(j, "ambient_dim");
  if (dim < 1) throw SchemaError("ambient_dim must be positive");
  const json& vals = need_array(j, "values", static_cast<size_t>(chart.count()));
  VectorGrid out(chart, 0);
  for (int i = 0; i < chart.ns; ++i)
    for (int j2 = 0; j2 < chart.nt; ++j2)
      out.at(i, j2) = read_vec(vals[chart.index(i, j2)], dim, "field value");
  return out;
}

namespace {

// Vertices first, then faces; `base` shifts the 1-based indices so several
// patches can share one file.
void obj_patch(std::ostream& os_v, std::ostream& os_f, const VectorGrid& pts, int base) {
  const int ns = pts.chart.ns, nt = pts.chart.nt;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      const Vec& p = pts.at(i, j);
      if (p.size() != 3) throw ParamError("OBJ export needs ambient dimension 3");
      os_v << "v " << fmt(p[0]) << " " << fmt(p[1]) << " " << fmt(p[2]) << "\n";
    }
  auto vid = [nt, base](int i, int j) { return base + i * nt + j + 1; };
  for (int i = 0; i + 1 < ns; ++i)
    for (int j = 0; j + 1 < nt; ++j) {
      os_f << "f " << vid(i, j) << " " << vid(i + 1, j) << " " << vid(i + 1, j + 1) << "\n";
      os_f << "f " << vid(i, j) << " " << vid(i + 1, j + 1) << " " << vid(i, j + 1) << "\n";
    }
}

}  // namespace

void write_obj(const std::string& path, const std::vector<VectorGrid>& patches) {
  std::ostringstream verts, faces;
  int base = 0;
  for (const VectorGrid& patch : patches) {
    const VectorGrid pts = patch.shrink();
    obj_patch(verts, faces, pts, base);
    base += pts.chart.count();
  }
  commit(path, verts.str() + faces.str());
}

void write_obj(const std::string& path, const VectorGrid& points) {
  write_obj(path, std::vector<VectorGrid>{points});
}

}  // namespace sigmin
