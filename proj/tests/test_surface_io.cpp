#include "sigmin/surface_io.hpp"

#include "sigmin/catenary.hpp"
#include "sigmin/surfaces.hpp"
#include "sigmin/weierstrass.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

using namespace sigmin;
using nlohmann::json;

// Every number is written with 17 significant digits, which round-trips a
// double exactly, so write -> read must reproduce grids bit for bit.  Scratch
// files land in the test working directory under io_* names.

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

// Deliberately non-dyadic chart values so the round trip exercises the
// formatter rather than luck.
const GridChart2D kChart{0.25, -0.3, 0.03, 0.07, 9, 7};

ImmersionGrid sample_surface() { return round_cylinder(kChart, 1.0, 4.0, 1.0); }

}  // namespace

TEST_CASE("surface JSON round trip is exact") {
  const ImmersionGrid surf = sample_surface();
  write_surface_json("io_surface.json", surf);
  const ImmersionGrid back = read_surface_json("io_surface.json");

  CHECK(back.chart.same_nodes(surf.chart, 0.0));
  CHECK(back.ambient_dim == surf.ambient_dim);
  CHECK(back.a == surf.a);
  CHECK((back.e - surf.e).norm() == 0.0);
  double worst = 0.0;
  for (int i = 0; i < surf.chart.ns; ++i)
    for (int j = 0; j < surf.chart.nt; ++j)
      worst = std::max(worst, (back.points.at(i, j) - surf.points.at(i, j)).norm());
  CHECK(worst == 0.0);
}

TEST_CASE("surface JSON drops stencil margins on write") {
  // Pad a surface into a margin-2 grid; the file format stores only the
  // valid rectangle, so the reread chart is the shrunk one.  (11 x 11 keeps
  // the shrunk chart above the 5-node floor.)
  const GridChart2D big{0.25, -0.3, 0.03, 0.07, 11, 11};
  const ImmersionGrid surf = round_cylinder(big, 1.0, 4.0, 1.0);
  ImmersionGrid pad;
  pad.chart = surf.chart;
  pad.ambient_dim = surf.ambient_dim;
  pad.a = surf.a;
  pad.e = surf.e;
  pad.points = VectorGrid(surf.chart, 2);
  for (int i = 2; i < surf.chart.ns - 2; ++i)
    for (int j = 2; j < surf.chart.nt - 2; ++j) pad.points.at(i, j) = surf.points.at(i, j);
  pad.points.seal();

  write_surface_json("io_pad.json", pad);
  const ImmersionGrid back = read_surface_json("io_pad.json");
  CHECK(back.chart.ns == surf.chart.ns - 4);
  CHECK(back.chart.nt == surf.chart.nt - 4);
  CHECK(back.chart.s0 == surf.chart.s(2));
  CHECK(back.points.margin == 0);
  double worst = 0.0;
  for (int i = 0; i < back.chart.ns; ++i)
    for (int j = 0; j < back.chart.nt; ++j)
      worst = std::max(worst, (back.points.at(i, j) - surf.points.at(i + 2, j + 2)).norm());
  CHECK(worst == 0.0);
}

TEST_CASE("surface JSON schema violations are rejected with SchemaError") {
  write_surface_json("io_surface.json", sample_surface());
  const json good = json::parse(slurp("io_surface.json"));

  CHECK_THROWS_AS(read_surface_json("io_absent.json"), IoError);

  spit("io_tamper.json", "{ \"chart\": oops");
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);

  spit("io_tamper.json", "[1, 2, 3]");
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);

  json t = good;
  t.erase("a");
  spit("io_tamper.json", t.dump());
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);

  t = good;
  t["e"] = {0.0, 0.0, 2.0};  // not a unit vector
  spit("io_tamper.json", t.dump());
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);

  t = good;
  t["ambient_dim"] = 2;
  spit("io_tamper.json", t.dump());
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);

  t = good;
  t["points"].erase(0);  // node count no longer matches the chart
  spit("io_tamper.json", t.dump());
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);

  t = good;
  t["points"][3][1] = "NaN";
  spit("io_tamper.json", t.dump());
  CHECK_THROWS_AS(read_surface_json("io_tamper.json"), SchemaError);
}

TEST_CASE("representation payload round trip is exact, margins included") {
  // A short piece of the n = 3 generating-curve cylinder: exactly isothermal,
  // so extraction succeeds and produces every grid in the payload.
  CatenaryParams p;
  p.n = 3;
  p.lambda = 1.0;
  p.s_min = -0.3;
  p.s_max = 0.3;
  p.step = 1e-3;
  const FrenetCurve curve = reconstruct_curve(solve_curvature(p));
  const ImmersionGrid surf = build_cylinder(curve, -0.3, 0.3, 30, 0.0, 0.3, 11);
  const WeierstrassData wd = extract_representation(surf, {});

  write_weierstrass_json("io_rep.json", wd);
  const WeierstrassData back = read_weierstrass_json("io_rep.json");

  CHECK(back.chart.same_nodes(wd.chart, 0.0));
  CHECK(back.n == wd.n);
  CHECK(back.p == wd.p);
  CHECK((back.ambient_rotation - wd.ambient_rotation).norm() == 0.0);
  CHECK((back.plane_gauge - wd.plane_gauge).norm() == 0.0);
  CHECK(back.iso_defect == wd.iso_defect);
  CHECK(back.identity_defect == wd.identity_defect);
  CHECK(back.phi.margin == wd.phi.margin);
  CHECK(back.G.margin == wd.G.margin);

  double worst = 0.0;
  for (int i = 0; i < wd.chart.ns; ++i)
    for (int j = 0; j < wd.chart.nt; ++j) {
      if (wd.phi.valid(i, j))
        for (int c = 0; c < wd.p + 2; ++c)
          worst = std::max(worst, std::abs(back.phi.at(i, j)[c] - wd.phi.at(i, j)[c]));
      if (wd.Psi.valid(i, j)) worst = std::max(worst, std::abs(back.Psi.at(i, j) - wd.Psi.at(i, j)));
      if (wd.G.valid(i, j))
        for (int c = 0; c < wd.p; ++c)
          worst = std::max(worst, std::abs(back.G.at(i, j)[c] - wd.G.at(i, j)[c]));
      if (wd.omega.valid(i, j))
        worst = std::max(worst, std::abs(back.omega.at(i, j) - wd.omega.at(i, j)));
      if (wd.lambda_sq.valid(i, j))
        worst = std::max(worst, std::abs(back.lambda_sq.at(i, j) - wd.lambda_sq.at(i, j)));
    }
  CHECK(worst == 0.0);

  // A null inside the valid region violates the margin contract.
  json t = json::parse(slurp("io_rep.json"));
  const int mid = wd.chart.index(wd.chart.ns / 2, wd.chart.nt / 2);
  t["omega"]["values"][mid] = nullptr;
  spit("io_rep_bad.json", t.dump());
  CHECK_THROWS_AS(read_weierstrass_json("io_rep_bad.json"), SchemaError);
}

TEST_CASE("report JSON carries checks, values, notes, and escaping") {
  CommandReport rep;
  rep.command = "demo \"quoted\\path\"";
  ResidualReport fine;
  fine.name = "alpha";
  fine.l_inf = fine.l2 = 1.5e-3;
  fine.h = 0.01;
  fine.order_estimate = 1.97;
  rep.checks.push_back(fine.check(2e-3));
  ResidualReport bad;
  bad.name = "beta";
  bad.l_inf = bad.l2 = 0.5;
  bad.h = 0.01;
  rep.checks.push_back(bad.check(1e-4));
  rep.values.push_back({"k_max", 1.0 / 3.0});
  rep.notes.push_back({"alignment", "holds identically for p = 1; skipped"});

  CHECK(!rep.pass());
  write_report_json("io_report.json", rep);
  const json j = json::parse(slurp("io_report.json"));

  CHECK(j["command"].get<std::string>() == rep.command);
  CHECK(j["pass"].get<bool>() == false);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["name"] == "alpha");
  CHECK(j["checks"][0]["order_estimate"].get<double>() == 1.97);
  CHECK(j["checks"][0]["pass"].get<bool>() == true);
  CHECK(!j["checks"][1].contains("order_estimate"));
  CHECK(j["checks"][1]["pass"].get<bool>() == false);
  CHECK(j["values"]["k_max"].get<double>() == 1.0 / 3.0);
  CHECK(j["notes"]["alignment"] == "holds identically for p = 1; skipped");
}

TEST_CASE("vector field JSON reads back exactly and checks its node count") {
  const GridChart2D chart{0.0, 0.0, 0.1, 0.1, 5, 6};
  json field;
  field["chart"] = {{"s0", chart.s0}, {"t0", chart.t0}, {"hs", chart.hs},
                    {"ht", chart.ht}, {"ns", chart.ns}, {"nt", chart.nt}};
  field["ambient_dim"] = 3;
  json vals = json::array();
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) vals.push_back({0.1 * i, -0.2 * j, 1.0 / (1 + i + j)});
  field["values"] = vals;
  spit("io_field.json", field.dump());

  const VectorGrid eta = read_vector_field_json("io_field.json");
  CHECK(eta.chart.same_nodes(chart, 0.0));
  double worst = 0.0;
  for (int i = 0; i < chart.ns; ++i)
    for (int j = 0; j < chart.nt; ++j) {
      Vec want(3);
      want << 0.1 * i, -0.2 * j, 1.0 / (1 + i + j);
      worst = std::max(worst, (eta.at(i, j) - want).norm());
    }
  CHECK(worst == 0.0);

  field["values"].erase(0);
  spit("io_field.json", field.dump());
  CHECK_THROWS_AS(read_vector_field_json("io_field.json"), SchemaError);
}

TEST_CASE("curve CSV has the documented header and one row per sample") {
  CatenaryParams p;
  p.n = 3;
  p.lambda = 1.0;
  p.s_min = -0.02;
  p.s_max = 0.02;
  p.step = 0.01;
  const FrenetCurve curve = reconstruct_curve(solve_curvature(p));
  REQUIRE(curve.s.size() == 5);

  write_curve_csv("io_curve.csv", curve);
  std::istringstream lines(slurp("io_curve.csv"));
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "s,x,z,k,u,v");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    int commas = 0;
    for (char c : line) commas += (c == ',');
    CHECK(commas == 5);
  }
  CHECK(rows == 5);
}

TEST_CASE("OBJ export meshes the valid rectangle of each patch") {
  const GridChart2D chart{0.0, 0.0, 1.0, 1.0, 3, 4};
  VectorGrid patch(chart, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      Vec v(3);
      v << i, j, i * j;
      patch.at(i, j) = v;
    }
  write_obj("io_mesh.obj", patch);

  auto count = [](const std::string& text, const std::string& tag) {
    std::istringstream lines(text);
    std::string line;
    int hits = 0;
    while (std::getline(lines, line)) hits += (line.rfind(tag, 0) == 0);
    return hits;
  };
  std::string text = slurp("io_mesh.obj");
  CHECK(count(text, "v ") == 12);       // 3 x 4 nodes
  CHECK(count(text, "f ") == 12);       // 2 x 3 quads, two triangles each

  // Two patches in one file: indices of the second must be offset past the
  // first, so the largest referenced vertex is the total count.
  write_obj("io_mesh2.obj", std::vector<VectorGrid>{patch, patch});
  text = slurp("io_mesh2.obj");
  CHECK(count(text, "v ") == 24);
  CHECK(count(text, "f ") == 24);
  std::istringstream lines(text);
  std::string line;
  long max_index = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("f ", 0) != 0) continue;
    std::istringstream toks(line.substr(2));
    long idx = 0;
    while (toks >> idx) {
      CHECK(idx >= 1);
      max_index = std::max(max_index, idx);
    }
  }
  CHECK(max_index == 24);

  // A margin patch meshes only its valid interior.
  GridChart2D wide = chart;
  wide.ns = 5;
  wide.nt = 6;
  VectorGrid padded(wide, 1);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 5; ++j) padded.at(i, j) = patch.at(i - 1, j - 1);
  padded.seal();
  write_obj("io_mesh3.obj", padded);
  text = slurp("io_mesh3.obj");
  CHECK(count(text, "v ") == 12);
  CHECK(count(text, "f ") == 12);
}
