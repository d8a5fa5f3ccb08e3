#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "swe/mesh2d.hpp"

using namespace swe;

namespace {
bool report_mentions(const std::vector<std::string>& report, const std::string& text) {
  for (const auto& r : report)
    if (r.find(text) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("rectangle generation counts") {
  const TriMesh one = generate_rect_mesh(1, 1, 1.0, 1.0);
  CHECK(one.cell_count() == 2);
  CHECK(one.areas[0] == doctest::Approx(0.5));
  CHECK(one.areas[1] == doctest::Approx(0.5));
  const TriMesh two = generate_rect_mesh(2, 1, 2.0, 1.0);
  CHECK(two.cell_count() == 4);
  CHECK(two.nodes.size() == 6);
  const TriMesh m = generate_rect_mesh(7, 5, 3.0, 2.0, {1.0, -1.0});
  CHECK(m.cell_count() == 70);
  CHECK(m.nodes.size() == 48);
  // Each square contributes 3 new edges, plus the top and right rims.
  CHECK(m.edges.size() == 3 * 35 + 7 + 5);
  CHECK(std::abs(total_area(m) - 6.0) <= 1e-12 * 6.0);
  CHECK_THROWS_AS(generate_rect_mesh(0, 3, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_rect_mesh(3, 3, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("generated meshes satisfy every invariant") {
  for (int n : {1, 2, 5, 16}) {
    const TriMesh m = generate_rect_mesh(n, n + 1, 40.0, 1.25);
    CHECK(validate_mesh(m).empty());
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
      CHECK(m.areas[c] > 0.0);
      double sx = 0.0, sy = 0.0;
      for (const CellEdge& ce : m.cell_edges[c]) {
        sx += ce.length * ce.normal.nx();
        sy += ce.length * ce.normal.ny();
      }
      CHECK(std::hypot(sx, sy) <= 1e-12 * 40.0);
    }
  }
}

TEST_CASE("canonical edges and boundary sides") {
  const TriMesh m = generate_rect_mesh(3, 2, 3.0, 2.0);
  int counts[kBoundarySides] = {};
  for (const Edge& e : m.edges) {
    if (e.is_boundary()) {
      ++counts[static_cast<int>(e.side)];
      // Boundary normals point out of the domain.
      const Point& c = m.centroids[e.left];
      CHECK((e.midpoint.x - c.x) * e.normal.nx() + (e.midpoint.y - c.y) * e.normal.ny() > 0.0);
    } else {
      // Interior normals point from left to right.
      const Point& a = m.centroids[e.left];
      const Point& b = m.centroids[e.right];
      CHECK((b.x - a.x) * e.normal.nx() + (b.y - a.y) * e.normal.ny() > 0.0);
    }
  }
  CHECK(counts[static_cast<int>(BoundarySide::South)] == 3);
  CHECK(counts[static_cast<int>(BoundarySide::North)] == 3);
  CHECK(counts[static_cast<int>(BoundarySide::West)] == 2);
  CHECK(counts[static_cast<int>(BoundarySide::East)] == 2);
  CHECK(counts[static_cast<int>(BoundarySide::Other)] == 0);
}

TEST_CASE("clockwise triangles are reoriented with a warning") {
  const TriMesh m = TriMesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}});
  CHECK(m.areas[0] == doctest::Approx(0.5));
  CHECK(m.warnings.size() == 1);
  CHECK(validate_mesh(m).empty());
}

TEST_CASE("invalid connectivity throws") {
  CHECK_THROWS_AS(TriMesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}}), std::invalid_argument);
  // Three triangles sharing the edge (0, 1).
  CHECK_THROWS_AS(TriMesh::build({{0, 0}, {1, 0}, {0, 1}, {0, -1}, {1, 1}}, {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}}),
                  std::invalid_argument);
}

TEST_CASE("validation reports violations") {
  SUBCASE("duplicated node collapses a triangle") {
    const TriMesh m = TriMesh::build({{0, 0}, {1, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}, {1, 2, 3}});
    CHECK(report_mentions(validate_mesh(m), "area"));
  }
  SUBCASE("mismatched neighbor normals") {
    TriMesh m = generate_rect_mesh(1, 1, 1.0, 1.0);
    for (CellEdge& ce : m.cell_edges[0]) {
      if (ce.neighbor >= 0) ce.normal = UnitNormal::from_angle(0.1);
    }
    const auto report = validate_mesh(m);
    CHECK(report_mentions(report, "not opposite"));
    CHECK(report_mentions(report, "do not close"));
  }
}

TEST_CASE("mesh file roundtrip") {
  const TriMesh m = generate_rect_mesh(3, 3, 1.0, 2.0, {0.1, 0.2});
  std::stringstream ss;
  write_mesh(m, ss);
  const TriMesh back = read_mesh(ss);
  REQUIRE(back.nodes.size() == m.nodes.size());
  REQUIRE(back.tris.size() == m.tris.size());
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    CHECK(back.nodes[i].x == m.nodes[i].x);
    CHECK(back.nodes[i].y == m.nodes[i].y);
  }
  for (std::size_t c = 0; c < m.tris.size(); ++c) CHECK(back.tris[c] == m.tris[c]);

  const auto path = std::filesystem::temp_directory_path() / "swe_roundtrip_test.mesh";
  save_mesh(m, path.string());
  const TriMesh loaded = load_mesh(path.string());
  CHECK(loaded.tris == m.tris);
  std::filesystem::remove(path);
  CHECK_THROWS(load_mesh("/nonexistent/dir/mesh.txt"));
}

TEST_CASE("mesh parsing errors name the line") {
  std::istringstream missing("# header\n3 1\n0 0\n1 0\n0 1\n0 1 7\n");
  try {
    read_mesh(missing);
    FAIL("expected MeshParseError");
  } catch (const MeshParseError& e) {
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }
  std::istringstream junk("3 1\n0 0\n1 x\n0 1\n0 1 2\n");
  CHECK_THROWS_AS(read_mesh(junk), MeshParseError);
  std::istringstream truncated("3 1\n0 0\n1 0\n");
  CHECK_THROWS_AS(read_mesh(truncated), MeshParseError);
  std::istringstream cw("3 1\n0 0\n1 0\n0 1\n0 2 1  # clockwise\n");
  const TriMesh m = read_mesh(cw);
  CHECK(m.areas[0] > 0.0);
  CHECK_FALSE(m.warnings.empty());
}

TEST_CASE("cell location") {
  const TriMesh m = generate_rect_mesh(4, 4, 1.0, 1.0);
  const auto c = locate_cell(m, 0.3, 0.7);
  REQUIRE(c.has_value());
  const auto& t = m.tris[*c];
  double xmin = 1, xmax = 0, ymin = 1, ymax = 0;
  for (int k = 0; k < 3; ++k) {
    xmin = std::min(xmin, m.nodes[t[k]].x);
    xmax = std::max(xmax, m.nodes[t[k]].x);
    ymin = std::min(ymin, m.nodes[t[k]].y);
    ymax = std::max(ymax, m.nodes[t[k]].y);
  }
  CHECK(xmin <= 0.3);
  CHECK(xmax >= 0.3);
  CHECK(ymin <= 0.7);
  CHECK(ymax >= 0.7);
  CHECK_FALSE(locate_cell(m, 1.5, 0.5).has_value());
}
