#include "swe/mesh2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <utility>

namespace swe {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

UnitNormal outward_normal(const Point& p, const Point& q) {
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  if (dx == 0.0 && dy == 0.0) return {};
  return UnitNormal::normalized(dy, -dx);
}

BoundarySide classify_side(const Point& m, double x0, double x1, double y0, double y1) {
  const double tol = 1e-9 * std::max(x1 - x0, y1 - y0);
  if (std::abs(m.y - y0) <= tol) return BoundarySide::South;
  if (std::abs(m.x - x1) <= tol) return BoundarySide::East;
  if (std::abs(m.y - y1) <= tol) return BoundarySide::North;
  if (std::abs(m.x - x0) <= tol) return BoundarySide::West;
  return BoundarySide::Other;
}

}  // namespace

TriMesh TriMesh::build(std::vector<Point> nodes, std::vector<std::array<int, 3>> tris) {
  TriMesh mesh;
  mesh.nodes = std::move(nodes);
  mesh.tris = std::move(tris);
  const int n_nodes = static_cast<int>(mesh.nodes.size());
  const std::size_t n_cells = mesh.tris.size();

  mesh.areas.resize(n_cells);
  mesh.centroids.resize(n_cells);
  mesh.cell_edges.resize(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    auto& t = mesh.tris[c];
    for (int v : t) {
      if (v < 0 || v >= n_nodes) {
        throw std::invalid_argument("TriMesh: triangle " + std::to_string(c) + " references missing node " +
                                    std::to_string(v));
      }
    }
    double area = signed_area(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
    if (area < 0.0) {
      std::swap(t[1], t[2]);
      area = -area;
      mesh.warnings.push_back("triangle " + std::to_string(c) + " was clockwise; reoriented");
    }
    mesh.areas[c] = area;
    const Point& a = mesh.nodes[t[0]];
    const Point& b = mesh.nodes[t[1]];
    const Point& d = mesh.nodes[t[2]];
    mesh.centroids[c] = {(a.x + b.x + d.x) / 3.0, (a.y + b.y + d.y) / 3.0};
  }

  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  if (!mesh.nodes.empty()) {
    x0 = x1 = mesh.nodes[0].x;
    y0 = y1 = mesh.nodes[0].y;
    for (const Point& p : mesh.nodes) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }

  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t c = 0; c < n_cells; ++c) {
    const auto& t = mesh.tris[c];
    for (int k = 0; k < 3; ++k) {
      const int p = t[k];
      const int q = t[(k + 1) % 3];
      const Point& a = mesh.nodes[p];
      const Point& b = mesh.nodes[q];
      CellEdge& ce = mesh.cell_edges[c][k];
      ce.length = std::hypot(b.x - a.x, b.y - a.y);
      ce.normal = outward_normal(a, b);
      const auto key = std::minmax(p, q);
      auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, static_cast<int>(mesh.edges.size()));
      if (inserted) {
        Edge e;
        e.left = static_cast<int>(c);
        e.nodes = {p, q};
        e.length = ce.length;
        e.normal = ce.normal;
        e.midpoint = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        mesh.edges.push_back(e);
      } else {
        Edge& e = mesh.edges[it->second];
        if (e.right >= 0) {
          throw std::invalid_argument("TriMesh: edge (" + std::to_string(p) + "," + std::to_string(q) +
                                      ") is shared by more than two triangles");
        }
        e.right = static_cast<int>(c);
      }
      ce.edge = it->second;
    }
  }
  for (std::size_t c = 0; c < n_cells; ++c) {
    for (CellEdge& ce : mesh.cell_edges[c]) {
      const Edge& e = mesh.edges[ce.edge];
      ce.neighbor = e.is_boundary() ? -1 : (e.left == static_cast<int>(c) ? e.right : e.left);
    }
  }
  for (Edge& e : mesh.edges) {
    if (e.is_boundary()) e.side = classify_side(e.midpoint, x0, x1, y0, y1);
  }
  return mesh;
}

TriMesh generate_rect_mesh(int nx, int ny, double lx, double ly, Point origin) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("generate_rect_mesh: nx and ny must be >= 1");
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("generate_rect_mesh: dimensions must be positive");
  std::vector<Point> nodes;
  nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      nodes.push_back({origin.x + lx * i / nx, origin.y + ly * j / ny});
    }
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * static_cast<std::size_t>(nx) * ny);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriMesh::build(std::move(nodes), std::move(tris));
}

std::vector<std::string> validate_mesh(const TriMesh& mesh) {
  std::vector<std::string> report;
  const std::size_t n = mesh.cell_count();
  if (mesh.areas.size() != n || mesh.cell_edges.size() != n || mesh.centroids.size() != n) {
    report.push_back("per-cell arrays do not match the triangle count");
    return report;
  }
  for (std::size_t c = 0; c < n; ++c) {
    const auto& t = mesh.tris[c];
    const double area = signed_area(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
    if (!(area > 0.0) || !(mesh.areas[c] > 0.0)) {
      report.push_back("cell " + std::to_string(c) + ": area " + std::to_string(area) + " <= 0");
    }
    double sx = 0.0, sy = 0.0, perimeter = 0.0;
    for (int k = 0; k < 3; ++k) {
      const CellEdge& ce = mesh.cell_edges[c][k];
      const double norm2 = ce.normal.nx() * ce.normal.nx() + ce.normal.ny() * ce.normal.ny();
      if (std::abs(norm2 - 1.0) > 1e-14) {
        report.push_back("cell " + std::to_string(c) + " edge " + std::to_string(k) + ": normal is not unit");
      }
      sx += ce.length * ce.normal.nx();
      sy += ce.length * ce.normal.ny();
      perimeter += ce.length;
      if (ce.neighbor < 0) continue;
      const auto& other = mesh.cell_edges.at(ce.neighbor);
      const auto match = std::find_if(other.begin(), other.end(), [&](const CellEdge& o) { return o.edge == ce.edge; });
      if (match == other.end() || match->neighbor != static_cast<int>(c)) {
        report.push_back("cell " + std::to_string(c) + ": neighbor " + std::to_string(ce.neighbor) +
                         " does not list it back");
        continue;
      }
      if (std::abs(match->normal.nx() + ce.normal.nx()) > 1e-14 ||
          std::abs(match->normal.ny() + ce.normal.ny()) > 1e-14) {
        report.push_back("cells " + std::to_string(c) + "/" + std::to_string(ce.neighbor) +
                         ": shared edge normals are not opposite");
      }
      if (match->length != ce.length) {
        report.push_back("cells " + std::to_string(c) + "/" + std::to_string(ce.neighbor) +
                         ": shared edge lengths differ");
      }
    }
    if (std::hypot(sx, sy) > 1e-12 * std::max(1.0, perimeter)) {
      report.push_back("cell " + std::to_string(c) + ": edge normals do not close (|sum l n| = " +
                       std::to_string(std::hypot(sx, sy)) + ")");
    }
  }
  return report;
}

namespace {

/// Next non-empty line with comments stripped; returns false at EOF.
bool next_record(std::istream& in, int& line_no, std::string& out) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out = line;
    return true;
  }
  return false;
}

template <class T, std::size_t N>
std::array<T, N> parse_fields(const std::string& record, int line_no, const char* what) {
  std::istringstream ss(record);
  std::array<T, N> v{};
  for (auto& x : v) {
    if (!(ss >> x)) throw MeshParseError(line_no, std::string("expected ") + what);
  }
  std::string extra;
  if (ss >> extra) throw MeshParseError(line_no, std::string("trailing data after ") + what);
  return v;
}

}  // namespace

TriMesh read_mesh(std::istream& in) {
  int line_no = 0;
  std::string rec;
  if (!next_record(in, line_no, rec)) throw MeshParseError(line_no, "missing header 'NNODES NTRIS'");
  const auto header = parse_fields<long, 2>(rec, line_no, "header 'NNODES NTRIS'");
  if (header[0] < 3 || header[1] < 1) throw MeshParseError(line_no, "need at least 3 nodes and 1 triangle");

  std::vector<Point> nodes(header[0]);
  for (auto& p : nodes) {
    if (!next_record(in, line_no, rec)) throw MeshParseError(line_no, "unexpected end of file in node list");
    const auto xy = parse_fields<double, 2>(rec, line_no, "node coordinates 'x y'");
    p = {xy[0], xy[1]};
  }
  std::vector<std::array<int, 3>> tris(header[1]);
  for (auto& t : tris) {
    if (!next_record(in, line_no, rec)) throw MeshParseError(line_no, "unexpected end of file in triangle list");
    const auto idx = parse_fields<long, 3>(rec, line_no, "triangle 'i0 i1 i2'");
    for (int k = 0; k < 3; ++k) {
      if (idx[k] < 0 || idx[k] >= header[0]) {
        throw MeshParseError(line_no, "triangle references missing node " + std::to_string(idx[k]));
      }
      t[k] = static_cast<int>(idx[k]);
    }
  }
  try {
    return TriMesh::build(std::move(nodes), std::move(tris));
  } catch (const std::invalid_argument& e) {
    throw MeshParseError(line_no, e.what());
  }
}

void write_mesh(const TriMesh& mesh, std::ostream& out) {
  out << mesh.nodes.size() << ' ' << mesh.tris.size() << '\n';
  char buf[64];
  for (const Point& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  for (const auto& t : mesh.tris) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file " + path);
  return read_mesh(in);
}

void save_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mesh file " + path);
  write_mesh(mesh, out);
}

std::optional<int> locate_cell(const TriMesh& mesh, double x, double y) {
  const double eps = 1e-12;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto& t = mesh.tris[c];
    const Point& a = mesh.nodes[t[0]];
    const Point& b = mesh.nodes[t[1]];
    const Point& d = mesh.nodes[t[2]];
    const double scale = 2.0 * mesh.areas[c];
    const double l0 = signed_area({x, y}, b, d) * 2.0 / scale;
    const double l1 = signed_area(a, {x, y}, d) * 2.0 / scale;
    const double l2 = 1.0 - l0 - l1;
    if (l0 >= -eps && l1 >= -eps && l2 >= -eps) return static_cast<int>(c);
  }
  return std::nullopt;
}

double total_area(const TriMesh& mesh) {
  double a = 0.0;
  for (double v : mesh.areas) a += v;
  return a;
}

}  // namespace swe
