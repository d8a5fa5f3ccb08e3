#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swe/core.hpp"

namespace swe {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Side of the bounding box a boundary edge lies on.
enum class BoundarySide : int { South = 0, East = 1, North = 2, West = 3, Other = 4 };
inline constexpr int kBoundarySides = 5;

/// One of the three edges of a cell, seen from that cell.
struct CellEdge {
  int neighbor = -1;  // -1 on the boundary
  int edge = -1;      // index into TriMesh::edges
  double length = 0.0;
  UnitNormal normal;  // outward from the owning cell
};

/// Canonical edge, stored once. The normal points from `left` to `right`.
struct Edge {
  int left = -1;
  int right = -1;  // -1 on the boundary
  std::array<int, 2> nodes{};
  double length = 0.0;
  UnitNormal normal;
  Point midpoint;
  BoundarySide side = BoundarySide::Other;

  bool is_boundary() const { return right < 0; }
};

/// Conforming triangulation with per-cell and canonical edge data.
/// Treated as immutable once built.
struct TriMesh {
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> tris;  // counterclockwise
  std::vector<double> areas;
  std::vector<Point> centroids;
  std::vector<std::array<CellEdge, 3>> cell_edges;
  std::vector<Edge> edges;
  std::vector<std::string> warnings;

  std::size_t cell_count() const { return tris.size(); }

  /// Builds connectivity and geometry. Clockwise triangles are reoriented
  /// (with a warning); an edge shared by more than two cells or an index out
  /// of range throws std::invalid_argument.
  static TriMesh build(std::vector<Point> nodes, std::vector<std::array<int, 3>> tris);
};

/// Structured triangulation of [origin, origin + (lx, ly)]: each of the
/// nx * ny squares is split along its lower-left to upper-right diagonal.
TriMesh generate_rect_mesh(int nx, int ny, double lx, double ly, Point origin = {});

/// Returns a list of violated invariants; empty means valid.
std::vector<std::string> validate_mesh(const TriMesh& mesh);

class MeshParseError : public std::runtime_error {
 public:
  MeshParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// ASCII mesh format: "NNODES NTRIS", then NNODES lines "x y", then NTRIS
/// lines "i0 i1 i2" (0-based). '#' starts a comment.
TriMesh read_mesh(std::istream& in);
void write_mesh(const TriMesh& mesh, std::ostream& out);
TriMesh load_mesh(const std::string& path);
void save_mesh(const TriMesh& mesh, const std::string& path);

/// Index of a cell containing (x, y), if any.
std::optional<int> locate_cell(const TriMesh& mesh, double x, double y);

double total_area(const TriMesh& mesh);

}  // namespace swe
