#include "swe/output.hpp"

#include <cstdio>
#include <ostream>

namespace swe {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_1d(std::ostream& out, const RunState1D& state, const Grid1D& grid, const Bathymetry1D& bathymetry) {
  out << "x,b,h,u,q,psi,H\n";
  for (int i = 0; i < grid.cells; ++i) {
    const State1D& q = state.cells[i];
    const double b = bathymetry.cell(i);
    out << format_double(grid.center(i)) << ',' << format_double(b) << ',' << format_double(q.h) << ','
        << format_double(q.velocity()) << ',' << format_double(q.hu) << ',' << format_double(q.scalar()) << ','
        << format_double(q.h + b) << '\n';
  }
}

void write_vtk_2d(std::ostream& out, const RunState2D& state, const TriMesh& mesh, const Bathymetry2D& bathymetry,
                  const std::string& title) {
  const std::size_t nc = mesh.cell_count();
  out << "# vtk DataFile Version 3.0\n" << title << " t=" << format_double(state.time) << "\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\nPOINTS " << mesh.nodes.size() << " double\n";
  for (const Point& p : mesh.nodes) out << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
  out << "CELLS " << nc << ' ' << 4 * nc << '\n';
  for (const auto& t : mesh.tris) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nc << '\n';
  for (std::size_t c = 0; c < nc; ++c) out << "5\n";
  out << "CELL_DATA " << nc << '\n';
  auto field = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t c = 0; c < nc; ++c) out << format_double(value(c)) << '\n';
  };
  field("h", [&](std::size_t c) { return state.cells[c].h; });
  field("qx", [&](std::size_t c) { return state.cells[c].qx; });
  field("qy", [&](std::size_t c) { return state.cells[c].qy; });
  field("H", [&](std::size_t c) { return state.cells[c].h + bathymetry.cell(c); });
  field("b", [&](std::size_t c) { return bathymetry.cell(c); });
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& kv : entries_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Manifest::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

}  // namespace swe
