#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "swe/mesh2d.hpp"
#include "swe/solver1d.hpp"
#include "swe/solver2d.hpp"

namespace swe {

/// Columns x,b,h,u,q,psi,H with 17 significant digits.
void write_csv_1d(std::ostream& out, const RunState1D& state, const Grid1D& grid, const Bathymetry1D& bathymetry);

/// Legacy ASCII VTK 3.0 unstructured grid with cell data h, qx, qy, H, b.
void write_vtk_2d(std::ostream& out, const RunState2D& state, const TriMesh& mesh, const Bathymetry2D& bathymetry,
                  const std::string& title = "swe");

/// "%.17g" formatting shared by the writers.
std::string format_double(double v);

/// Ordered key=value run record.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value) { set(key, format_double(value)); }
  void set(const std::string& key, long value) { set(key, std::to_string(value)); }
  void set(const std::string& key, int value) { set(key, std::to_string(value)); }
  void write(std::ostream& out) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace swe
