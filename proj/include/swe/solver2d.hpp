#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "swe/core.hpp"
#include "swe/mesh2d.hpp"
#include "swe/riemann.hpp"

namespace swe {

/// Rotated split flux across an edge with unit normal n (from qi towards
/// qj), returned in the (x, y) frame.
Vec3 edge_flux(const State2D& qi, const State2D& qj, const UnitNormal& n, double g, FluxMode mode,
               const SolverTolerances& tol = {});

/// Bed elevation at cell centroids and at canonical edge midpoints.
class Bathymetry2D {
 public:
  static Bathymetry2D flat(const TriMesh& mesh);
  static Bathymetry2D from_function(const TriMesh& mesh, const std::function<double(double, double)>& b);
  static Bathymetry2D from_values(std::vector<double> at_cells, std::vector<double> at_edges);

  std::span<const double> cells() const { return cells_; }
  std::span<const double> edges() const { return edges_; }
  double cell(std::size_t i) const { return cells_[i]; }
  double edge(std::size_t e) const { return edges_[e]; }

 private:
  std::vector<double> cells_;
  std::vector<double> edges_;
};

using StateField = std::function<State2D(double x, double y, double t)>;

struct Bc2D {
  enum class Kind { Reflective, Transmissive, Dirichlet, InflowDischarge, OutflowDepth };
  Kind kind = Kind::Reflective;
  /// Inflow discharge per unit width (into the domain) or outflow depth.
  double value = 0.0;
  /// Imposed state for Dirichlet boundaries.
  StateField field;

  static Bc2D reflective() { return {}; }
  static Bc2D transmissive() { return {Kind::Transmissive, 0.0, {}}; }
  static Bc2D dirichlet(StateField f) { return {Kind::Dirichlet, 0.0, std::move(f)}; }
  static Bc2D inflow(double q) { return {Kind::InflowDischarge, q, {}}; }
  static Bc2D outflow(double h) { return {Kind::OutflowDepth, h, {}}; }
};

/// Boundary condition per bounding-box side (BoundarySide).
using BoundaryConditions2D = std::array<Bc2D, kBoundarySides>;

inline BoundaryConditions2D all_boundaries(const Bc2D& bc) {
  BoundaryConditions2D out;
  out.fill(bc);
  return out;
}

struct RunState2D {
  double time = 0.0;
  long steps = 0;
  std::vector<State2D> cells;
  BoundaryConditions2D bcs = all_boundaries(Bc2D::reflective());
};

/// Extra source term (e.g. manufactured forcing) evaluated at (x, y, t).
using ForcingField = std::function<Vec3(double x, double y, double t)>;

struct Solver2DOptions {
  FluxMode flux = FluxMode::FvsTwoRarefaction;
  int order = 1;
  double g = 9.81;
  SolverTolerances tol{};
  int threads = 1;
  ForcingField forcing;
};

class Solver2D {
 public:
  /// Keeps a reference to `mesh`, which must outlive the solver.
  Solver2D(const TriMesh& mesh, Bathymetry2D bathymetry, Solver2DOptions options);

  const TriMesh& mesh() const { return mesh_; }
  const Bathymetry2D& bathymetry() const { return bathymetry_; }
  const Solver2DOptions& options() const { return options_; }

  /// cfl * min_i r_i / (|u_i| + c_i), r_i = |cell i| / perimeter(i).
  double compute_dt(const RunState2D& state, double cfl) const;

  /// Q^{n+1} = Q^n - dt/|cell| sum_j l_ij F_ij + dt S_i. Returns
  /// max |Q^{n+1} - Q^n| / dt.
  double step(RunState2D& state, double dt) const;

  /// Per-cell well-balanced bed source (centered term plus hydrostatic
  /// pressure corrections) of the n-level reconstruction.
  std::vector<Vec3> bed_sources(const RunState2D& state) const;

  /// Length scale r_i used by compute_dt.
  double length_scale(std::size_t cell) const { return length_scale_[cell]; }

 private:
  struct Reconstruction;
  Reconstruction reconstruct(const RunState2D& state) const;
  void predict(Reconstruction& r, const RunState2D& state, double dt) const;
  State2D ghost_state(const State2D& inside, const Edge& edge, const BoundaryConditions2D& bcs, double x, double y,
                      double t) const;
  void edge_pass(const Reconstruction& r, const RunState2D& state, double t_flux, std::vector<Vec3>& flux,
                 std::vector<double>& h_star_left, std::vector<double>& h_star_right) const;
  Vec3 cell_bed_source(const Reconstruction& r, std::size_t c, const std::vector<double>& h_star_left,
                       const std::vector<double>& h_star_right) const;

  const TriMesh& mesh_;
  Bathymetry2D bathymetry_;
  Solver2DOptions options_;
  std::vector<double> length_scale_;
  std::vector<std::array<double, 3>> lsq_;  // inverse normal matrix per cell (a11, a12, a22)
  std::vector<std::array<Point, 3>> stencil_offsets_;
};

/// Same contract as the 1D run_until.
void run_until(const Solver2D& solver, RunState2D& state, double t_end, double cfl,
               const std::function<void(const RunState2D&, double, bool)>& on_step = {});

double total_mass(const RunState2D& state, const TriMesh& mesh);

}  // namespace swe
