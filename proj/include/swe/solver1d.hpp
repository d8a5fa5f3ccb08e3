#pragma once

#include <functional>
#include <span>
#include <vector>

#include "swe/core.hpp"
#include "swe/riemann.hpp"

namespace swe {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int cells = 2;

  /// Throws std::invalid_argument unless cells >= 2 and x_max > x_min.
  static Grid1D make(double x_min, double x_max, int cells);

  double dx() const { return (x_max - x_min) / cells; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
  /// Position of interface i (between cells i-1 and i), i in [0, cells].
  double face(int i) const { return x_min + i * dx(); }
};

/// Bed elevation at cell centers and at the cells + 1 interfaces.
class Bathymetry1D {
 public:
  static Bathymetry1D flat(const Grid1D& grid);
  static Bathymetry1D from_function(const Grid1D& grid, const std::function<double(double)>& b);
  static Bathymetry1D from_values(std::vector<double> at_cells, std::vector<double> at_faces);

  std::span<const double> cells() const { return cells_; }
  std::span<const double> faces() const { return faces_; }
  double cell(int i) const { return cells_[i]; }
  double face(int i) const { return faces_[i]; }

 private:
  std::vector<double> cells_;
  std::vector<double> faces_;
};

struct Bc1D {
  enum class Kind { Transmissive, Reflective, SubcriticalInflow, SubcriticalOutflow };
  Kind kind = Kind::Transmissive;
  /// Imposed discharge (inflow) or depth (outflow).
  double value = 0.0;

  static Bc1D transmissive() { return {Kind::Transmissive, 0.0}; }
  static Bc1D reflective() { return {Kind::Reflective, 0.0}; }
  static Bc1D inflow(double q_fixed) { return {Kind::SubcriticalInflow, q_fixed}; }
  /// Throws std::invalid_argument unless h_fixed > 0.
  static Bc1D outflow(double h_fixed);
};

struct RunState1D {
  double time = 0.0;
  long steps = 0;
  std::vector<State1D> cells;
  Bc1D left;
  Bc1D right;
};

inline constexpr int kGhostLayers = 2;

/// Fills the two ghost layers on each side of `padded` (size cells + 4)
/// from the interior values.
void apply_bc(std::span<State1D> padded, const Bc1D& left, const Bc1D& right);

/// Hydrostatic reconstruction of one interface: depths on each side
/// relative to the higher of the two bed values.
struct HydrostaticPair {
  double h_minus;
  double h_plus;
  double b_star;
};
HydrostaticPair hydrostatic_reconstruction(double h_minus, double b_minus, double h_plus, double b_plus);

/// Well-balanced bed source of one cell (per unit length, per unit time):
/// centered term from the face depths plus the hydrostatic pressure
/// corrections of both faces. `h_star_left`/`h_star_right` are the
/// hydrostatically reconstructed depths of this cell at its faces.
Vec3 bed_source(double h_left_face, double b_left_face, double h_star_left, double h_right_face,
                double b_right_face, double h_star_right, double g, double dx);

struct Solver1DOptions {
  FluxMode flux = FluxMode::FvsTwoRarefaction;
  int order = 1;
  double g = 9.81;
  SolverTolerances tol{};
  int threads = 1;
};

class Solver1D {
 public:
  Solver1D(Grid1D grid, Bathymetry1D bathymetry, Solver1DOptions options);

  const Grid1D& grid() const { return grid_; }
  const Bathymetry1D& bathymetry() const { return bathymetry_; }
  const Solver1DOptions& options() const { return options_; }

  /// cfl dx / max(|u| + c) over wet cells. Throws std::runtime_error when
  /// every cell is dry.
  double compute_dt(const RunState1D& state, double cfl) const;

  /// One update of the configured order. Returns max |Q^{n+1} - Q^n| / dt.
  double step(RunState1D& state, double dt) const;
  double step_first_order(RunState1D& state, double dt) const;
  /// Minmod-limited reconstruction of (h + b, u, psi), half-step predictor,
  /// then the first-order flux formula on the evolved face values.
  double step_second_order(RunState1D& state, double dt) const;

  /// Per-cell bed source for the given state and order, using the n-level
  /// reconstruction.
  std::vector<Vec3> bed_sources(const RunState1D& state, int order) const;

 private:
  struct Faces;
  Faces reconstruct(const RunState1D& state, int order) const;
  void predict(Faces& faces, double dt) const;
  double advance(RunState1D& state, const Faces& faces, double dt) const;

  Grid1D grid_;
  Bathymetry1D bathymetry_;
  Solver1DOptions options_;
};

/// Advances to t_end with CFL-limited steps that land exactly on t_end.
/// `on_step` (optional) is called after every step with the residual and
/// whether the step was shortened to land on t_end.
void run_until(const Solver1D& solver, RunState1D& state, double t_end, double cfl,
               const std::function<void(const RunState1D&, double, bool)>& on_step = {});

double total_mass(const RunState1D& state, const Grid1D& grid);

}  // namespace swe
