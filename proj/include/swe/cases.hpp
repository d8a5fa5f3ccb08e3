#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swe/mesh2d.hpp"
#include "swe/solver1d.hpp"
#include "swe/solver2d.hpp"

namespace swe {

struct Case1D {
  std::string id;
  Grid1D grid;
  std::function<double(double)> bed;
  std::function<Primitive1D(double)> initial;
  Bc1D left;
  Bc1D right;
  double g = 9.81;
  double cfl = 0.9;
  std::vector<double> output_times;

  Bathymetry1D bathymetry() const { return Bathymetry1D::from_function(grid, bed); }
  /// Initial data sampled at cell centers.
  RunState1D initial_state() const;
};

struct Case2D {
  std::string id;
  TriMesh mesh;
  std::function<double(double, double)> bed;
  StateField initial;  // evaluated at t = 0
  BoundaryConditions2D bcs;
  ForcingField forcing;
  double g = 9.81;
  double cfl = 0.45;
  std::vector<double> output_times;

  Bathymetry2D bathymetry() const { return Bathymetry2D::from_function(mesh, bed); }
  /// Initial data sampled at centroids.
  RunState2D initial_state() const;
};

/// Left/right data of the three dam-break style Riemann tests.
struct RiemannData {
  Primitive1D left;
  Primitive1D right;
  double t_out;
};
RiemannData riemann_data(int k);

/// Domain [0, 30], discontinuity at x = 15, transmissive ends.
Case1D riemann_case(int k, int cells = 100);

/// b(x) = 0.2 - 0.05 (x - 10)^2 on 8 < x < 12, zero elsewhere.
double bump_bed(double x);

/// Transcritical flow over the bump: inflow q = 0.18, outflow h = 0.33,
/// run to T = 200 s.
Case1D bump_case_1d(int cells = 200);
/// Same flow in a 25 x 1.25 channel with reflective side walls.
Case2D bump_case_2d(int nx = 200, int ny = 10);

class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Steady solution of constant discharge and piecewise constant specific
/// energy q^2/(2 g h^2) + h + b. Subcritical throughout when the outflow
/// energy clears the crest; otherwise critical at the crest, supercritical
/// downstream of it, and a hydraulic jump back to the outflow branch.
class BumpSteadyReference {
 public:
  BumpSteadyReference(double q, double h_out, std::function<double(double)> bed, double x_min, double x_max,
                      double g = 9.81);

  double depth(double x) const;
  std::vector<double> sample(const std::vector<double>& x) const;
  bool transcritical() const { return transcritical_; }
  double crest() const { return crest_; }
  /// Shock position, or NaN when the flow is subcritical throughout.
  double shock() const { return shock_; }
  double critical_depth() const { return h_crit_; }

 private:
  double subcritical(double energy, double x) const;
  double supercritical(double energy, double x) const;

  double q_, g_;
  std::function<double(double)> bed_;
  double x_min_, x_max_;
  double h_crit_;
  double crest_;
  double energy_up_;
  double energy_down_;
  bool transcritical_ = false;
  double shock_;
};

/// Square [0, 40]^2 with a circular column of radius 2.5 at the center,
/// reflective walls.
Case2D circular_dam_case(int nx = 100, int ny = 100);

/// Radially symmetric solution on [0, r_max] by a first-order conservative
/// finite-volume scheme in cylindrical form (reflective at r = 0).
struct RadialProfile {
  double dr = 0.0;
  std::vector<double> r;  // cell centers
  std::vector<double> h;
  std::vector<double> u;
  double time = 0.0;

  /// Linear interpolation between cell centers.
  double depth(double radius) const;
  /// Integral of h r dr.
  double mass() const;
};

struct RadialOptions {
  double r_max = 30.0;
  int cells = 4000;
  double r_dam = 2.5;
  double h_in = 2.5;
  double h_out = 1.0;
  double g = 9.81;
  double cfl = 0.9;
};
RadialProfile radial_reference(double t, const RadialOptions& opt = {});

/// Manufactured solution on [0, 1]^2 with its forcing term.
double manufactured_bed(double x, double y);
State2D manufactured_exact(double x, double y, double t);
Vec3 manufactured_forcing(double x, double y, double t, double g = 9.81);
Case2D manufactured_case(int n = 32);

/// Still water H0 over the bump bed on [0, 25] (reflective).
Case1D lake_at_rest_1d(int cells = 100, double h0 = 0.5);
/// Still water H0 over the Gaussian bed of the manufactured case on [0, 1]^2.
Case2D lake_at_rest_2d(int n = 20, double h0 = 1.0);

}  // namespace swe
