#pragma once

#include <optional>
#include <string>

#include "swe/core.hpp"

namespace swe {

enum class WaveType { Rarefaction, Shock };

/// Solution of the pressure-system Riemann problem along the t-axis.
///
/// The pressure system is always subcritical (eigenvalues -c, 0, c), so the
/// interface state is always the star state and no sampling is needed.
struct StarState {
  double h_star = 0.0;
  double q_star = 0.0;
  std::optional<double> s_left;   // set only when wave_left == Shock
  std::optional<double> s_right;  // set only when wave_right == Shock
  WaveType wave_left = WaveType::Rarefaction;
  WaveType wave_right = WaveType::Rarefaction;
  bool dry = false;
  int iterations = 0;
};

struct SolverTolerances {
  double tol = 1e-9;
  int max_iter = 50;
};

enum class PressureSolver { TwoRarefaction, ExactNewton };

/// Closed-form star state assuming two rarefactions. A non-positive
/// bracket (strongly diverging data) yields a dry star state.
StarState two_rarefaction_star(double h_left, double q_left, double h_right, double q_right, double g);
StarState two_rarefaction_star(const Primitive1D& left, const Primitive1D& right, double g);

/// Newton solution of f(h) = f_L(h) + f_R(h) + q_R - q_L = 0 with
/// rarefaction/shock branches, started from the two-rarefaction depth.
StarState exact_pressure_star(double h_left, double q_left, double h_right, double q_right, double g,
                              const SolverTolerances& tol = {});
StarState exact_pressure_star(const Primitive1D& left, const Primitive1D& right, double g,
                              const SolverTolerances& tol = {});

StarState pressure_star(double h_left, double q_left, double h_right, double q_right, double g,
                        PressureSolver solver, const SolverTolerances& tol = {});

/// Wave function f_K of the pressure system and its derivative in h.
double pressure_wave_function(double h, double h_k, double g);
double pressure_wave_derivative(double h, double h_k, double g);
/// Residual of the star-depth equation.
double pressure_star_residual(double h, double h_left, double q_left, double h_right, double q_right, double g);

/// -sqrt(g (h* + h_L) / 2); requires h_star > h_left.
double shock_speed_left(double h_star, double h_left, double g);
/// +sqrt(g (h* + h_R) / 2); requires h_star > h_right.
double shock_speed_right(double h_star, double h_right, double g);

/// Split numerical flux: pressure part (q*, g h*^2 / 2, 0) plus advection
/// part upwinded on the sign of q*.
Vec3 fvs_interface_flux(const Primitive1D& left, const Primitive1D& right, double g, PressureSolver solver,
                        const SolverTolerances& tol = {});

/// Exact solution of the full shallow water Riemann problem with a passive
/// scalar, including dry-bed and vacuum-generating data.
class ExactSweSolution {
 public:
  ExactSweSolution(const Primitive1D& left, const Primitive1D& right, double g, const SolverTolerances& tol = {});

  /// Self-similar solution at xi = x / t.
  Primitive1D sample(double xi) const;

  double h_star() const { return h_star_; }
  double u_star() const { return u_star_; }
  WaveType wave_left() const { return wave_left_; }
  WaveType wave_right() const { return wave_right_; }
  /// True when a dry region separates the two waves (or one side is dry).
  bool dry_middle() const { return dry_middle_; }
  int iterations() const { return iterations_; }

 private:
  Primitive1D sample_wet(double xi) const;
  Primitive1D sample_left_dry(double xi) const;
  Primitive1D sample_right_dry(double xi) const;
  Primitive1D sample_vacuum(double xi) const;

  Primitive1D left_;
  Primitive1D right_;
  double g_;
  double c_left_;
  double c_right_;
  double h_star_ = 0.0;
  double u_star_ = 0.0;
  WaveType wave_left_ = WaveType::Rarefaction;
  WaveType wave_right_ = WaveType::Rarefaction;
  bool dry_middle_ = false;
  int iterations_ = 0;
};

/// Depth function f_K of the full system (velocity jump across wave K).
double swe_wave_function(double h, double h_k, double g);
double swe_wave_derivative(double h, double h_k, double g);

/// Godunov flux: physical flux of the exact solution sampled at xi = 0.
Vec3 godunov_exact_flux(const Primitive1D& left, const Primitive1D& right, double g, const SolverTolerances& tol = {});

enum class FluxMode { FvsTwoRarefaction, FvsExact, GodunovExact };

Vec3 interface_flux(const Primitive1D& left, const Primitive1D& right, double g, FluxMode mode,
                    const SolverTolerances& tol = {});

const char* to_string(FluxMode mode);
/// Accepts fvs-2r, fvs-exact, godunov-exact.
FluxMode parse_flux_mode(const std::string& name);

}  // namespace swe
