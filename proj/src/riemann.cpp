#include "swe/riemann.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "root_finding.hpp"

namespace swe {

namespace {

double pow15(double h) { return h * std::sqrt(h); }

void check_depths(double h_left, double h_right) {
  if (h_left < 0.0 || h_right < 0.0) {
    throw std::domain_error("Riemann solver: negative depth (h_L=" + std::to_string(h_left) +
                            ", h_R=" + std::to_string(h_right) + ")");
  }
}

void classify_waves(StarState& s, double h_left, double h_right, double g) {
  if (s.dry) return;
  if (s.h_star > h_left) {
    s.wave_left = WaveType::Shock;
    s.s_left = shock_speed_left(s.h_star, h_left, g);
  }
  if (s.h_star > h_right) {
    s.wave_right = WaveType::Shock;
    s.s_right = shock_speed_right(s.h_star, h_right, g);
  }
}

}  // namespace

StarState two_rarefaction_star(double h_left, double q_left, double h_right, double q_right, double g) {
  check_depths(h_left, h_right);
  StarState s;
  const double sqrt_g = std::sqrt(g);
  const double bracket = 0.5 * (pow15(h_left) + pow15(h_right)) - 3.0 / (4.0 * sqrt_g) * (q_right - q_left);
  if (bracket <= 0.0) {
    s.dry = true;
    return s;
  }
  s.q_star = 0.5 * (q_left + q_right) + sqrt_g / 3.0 * (pow15(h_left) - pow15(h_right));
  s.h_star = std::cbrt(bracket * bracket);
  classify_waves(s, h_left, h_right, g);
  return s;
}

StarState two_rarefaction_star(const Primitive1D& left, const Primitive1D& right, double g) {
  return two_rarefaction_star(left.h, left.discharge(), right.h, right.discharge(), g);
}

double pressure_wave_function(double h, double h_k, double g) {
  if (h <= h_k) return 2.0 / 3.0 * std::sqrt(g) * (pow15(h) - pow15(h_k));
  return std::sqrt(0.5 * g * (h + h_k)) * (h - h_k);
}

double pressure_wave_derivative(double h, double h_k, double g) {
  if (h <= h_k) return std::sqrt(g * h);
  return std::sqrt(g / 8.0) * (3.0 * h + h_k) / std::sqrt(h + h_k);
}

double pressure_star_residual(double h, double h_left, double q_left, double h_right, double q_right, double g) {
  return pressure_wave_function(h, h_left, g) + pressure_wave_function(h, h_right, g) + q_right - q_left;
}

StarState exact_pressure_star(double h_left, double q_left, double h_right, double q_right, double g,
                              const SolverTolerances& tol) {
  check_depths(h_left, h_right);
  StarState s;
  // f is increasing in h, so f(0) >= 0 means no positive-depth root.
  if (pressure_star_residual(0.0, h_left, q_left, h_right, q_right, g) >= 0.0) {
    s.dry = true;
    return s;
  }
  const StarState guess = two_rarefaction_star(h_left, q_left, h_right, q_right, g);
  auto f = [&](double h) { return pressure_star_residual(h, h_left, q_left, h_right, q_right, g); };
  auto df = [&](double h) {
    return pressure_wave_derivative(h, h_left, g) + pressure_wave_derivative(h, h_right, g);
  };
  const double h_scale = std::max(h_left, h_right);
  const detail::RootResult root =
      detail::solve_star_depth(f, df, guess.dry ? 0.5 * h_scale : guess.h_star, h_scale, tol);
  s.h_star = root.h;
  s.iterations = root.iterations;
  s.q_star = 0.5 * (q_left + q_right) +
             0.5 * (pressure_wave_function(s.h_star, h_right, g) - pressure_wave_function(s.h_star, h_left, g));
  classify_waves(s, h_left, h_right, g);
  return s;
}

StarState exact_pressure_star(const Primitive1D& left, const Primitive1D& right, double g,
                              const SolverTolerances& tol) {
  return exact_pressure_star(left.h, left.discharge(), right.h, right.discharge(), g, tol);
}

StarState pressure_star(double h_left, double q_left, double h_right, double q_right, double g,
                        PressureSolver solver, const SolverTolerances& tol) {
  if (solver == PressureSolver::ExactNewton) return exact_pressure_star(h_left, q_left, h_right, q_right, g, tol);
  return two_rarefaction_star(h_left, q_left, h_right, q_right, g);
}

double shock_speed_left(double h_star, double h_left, double g) {
  if (!(h_star > h_left)) throw std::invalid_argument("shock_speed_left: requires h_star > h_left");
  return -std::sqrt(0.5 * g * (h_star + h_left));
}

double shock_speed_right(double h_star, double h_right, double g) {
  if (!(h_star > h_right)) throw std::invalid_argument("shock_speed_right: requires h_star > h_right");
  return std::sqrt(0.5 * g * (h_star + h_right));
}

Vec3 fvs_interface_flux(const Primitive1D& left, const Primitive1D& right, double g, PressureSolver solver,
                        const SolverTolerances& tol) {
  const StarState s = pressure_star(left.h, left.discharge(), right.h, right.discharge(), g, solver, tol);
  const Primitive1D& up = s.q_star >= 0.0 ? left : right;
  const Vec3 advection{0.0, s.q_star * up.u, s.q_star * up.psi};
  const Vec3 pressure{s.q_star, 0.5 * g * s.h_star * s.h_star, 0.0};
  return advection + pressure;
}

Vec3 godunov_exact_flux(const Primitive1D& left, const Primitive1D& right, double g, const SolverTolerances& tol) {
  const Primitive1D w = ExactSweSolution(left, right, g, tol).sample(0.0);
  const double q = w.h * w.u;
  return {q, q * w.u + 0.5 * g * w.h * w.h, q * w.psi};
}

Vec3 interface_flux(const Primitive1D& left, const Primitive1D& right, double g, FluxMode mode,
                    const SolverTolerances& tol) {
  switch (mode) {
    case FluxMode::FvsTwoRarefaction:
      return fvs_interface_flux(left, right, g, PressureSolver::TwoRarefaction, tol);
    case FluxMode::FvsExact:
      return fvs_interface_flux(left, right, g, PressureSolver::ExactNewton, tol);
    case FluxMode::GodunovExact:
      return godunov_exact_flux(left, right, g, tol);
  }
  throw std::logic_error("unknown flux mode");
}

const char* to_string(FluxMode mode) {
  switch (mode) {
    case FluxMode::FvsTwoRarefaction:
      return "fvs-2r";
    case FluxMode::FvsExact:
      return "fvs-exact";
    case FluxMode::GodunovExact:
      return "godunov-exact";
  }
  return "?";
}

FluxMode parse_flux_mode(const std::string& name) {
  if (name == "fvs-2r") return FluxMode::FvsTwoRarefaction;
  if (name == "fvs-exact") return FluxMode::FvsExact;
  if (name == "godunov-exact") return FluxMode::GodunovExact;
  throw std::invalid_argument("unknown flux mode '" + name + "' (expected fvs-2r, fvs-exact or godunov-exact)");
}

}  // namespace swe
