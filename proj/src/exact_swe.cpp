#include <cmath>
#include <stdexcept>

#include "root_finding.hpp"
#include "swe/riemann.hpp"

namespace swe {

double swe_wave_function(double h, double h_k, double g) {
  if (h <= h_k) return 2.0 * (std::sqrt(g * h) - std::sqrt(g * h_k));
  return (h - h_k) * std::sqrt(0.5 * g * (h + h_k) / (h * h_k));
}

double swe_wave_derivative(double h, double h_k, double g) {
  if (h <= h_k) return std::sqrt(g / h);
  const double gk = std::sqrt(0.5 * g * (h + h_k) / (h * h_k));
  return gk - g * (h - h_k) / (4.0 * h * h * gk);
}

ExactSweSolution::ExactSweSolution(const Primitive1D& left, const Primitive1D& right, double g,
                                   const SolverTolerances& tol)
    : left_(left), right_(right), g_(g) {
  if (left.h < 0.0 || right.h < 0.0) throw std::domain_error("ExactSweSolution: negative depth");
  c_left_ = std::sqrt(g * left.h);
  c_right_ = std::sqrt(g * right.h);

  if (left.h <= 0.0 || right.h <= 0.0 || 2.0 * (c_left_ + c_right_) <= right.u - left.u) {
    dry_middle_ = true;
    return;
  }

  auto f = [&](double h) {
    return swe_wave_function(h, left.h, g) + swe_wave_function(h, right.h, g) + right.u - left.u;
  };
  auto df = [&](double h) { return swe_wave_derivative(h, left.h, g) + swe_wave_derivative(h, right.h, g); };
  // Two-rarefaction depth of the full system.
  const double c0 = 0.5 * (c_left_ + c_right_) - 0.25 * (right.u - left.u);
  const double guess = c0 * c0 / g;
  const detail::RootResult root = detail::solve_star_depth(f, df, guess, std::max(left.h, right.h), tol);
  h_star_ = root.h;
  iterations_ = root.iterations;
  u_star_ = 0.5 * (left.u + right.u) +
            0.5 * (swe_wave_function(h_star_, right.h, g) - swe_wave_function(h_star_, left.h, g));
  wave_left_ = h_star_ > left.h ? WaveType::Shock : WaveType::Rarefaction;
  wave_right_ = h_star_ > right.h ? WaveType::Shock : WaveType::Rarefaction;
}

Primitive1D ExactSweSolution::sample(double xi) const {
  if (!dry_middle_) return sample_wet(xi);
  if (left_.h <= 0.0 && right_.h <= 0.0) return {};
  if (left_.h <= 0.0) return sample_left_dry(xi);
  if (right_.h <= 0.0) return sample_right_dry(xi);
  return sample_vacuum(xi);
}

Primitive1D ExactSweSolution::sample_wet(double xi) const {
  const double c_star = std::sqrt(g_ * h_star_);
  if (xi <= u_star_) {
    if (wave_left_ == WaveType::Shock) {
      const double ql = std::sqrt(0.5 * (h_star_ + left_.h) * h_star_ / (left_.h * left_.h));
      const double s = left_.u - c_left_ * ql;
      return xi < s ? left_ : Primitive1D{h_star_, u_star_, left_.psi};
    }
    if (xi <= left_.u - c_left_) return left_;
    if (xi >= u_star_ - c_star) return {h_star_, u_star_, left_.psi};
    const double u = (left_.u + 2.0 * c_left_ + 2.0 * xi) / 3.0;
    const double c = (left_.u + 2.0 * c_left_ - xi) / 3.0;
    return {c * c / g_, u, left_.psi};
  }
  if (wave_right_ == WaveType::Shock) {
    const double qr = std::sqrt(0.5 * (h_star_ + right_.h) * h_star_ / (right_.h * right_.h));
    const double s = right_.u + c_right_ * qr;
    return xi > s ? right_ : Primitive1D{h_star_, u_star_, right_.psi};
  }
  if (xi >= right_.u + c_right_) return right_;
  if (xi <= u_star_ + c_star) return {h_star_, u_star_, right_.psi};
  const double u = (right_.u - 2.0 * c_right_ + 2.0 * xi) / 3.0;
  const double c = (-right_.u + 2.0 * c_right_ + xi) / 3.0;
  return {c * c / g_, u, right_.psi};
}

Primitive1D ExactSweSolution::sample_left_dry(double xi) const {
  if (xi >= right_.u + c_right_) return right_;
  if (xi <= right_.u - 2.0 * c_right_) return {};
  const double u = (right_.u - 2.0 * c_right_ + 2.0 * xi) / 3.0;
  const double c = (-right_.u + 2.0 * c_right_ + xi) / 3.0;
  return {c * c / g_, u, right_.psi};
}

Primitive1D ExactSweSolution::sample_right_dry(double xi) const {
  if (xi <= left_.u - c_left_) return left_;
  if (xi >= left_.u + 2.0 * c_left_) return {};
  const double u = (left_.u + 2.0 * c_left_ + 2.0 * xi) / 3.0;
  const double c = (left_.u + 2.0 * c_left_ - xi) / 3.0;
  return {c * c / g_, u, left_.psi};
}

Primitive1D ExactSweSolution::sample_vacuum(double xi) const {
  if (xi <= left_.u + 2.0 * c_left_) return sample_right_dry(xi);
  if (xi >= right_.u - 2.0 * c_right_) return sample_left_dry(xi);
  return {};
}

}  // namespace swe
