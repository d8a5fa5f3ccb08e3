#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "swe/errors.hpp"
#include "swe/riemann.hpp"

namespace swe::detail {

inline constexpr double kMinDepthIterate = 1e-12;

struct RootResult {
  double h;
  int iterations;
};

inline double relative_change(double a, double b) { return std::abs(b - a) / (0.5 * (a + b)); }

/// Bisection on [kMinDepthIterate, hi] for an increasing f with f(lo) < 0.
template <class F>
RootResult bisect_depth(F&& f, double hi, const SolverTolerances& tol, int iterations) {
  double lo = kMinDepthIterate;
  for (int k = 0; k < 200 && f(hi) < 0.0; ++k) hi *= 2.0;
  for (int k = 0; k < 400; ++k) {
    const double mid = 0.5 * (lo + hi);
    ++iterations;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (relative_change(lo, hi) <= tol.tol) return {0.5 * (lo + hi), iterations};
  }
  throw SolverFailure("bisection did not converge", 0.5 * (lo + hi));
}

/// Newton iteration for the star depth of an increasing wave equation,
/// stopped on the relative increment. Iterates are clamped to a positive
/// floor; five consecutive non-decreasing residuals switch to bisection on
/// [floor, 2 max(h_scale, guess)].
template <class F, class DF>
RootResult solve_star_depth(F&& f, DF&& df, double guess, double h_scale, const SolverTolerances& tol) {
  double h = std::max(guess, kMinDepthIterate);
  double fh = f(h);
  if (fh == 0.0) return {h, 0};
  int stalled = 0;
  for (int k = 1; k <= tol.max_iter; ++k) {
    const double d = df(h);
    if (!(d > 0.0) || !std::isfinite(d)) return bisect_depth(f, 2.0 * std::max(h_scale, guess), tol, k);
    const double next = std::max(kMinDepthIterate, h - fh / d);
    if (relative_change(h, next) <= tol.tol) return {next, k};
    const double f_next = f(next);
    stalled = std::abs(f_next) >= std::abs(fh) ? stalled + 1 : 0;
    h = next;
    fh = f_next;
    if (fh == 0.0) return {h, k};
    if (stalled >= 5) return bisect_depth(f, 2.0 * std::max(h_scale, guess), tol, k);
  }
  throw SolverFailure("Newton iteration for star depth did not converge in " + std::to_string(tol.max_iter) +
                          " iterations",
                      h);
}

}  // namespace swe::detail
