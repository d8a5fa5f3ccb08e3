#pragma once

#include <span>
#include <string>
#include <vector>

#include "swe/riemann.hpp"

namespace swe {

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Volume-weighted discrete norms of (numeric - reference). Throws
/// std::invalid_argument on size mismatch or non-positive total weight.
Norms error_norms(std::span<const double> numeric, std::span<const double> reference,
                  std::span<const double> weights);

/// log(e1 / e2) / log(dx1 / dx2).
double observed_order(double e1, double e2, double dx1, double dx2);

struct ConvergenceRow {
  int n = 0;
  double dx = 0.0;
  Norms qx;
  double order_l1 = 0.0;  // against the previous row; 0 for the first
  double order_l2 = 0.0;
  double order_linf = 0.0;
  long steps = 0;
};

struct ConvergenceOptions {
  int order = 2;
  FluxMode flux = FluxMode::FvsTwoRarefaction;
  double cfl = 0.45;
  double t_end = 1.0;
  int threads = 1;
};

/// Runs the manufactured case on n x n meshes and scores q_x against the
/// exact solution at centroids. Needs at least three meshes.
std::vector<ConvergenceRow> convergence_study(const std::vector<int>& meshes, const ConvergenceOptions& opt);

std::string format_convergence(const std::vector<ConvergenceRow>& rows);

}  // namespace swe
