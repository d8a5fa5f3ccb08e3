#include "swe/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "swe/cases.hpp"

namespace swe {

Norms error_norms(std::span<const double> numeric, std::span<const double> reference,
                  std::span<const double> weights) {
  if (numeric.size() != reference.size() || numeric.size() != weights.size()) {
    throw std::invalid_argument("error_norms: size mismatch");
  }
  double wsum = 0.0, s1 = 0.0, s2 = 0.0;
  Norms n;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double e = std::abs(numeric[i] - reference[i]);
    wsum += weights[i];
    s1 += e * weights[i];
    s2 += e * e * weights[i];
    n.linf = std::max(n.linf, e);
  }
  if (!(wsum > 0.0)) throw std::invalid_argument("error_norms: total weight must be positive");
  n.l1 = s1 / wsum;
  n.l2 = std::sqrt(s2 / wsum);
  return n;
}

double observed_order(double e1, double e2, double dx1, double dx2) { return std::log(e1 / e2) / std::log(dx1 / dx2); }

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& meshes, const ConvergenceOptions& opt) {
  if (meshes.size() < 3) throw std::invalid_argument("convergence_study: need at least three meshes");
  std::vector<ConvergenceRow> rows;
  for (int n : meshes) {
    const Case2D c = manufactured_case(n);
    Solver2DOptions so;
    so.order = opt.order;
    so.flux = opt.flux;
    so.g = c.g;
    so.threads = opt.threads;
    so.forcing = c.forcing;
    const Solver2D solver(c.mesh, c.bathymetry(), so);
    RunState2D state = c.initial_state();
    run_until(solver, state, opt.t_end, opt.cfl);

    std::vector<double> num(state.cells.size()), ref(state.cells.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
      num[i] = state.cells[i].qx;
      ref[i] = manufactured_exact(c.mesh.centroids[i].x, c.mesh.centroids[i].y, opt.t_end).qx;
    }
    ConvergenceRow row;
    row.n = n;
    row.dx = 1.0 / n;
    row.qx = error_norms(num, ref, c.mesh.areas);
    row.steps = state.steps;
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      row.order_l1 = observed_order(prev.qx.l1, row.qx.l1, prev.dx, row.dx);
      row.order_l2 = observed_order(prev.qx.l2, row.qx.l2, prev.dx, row.dx);
      row.order_linf = observed_order(prev.qx.linf, row.qx.linf, prev.dx, row.dx);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_convergence(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,dx,L1,L2,Linf,order_L1,order_L2,order_Linf\n";
  char buf[256];
  for (const ConvergenceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6g,%.6e,%.6e,%.6e,%.3f,%.3f,%.3f\n", r.n, r.dx, r.qx.l1, r.qx.l2, r.qx.linf,
                  r.order_l1, r.order_l2, r.order_linf);
    out += buf;
  }
  return out;
}

}  // namespace swe
