#include "swe/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "swe/errors.hpp"
#include "swe/parallel.hpp"

namespace swe {

Vec3 edge_flux(const State2D& qi, const State2D& qj, const UnitNormal& n, double g, FluxMode mode,
               const SolverTolerances& tol) {
  const State2D ri = rotate(qi, n);
  const State2D rj = rotate(qj, n);
  Vec3 rotated;
  if (mode == FluxMode::GodunovExact) {
    // The tangential velocity is advected like a passive scalar.
    rotated = godunov_exact_flux({ri.h, ri.u(), ri.v()}, {rj.h, rj.u(), rj.v()}, g, tol);
  } else {
    const PressureSolver solver =
        mode == FluxMode::FvsExact ? PressureSolver::ExactNewton : PressureSolver::TwoRarefaction;
    const StarState s = pressure_star(ri.h, ri.qx, rj.h, rj.qx, g, solver, tol);
    const State2D& up = s.q_star >= 0.0 ? ri : rj;
    rotated = {s.q_star, s.q_star * up.u() + 0.5 * g * s.h_star * s.h_star, s.q_star * up.v()};
  }
  return rotate_back_flux(rotated, n);
}

Bathymetry2D Bathymetry2D::flat(const TriMesh& mesh) {
  return from_values(std::vector<double>(mesh.cell_count(), 0.0), std::vector<double>(mesh.edges.size(), 0.0));
}

Bathymetry2D Bathymetry2D::from_function(const TriMesh& mesh, const std::function<double(double, double)>& b) {
  std::vector<double> at_cells(mesh.cell_count());
  std::vector<double> at_edges(mesh.edges.size());
  for (std::size_t c = 0; c < at_cells.size(); ++c) at_cells[c] = b(mesh.centroids[c].x, mesh.centroids[c].y);
  for (std::size_t e = 0; e < at_edges.size(); ++e) at_edges[e] = b(mesh.edges[e].midpoint.x, mesh.edges[e].midpoint.y);
  return from_values(std::move(at_cells), std::move(at_edges));
}

Bathymetry2D Bathymetry2D::from_values(std::vector<double> at_cells, std::vector<double> at_edges) {
  for (double v : at_cells)
    if (!std::isfinite(v)) throw std::invalid_argument("Bathymetry2D: non-finite bed value");
  for (double v : at_edges)
    if (!std::isfinite(v)) throw std::invalid_argument("Bathymetry2D: non-finite bed value");
  Bathymetry2D b;
  b.cells_ = std::move(at_cells);
  b.edges_ = std::move(at_edges);
  return b;
}

namespace {

struct FaceValue {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
};

FaceValue to_face(const State2D& q) {
  const double h = std::max(q.h, 0.0);
  if (h <= kDryDepth) return {h, 0.0, 0.0};
  return {h, q.qx / h, q.qy / h};
}

State2D to_state(const FaceValue& f) { return {f.h, f.h * f.u, f.h * f.v}; }

Vec3 physical_normal_flux(const FaceValue& f, const UnitNormal& n, double g) {
  const double un = f.u * n.nx() + f.v * n.ny();
  const double qn = f.h * un;
  const double p = 0.5 * g * f.h * f.h;
  return {qn, qn * f.u + p * n.nx(), qn * f.v + p * n.ny()};
}

double barth_jespersen(double value, double lo, double hi, const std::array<double, 3>& deltas) {
  double phi = 1.0;
  for (double d : deltas) {
    if (d > 0.0) {
      phi = std::min(phi, std::min(1.0, (hi - value) / d));
    } else if (d < 0.0) {
      phi = std::min(phi, std::min(1.0, (lo - value) / d));
    }
  }
  return std::max(phi, 0.0);
}

constexpr double kNegativeDepthTolerance = 1e-12;

}  // namespace

struct Solver2D::Reconstruction {
  int order = 1;
  std::vector<std::array<FaceValue, 3>> face;
  std::vector<std::array<double, 3>> b_face;
  std::vector<char> sloped;
};

Solver2D::Solver2D(const TriMesh& mesh, Bathymetry2D bathymetry, Solver2DOptions options)
    : mesh_(mesh), bathymetry_(std::move(bathymetry)), options_(std::move(options)) {
  const std::size_t n = mesh_.cell_count();
  if (bathymetry_.cells().size() != n || bathymetry_.edges().size() != mesh_.edges.size()) {
    throw std::invalid_argument("Solver2D: bathymetry does not match mesh");
  }
  if (options_.order != 1 && options_.order != 2) throw std::invalid_argument("Solver2D: order must be 1 or 2");
  length_scale_.resize(n);
  lsq_.resize(n);
  stencil_offsets_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    double perimeter = 0.0;
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
    const Point& pc = mesh_.centroids[c];
    for (int k = 0; k < 3; ++k) {
      const CellEdge& ce = mesh_.cell_edges[c][k];
      perimeter += ce.length;
      Point d;
      if (ce.neighbor >= 0) {
        const Point& pn = mesh_.centroids[ce.neighbor];
        d = {pn.x - pc.x, pn.y - pc.y};
      } else {
        const Point& m = mesh_.edges[ce.edge].midpoint;
        d = {2.0 * (m.x - pc.x), 2.0 * (m.y - pc.y)};
      }
      stencil_offsets_[c][k] = d;
      a11 += d.x * d.x;
      a12 += d.x * d.y;
      a22 += d.y * d.y;
    }
    length_scale_[c] = mesh_.areas[c] / perimeter;
    const double det = a11 * a22 - a12 * a12;
    lsq_[c] = {a22 / det, -a12 / det, a11 / det};
  }
}

double Solver2D::compute_dt(const RunState2D& state, double cfl) const {
  double dt = 0.0;
  bool wet = false;
  for (std::size_t c = 0; c < state.cells.size(); ++c) {
    const State2D& q = state.cells[c];
    if (q.h <= kDryDepth) continue;
    const double speed = std::hypot(q.u(), q.v()) + celerity(q.h, options_.g);
    const double local = length_scale_[c] / speed;
    dt = wet ? std::min(dt, local) : local;
    wet = true;
  }
  if (!wet) throw std::runtime_error("compute_dt: all cells are dry");
  return cfl * dt;
}

State2D Solver2D::ghost_state(const State2D& inside, const Edge& edge, const BoundaryConditions2D& bcs, double x,
                              double y, double t) const {
  const Bc2D& bc = bcs[static_cast<int>(edge.side)];
  switch (bc.kind) {
    case Bc2D::Kind::Reflective: {
      const State2D r = rotate(inside, edge.normal);
      return rotate_back({r.h, -r.qx, r.qy}, edge.normal);
    }
    case Bc2D::Kind::Transmissive:
      return inside;
    case Bc2D::Kind::Dirichlet:
      return bc.field(x, y, t);
    case Bc2D::Kind::InflowDischarge:
      return rotate_back({inside.h, -bc.value, 0.0}, edge.normal);
    case Bc2D::Kind::OutflowDepth:
      return {bc.value, inside.qx, inside.qy};
  }
  return inside;
}

Solver2D::Reconstruction Solver2D::reconstruct(const RunState2D& state) const {
  const std::size_t n = mesh_.cell_count();
  if (state.cells.size() != n) throw std::invalid_argument("Solver2D: state size mismatch");
  Reconstruction r;
  r.order = options_.order;
  r.face.resize(n);
  r.b_face.resize(n);
  r.sloped.assign(n, 0);

  std::vector<FaceValue> w(n);
  for (std::size_t c = 0; c < n; ++c) w[c] = to_face(state.cells[c]);

  parallel_for(n, options_.threads, [&](std::size_t c) {
    const FaceValue& wc = w[c];
    const double bc = bathymetry_.cell(c);
    if (r.order == 1 || wc.h <= kDryDepth) {
      r.face[c] = {wc, wc, wc};
      for (int k = 0; k < 3; ++k) r.b_face[c][k] = r.order == 1 ? bc : bathymetry_.edge(mesh_.cell_edges[c][k].edge);
      if (r.order == 2) {
        for (int k = 0; k < 3; ++k) r.sloped[c] = r.sloped[c] || r.b_face[c][k] != bc;
      }
      return;
    }

    const double eta = wc.h + bc;
    std::array<double, 3> n_eta{}, n_u{}, n_v{};
    for (int k = 0; k < 3; ++k) {
      const CellEdge& ce = mesh_.cell_edges[c][k];
      if (ce.neighbor >= 0) {
        const FaceValue& wn = w[ce.neighbor];
        n_eta[k] = wn.h + bathymetry_.cell(ce.neighbor);
        n_u[k] = wn.u;
        n_v[k] = wn.v;
        continue;
      }
      const Edge& e = mesh_.edges[ce.edge];
      const Bc2D& bcnd = state.bcs[static_cast<int>(e.side)];
      const Point gp{mesh_.centroids[c].x + stencil_offsets_[c][k].x, mesh_.centroids[c].y + stencil_offsets_[c][k].y};
      if (bcnd.kind == Bc2D::Kind::Dirichlet) {
        const FaceValue gw = to_face(bcnd.field(gp.x, gp.y, state.time));
        n_eta[k] = gw.h + 2.0 * bathymetry_.edge(ce.edge) - bc;
        n_u[k] = gw.u;
        n_v[k] = gw.v;
      } else {
        const FaceValue gw = to_face(ghost_state(state.cells[c], e, state.bcs, gp.x, gp.y, state.time));
        n_eta[k] = bcnd.kind == Bc2D::Kind::OutflowDepth ? bcnd.value + bathymetry_.edge(ce.edge) : eta;
        n_u[k] = gw.u;
        n_v[k] = gw.v;
      }
    }

    const auto& inv = lsq_[c];
    const auto& d = stencil_offsets_[c];
    auto gradient = [&](double center, const std::array<double, 3>& nb) {
      double bx = 0.0, by = 0.0;
      for (int k = 0; k < 3; ++k) {
        bx += d[k].x * (nb[k] - center);
        by += d[k].y * (nb[k] - center);
      }
      return Point{inv[0] * bx + inv[1] * by, inv[1] * bx + inv[2] * by};
    };
    std::array<Point, 3> to_mid{};
    for (int k = 0; k < 3; ++k) {
      const Point& m = mesh_.edges[mesh_.cell_edges[c][k].edge].midpoint;
      to_mid[k] = {m.x - mesh_.centroids[c].x, m.y - mesh_.centroids[c].y};
    }
    auto limited_deltas = [&](double center, const std::array<double, 3>& nb) {
      const Point grad = gradient(center, nb);
      std::array<double, 3> delta{};
      for (int k = 0; k < 3; ++k) delta[k] = grad.x * to_mid[k].x + grad.y * to_mid[k].y;
      const double lo = std::min({center, nb[0], nb[1], nb[2]});
      const double hi = std::max({center, nb[0], nb[1], nb[2]});
      const double phi = barth_jespersen(center, lo, hi, delta);
      for (double& x : delta) x *= phi;
      return delta;
    };
    const auto d_eta = limited_deltas(eta, n_eta);
    const auto d_u = limited_deltas(wc.u, n_u);
    const auto d_v = limited_deltas(wc.v, n_v);
    bool sloped = false;
    for (int k = 0; k < 3; ++k) {
      const double be = bathymetry_.edge(mesh_.cell_edges[c][k].edge);
      r.b_face[c][k] = be;
      r.face[c][k] = {std::max(0.0, eta + d_eta[k] - be), wc.u + d_u[k], wc.v + d_v[k]};
      sloped = sloped || d_eta[k] != 0.0 || d_u[k] != 0.0 || d_v[k] != 0.0 || be != bc;
    }
    r.sloped[c] = sloped;
  });
  return r;
}

Vec3 Solver2D::cell_bed_source(const Reconstruction& r, std::size_t c, const std::vector<double>& h_star_left,
                               const std::vector<double>& h_star_right) const {
  const double g = options_.g;
  const double bc = bathymetry_.cell(c);
  double eta_mean = 0.0;
  for (int k = 0; k < 3; ++k) eta_mean += r.face[c][k].h + r.b_face[c][k];
  const double h_center = eta_mean / 3.0 - bc;
  double sx = 0.0, sy = 0.0;
  for (int k = 0; k < 3; ++k) {
    const CellEdge& ce = mesh_.cell_edges[c][k];
    const double hk = r.face[c][k].h;
    double term = -g * 0.5 * (hk + h_center) * (r.b_face[c][k] - bc);
    if (!h_star_left.empty()) {
      const Edge& e = mesh_.edges[ce.edge];
      const double hs = e.left == static_cast<int>(c) ? h_star_left[ce.edge] : h_star_right[ce.edge];
      term -= 0.5 * g * (hk * hk - hs * hs);
    }
    sx += ce.length * ce.normal.nx() * term;
    sy += ce.length * ce.normal.ny() * term;
  }
  return {0.0, sx / mesh_.areas[c], sy / mesh_.areas[c]};
}

void Solver2D::predict(Reconstruction& r, const RunState2D& state, double dt) const {
  const double g = options_.g;
  parallel_for(mesh_.cell_count(), options_.threads, [&](std::size_t c) {
    if (!r.sloped[c]) return;
    const double area = mesh_.areas[c];
    Vec3 div{0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
      const CellEdge& ce = mesh_.cell_edges[c][k];
      div = div + ce.length * physical_normal_flux(r.face[c][k], ce.normal, g);
    }
    Vec3 src = cell_bed_source(r, c, {}, {});
    if (options_.forcing) src = src + options_.forcing(mesh_.centroids[c].x, mesh_.centroids[c].y, state.time);
    const Vec3 delta = (-0.5 * dt / area) * div + (0.5 * dt) * src;
    for (int k = 0; k < 3; ++k) {
      const State2D q = to_state(r.face[c][k]);
      r.face[c][k] = to_face({q.h + delta[0], q.qx + delta[1], q.qy + delta[2]});
    }
  });
}

void Solver2D::edge_pass(const Reconstruction& r, const RunState2D& state, double t_flux, std::vector<Vec3>& flux,
                         std::vector<double>& h_star_left, std::vector<double>& h_star_right) const {
  const std::size_t ne = mesh_.edges.size();
  flux.assign(ne, Vec3{});
  h_star_left.assign(ne, 0.0);
  h_star_right.assign(ne, 0.0);
  auto slot = [&](int cell, std::size_t e) {
    const auto& ces = mesh_.cell_edges[cell];
    for (int k = 0; k < 3; ++k)
      if (ces[k].edge == static_cast<int>(e)) return k;
    return 0;
  };
  parallel_for(ne, options_.threads, [&](std::size_t e) {
    const Edge& edge = mesh_.edges[e];
    const int kl = slot(edge.left, e);
    const FaceValue& a = r.face[edge.left][kl];
    const double ba = r.b_face[edge.left][kl];
    FaceValue b;
    double bb = ba;
    if (edge.is_boundary()) {
      b = to_face(ghost_state(to_state(a), edge, state.bcs, edge.midpoint.x, edge.midpoint.y, t_flux));
    } else {
      const int kr = slot(edge.right, e);
      b = r.face[edge.right][kr];
      bb = r.b_face[edge.right][kr];
    }
    const double b_star = std::max(ba, bb);
    const double ha = std::max(0.0, a.h - (b_star - ba));
    const double hb = std::max(0.0, b.h - (b_star - bb));
    h_star_left[e] = ha;
    h_star_right[e] = hb;
    flux[e] = edge_flux({ha, ha * a.u, ha * a.v}, {hb, hb * b.u, hb * b.v}, edge.normal, options_.g, options_.flux,
                        options_.tol);
  });
}

double Solver2D::step(RunState2D& state, double dt) const {
  Reconstruction r = reconstruct(state);
  if (r.order == 2) predict(r, state, dt);
  const double t_mid = r.order == 2 ? state.time + 0.5 * dt : state.time;

  std::vector<Vec3> flux;
  std::vector<double> h_star_left, h_star_right;
  edge_pass(r, state, t_mid, flux, h_star_left, h_star_right);

  const std::size_t n = mesh_.cell_count();
  std::vector<State2D> next(n);
  parallel_for(n, options_.threads, [&](std::size_t c) {
    Vec3 sum{0.0, 0.0, 0.0};
    for (const CellEdge& ce : mesh_.cell_edges[c]) {
      const Edge& e = mesh_.edges[ce.edge];
      const Vec3& f = flux[ce.edge];
      sum = e.left == static_cast<int>(c) ? sum + e.length * f : sum - e.length * f;
    }
    Vec3 src = cell_bed_source(r, c, h_star_left, h_star_right);
    if (options_.forcing) src = src + options_.forcing(mesh_.centroids[c].x, mesh_.centroids[c].y, t_mid);
    const double lambda = dt / mesh_.areas[c];
    const State2D& q = state.cells[c];
    next[c] = {q.h - lambda * sum[0] + dt * src[0], q.qx - lambda * sum[1] + dt * src[1],
               q.qy - lambda * sum[2] + dt * src[2]};
  });

  double residual = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    State2D& q = next[c];
    if (q.h < -kNegativeDepthTolerance) throw NegativeDepthError(c, state.time, q.h);
    if (q.h <= kDryDepth) q = {std::max(q.h, 0.0), 0.0, 0.0};
    const State2D& old = state.cells[c];
    residual = std::max({residual, std::abs(q.h - old.h) / dt, std::abs(q.qx - old.qx) / dt,
                         std::abs(q.qy - old.qy) / dt});
  }
  state.cells = std::move(next);
  state.time += dt;
  ++state.steps;
  return residual;
}

std::vector<Vec3> Solver2D::bed_sources(const RunState2D& state) const {
  const Reconstruction r = reconstruct(state);
  std::vector<Vec3> flux;
  std::vector<double> h_star_left, h_star_right;
  edge_pass(r, state, state.time, flux, h_star_left, h_star_right);
  std::vector<Vec3> out(mesh_.cell_count());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = cell_bed_source(r, c, h_star_left, h_star_right);
  return out;
}

void run_until(const Solver2D& solver, RunState2D& state, double t_end, double cfl,
               const std::function<void(const RunState2D&, double, bool)>& on_step) {
  while (state.time < t_end) {
    double dt = solver.compute_dt(state, cfl);
    const bool last = state.time + dt >= t_end;
    if (last) dt = t_end - state.time;
    const double residual = solver.step(state, dt);
    if (last) state.time = t_end;
    if (on_step) on_step(state, residual, last);
  }
}

double total_mass(const RunState2D& state, const TriMesh& mesh) {
  double m = 0.0;
  for (std::size_t c = 0; c < state.cells.size(); ++c) m += state.cells[c].h * mesh.areas[c];
  return m;
}

}  // namespace swe
