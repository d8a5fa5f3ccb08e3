#include "swe/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "swe/errors.hpp"
#include "swe/parallel.hpp"

namespace swe {

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

Vec3 physical_flux(const Primitive1D& w, double g) {
  const double q = w.h * w.u;
  return {q, q * w.u + 0.5 * g * w.h * w.h, q * w.psi};
}

Primitive1D to_primitive_clamped(const State1D& q) {
  const double h = std::max(q.h, 0.0);
  if (h <= kDryDepth) return {h, 0.0, 0.0};
  return {h, q.hu / h, q.hpsi / h};
}

constexpr double kNegativeDepthTolerance = 1e-12;

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, int cells) {
  if (cells < 2) throw std::invalid_argument("Grid1D: need at least 2 cells");
  if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
  return {x_min, x_max, cells};
}

Bathymetry1D Bathymetry1D::flat(const Grid1D& grid) {
  return from_values(std::vector<double>(grid.cells, 0.0), std::vector<double>(grid.cells + 1, 0.0));
}

Bathymetry1D Bathymetry1D::from_function(const Grid1D& grid, const std::function<double(double)>& b) {
  std::vector<double> at_cells(grid.cells);
  std::vector<double> at_faces(grid.cells + 1);
  for (int i = 0; i < grid.cells; ++i) at_cells[i] = b(grid.center(i));
  for (int i = 0; i <= grid.cells; ++i) at_faces[i] = b(grid.face(i));
  return from_values(std::move(at_cells), std::move(at_faces));
}

Bathymetry1D Bathymetry1D::from_values(std::vector<double> at_cells, std::vector<double> at_faces) {
  if (at_faces.size() != at_cells.size() + 1) {
    throw std::invalid_argument("Bathymetry1D: need cells + 1 interface values");
  }
  for (double v : at_cells)
    if (!std::isfinite(v)) throw std::invalid_argument("Bathymetry1D: non-finite bed value");
  for (double v : at_faces)
    if (!std::isfinite(v)) throw std::invalid_argument("Bathymetry1D: non-finite bed value");
  Bathymetry1D b;
  b.cells_ = std::move(at_cells);
  b.faces_ = std::move(at_faces);
  return b;
}

Bc1D Bc1D::outflow(double h_fixed) {
  if (!(h_fixed > 0.0) || !std::isfinite(h_fixed)) throw std::invalid_argument("Bc1D: outflow depth must be > 0");
  return {Kind::SubcriticalOutflow, h_fixed};
}

namespace {

State1D ghost_value(const State1D& mirror, const Bc1D& bc) {
  switch (bc.kind) {
    case Bc1D::Kind::Transmissive:
      return mirror;
    case Bc1D::Kind::Reflective:
      return {mirror.h, -mirror.hu, mirror.hpsi};
    case Bc1D::Kind::SubcriticalInflow:
      return {mirror.h, bc.value, mirror.hpsi};
    case Bc1D::Kind::SubcriticalOutflow:
      return {bc.value, mirror.hu, bc.value * mirror.scalar()};
  }
  return mirror;
}

}  // namespace

void apply_bc(std::span<State1D> padded, const Bc1D& left, const Bc1D& right) {
  const std::size_t n = padded.size();
  if (n < 2 * kGhostLayers + 2) throw std::invalid_argument("apply_bc: too few cells");
  for (int k = 0; k < kGhostLayers; ++k) {
    padded[kGhostLayers - 1 - k] = ghost_value(padded[kGhostLayers + k], left);
    padded[n - kGhostLayers + k] = ghost_value(padded[n - kGhostLayers - 1 - k], right);
  }
}

HydrostaticPair hydrostatic_reconstruction(double h_minus, double b_minus, double h_plus, double b_plus) {
  const double b_star = std::max(b_minus, b_plus);
  return {std::max(0.0, h_minus - (b_star - b_minus)), std::max(0.0, h_plus - (b_star - b_plus)), b_star};
}

Vec3 bed_source(double h_left_face, double b_left_face, double h_star_left, double h_right_face,
                double b_right_face, double h_star_right, double g, double dx) {
  const double centered = -g * 0.5 * (h_left_face + h_right_face) * (b_right_face - b_left_face);
  const double correction = 0.5 * g * (h_right_face * h_right_face - h_star_right * h_star_right) -
                            0.5 * g * (h_left_face * h_left_face - h_star_left * h_star_left);
  return {0.0, (centered - correction) / dx, 0.0};
}

struct Solver1D::Faces {
  std::vector<State1D> cells;  // padded, n-level
  std::vector<Primitive1D> left;
  std::vector<Primitive1D> right;
  std::vector<double> b_left;
  std::vector<double> b_right;
  std::vector<char> sloped;
};

Solver1D::Solver1D(Grid1D grid, Bathymetry1D bathymetry, Solver1DOptions options)
    : grid_(grid), bathymetry_(std::move(bathymetry)), options_(options) {
  if (static_cast<int>(bathymetry_.cells().size()) != grid_.cells) {
    throw std::invalid_argument("Solver1D: bathymetry size does not match grid");
  }
  if (options_.order != 1 && options_.order != 2) throw std::invalid_argument("Solver1D: order must be 1 or 2");
}

double Solver1D::compute_dt(const RunState1D& state, double cfl) const {
  double max_speed = 0.0;
  bool wet = false;
  for (const State1D& q : state.cells) {
    if (q.h <= kDryDepth) continue;
    wet = true;
    max_speed = std::max(max_speed, std::abs(q.velocity()) + celerity(q.h, options_.g));
  }
  if (!wet) throw std::runtime_error("compute_dt: all cells are dry");
  return cfl * grid_.dx() / max_speed;
}

Solver1D::Faces Solver1D::reconstruct(const RunState1D& state, int order) const {
  const int m = grid_.cells;
  const int n = m + 2 * kGhostLayers;
  if (static_cast<int>(state.cells.size()) != m) throw std::invalid_argument("Solver1D: state size mismatch");
  Faces f;
  f.cells.resize(n);
  std::copy(state.cells.begin(), state.cells.end(), f.cells.begin() + kGhostLayers);
  apply_bc(f.cells, state.left, state.right);

  std::vector<double> b_cell(n);
  f.b_left.resize(n);
  f.b_right.resize(n);
  for (int j = 0; j < n; ++j) {
    const int i = std::clamp(j - kGhostLayers, 0, m - 1);
    if (order == 1) {
      b_cell[j] = bathymetry_.cell(i);
      f.b_left[j] = f.b_right[j] = b_cell[j];
    } else if (j < kGhostLayers || j >= m + kGhostLayers) {
      b_cell[j] = bathymetry_.face(j < kGhostLayers ? 0 : m);
      f.b_left[j] = f.b_right[j] = b_cell[j];
    } else {
      b_cell[j] = bathymetry_.cell(i);
      f.b_left[j] = bathymetry_.face(i);
      f.b_right[j] = bathymetry_.face(i + 1);
    }
  }

  std::vector<Primitive1D> w(n);
  for (int j = 0; j < n; ++j) w[j] = to_primitive_clamped(f.cells[j]);
  f.left = w;
  f.right = w;
  f.sloped.assign(n, 0);
  if (order == 1) return f;

  for (int j = 1; j < n - 1; ++j) {
    if (w[j].h <= kDryDepth) continue;
    const double eta_m = w[j - 1].h + b_cell[j - 1];
    const double eta = w[j].h + b_cell[j];
    const double eta_p = w[j + 1].h + b_cell[j + 1];
    const double s_eta = minmod(eta - eta_m, eta_p - eta);
    const double s_u = minmod(w[j].u - w[j - 1].u, w[j + 1].u - w[j].u);
    const double s_psi = minmod(w[j].psi - w[j - 1].psi, w[j + 1].psi - w[j].psi);
    f.left[j] = {std::max(0.0, eta - 0.5 * s_eta - f.b_left[j]), w[j].u - 0.5 * s_u, w[j].psi - 0.5 * s_psi};
    f.right[j] = {std::max(0.0, eta + 0.5 * s_eta - f.b_right[j]), w[j].u + 0.5 * s_u, w[j].psi + 0.5 * s_psi};
    f.sloped[j] = s_eta != 0.0 || s_u != 0.0 || s_psi != 0.0 || f.b_left[j] != b_cell[j] || f.b_right[j] != b_cell[j];
  }
  return f;
}

namespace {

State1D operator+(const State1D& q, const Vec3& d) { return {q.h + d[0], q.hu + d[1], q.hpsi + d[2]}; }

}  // namespace

void Solver1D::predict(Faces& f, double dt) const {
  const double g = options_.g;
  const double dx = grid_.dx();
  const std::size_t n = f.cells.size();
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (!f.sloped[j]) continue;
    const Primitive1D& wl = f.left[j];
    const Primitive1D& wr = f.right[j];
    const Vec3 df = physical_flux(wr, g) - physical_flux(wl, g);
    const double src = -g * 0.5 * (wl.h + wr.h) * (f.b_right[j] - f.b_left[j]) / dx;
    const Vec3 delta = (-0.5 * dt / dx) * df + Vec3{0.0, 0.5 * dt * src, 0.0};
    f.left[j] = to_primitive_clamped(to_conserved(wl) + delta);
    f.right[j] = to_primitive_clamped(to_conserved(wr) + delta);
  }
}

double Solver1D::advance(RunState1D& state, const Faces& f, double dt) const {
  const int m = grid_.cells;
  const double g = options_.g;
  const double dx = grid_.dx();
  // Interface k separates padded cells k + 1 and k + 2, i.e. cells k - 1 and k.
  std::vector<Vec3> flux(m + 1);
  std::vector<double> h_star_minus(m + 1);
  std::vector<double> h_star_plus(m + 1);
  parallel_for(static_cast<std::size_t>(m + 1), options_.threads, [&](std::size_t k) {
    const std::size_t jl = k + kGhostLayers - 1;
    const std::size_t jr = jl + 1;
    const Primitive1D& a = f.right[jl];
    const Primitive1D& b = f.left[jr];
    const HydrostaticPair hp = hydrostatic_reconstruction(a.h, f.b_right[jl], b.h, f.b_left[jr]);
    h_star_minus[k] = hp.h_minus;
    h_star_plus[k] = hp.h_plus;
    flux[k] = interface_flux({hp.h_minus, a.u, a.psi}, {hp.h_plus, b.u, b.psi}, g, options_.flux, options_.tol);
  });

  double residual = 0.0;
  const double lambda = dt / dx;
  for (int i = 0; i < m; ++i) {
    const std::size_t j = i + kGhostLayers;
    const Vec3 s = bed_source(f.left[j].h, f.b_left[j], h_star_plus[i], f.right[j].h, f.b_right[j],
                              h_star_minus[i + 1], g, dx);
    const State1D& q = state.cells[i];
    State1D next{q.h - lambda * (flux[i + 1][0] - flux[i][0]) + dt * s[0],
                 q.hu - lambda * (flux[i + 1][1] - flux[i][1]) + dt * s[1],
                 q.hpsi - lambda * (flux[i + 1][2] - flux[i][2]) + dt * s[2]};
    if (next.h < -kNegativeDepthTolerance) throw NegativeDepthError(i, state.time, next.h);
    if (next.h <= kDryDepth) next = {std::max(next.h, 0.0), 0.0, 0.0};
    residual = std::max({residual, std::abs(next.h - q.h) / dt, std::abs(next.hu - q.hu) / dt,
                         std::abs(next.hpsi - q.hpsi) / dt});
    state.cells[i] = next;
  }
  state.time += dt;
  ++state.steps;
  return residual;
}

double Solver1D::step_first_order(RunState1D& state, double dt) const {
  return advance(state, reconstruct(state, 1), dt);
}

double Solver1D::step_second_order(RunState1D& state, double dt) const {
  Faces f = reconstruct(state, 2);
  predict(f, dt);
  return advance(state, f, dt);
}

double Solver1D::step(RunState1D& state, double dt) const {
  return options_.order == 2 ? step_second_order(state, dt) : step_first_order(state, dt);
}

std::vector<Vec3> Solver1D::bed_sources(const RunState1D& state, int order) const {
  const Faces f = reconstruct(state, order);
  const int m = grid_.cells;
  std::vector<double> h_star_minus(m + 1);
  std::vector<double> h_star_plus(m + 1);
  for (int k = 0; k <= m; ++k) {
    const std::size_t jl = k + kGhostLayers - 1;
    const HydrostaticPair hp =
        hydrostatic_reconstruction(f.right[jl].h, f.b_right[jl], f.left[jl + 1].h, f.b_left[jl + 1]);
    h_star_minus[k] = hp.h_minus;
    h_star_plus[k] = hp.h_plus;
  }
  std::vector<Vec3> out(m);
  for (int i = 0; i < m; ++i) {
    const std::size_t j = i + kGhostLayers;
    out[i] = bed_source(f.left[j].h, f.b_left[j], h_star_plus[i], f.right[j].h, f.b_right[j], h_star_minus[i + 1],
                        options_.g, grid_.dx());
  }
  return out;
}

void run_until(const Solver1D& solver, RunState1D& state, double t_end, double cfl,
               const std::function<void(const RunState1D&, double, bool)>& on_step) {
  while (state.time < t_end) {
    double dt = solver.compute_dt(state, cfl);
    const bool last = state.time + dt >= t_end;
    if (last) dt = t_end - state.time;
    const double residual = solver.step(state, dt);
    if (last) state.time = t_end;
    if (on_step) on_step(state, residual, last);
  }
}

double total_mass(const RunState1D& state, const Grid1D& grid) {
  double m = 0.0;
  for (const State1D& q : state.cells) m += q.h;
  return m * grid.dx();
}

}  // namespace swe
