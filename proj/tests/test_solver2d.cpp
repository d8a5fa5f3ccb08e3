#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "swe/errors.hpp"
#include "swe/solver2d.hpp"

using namespace swe;

namespace {

constexpr double kG = 9.81;
constexpr FluxMode kModes[] = {FluxMode::FvsTwoRarefaction, FluxMode::FvsExact, FluxMode::GodunovExact};

// Physical normal flux from first principles.
Vec3 oracle_normal_flux(const State2D& q, double nx, double ny, double g) {
  const double u = q.qx / q.h, v = q.qy / q.h;
  const double un = u * nx + v * ny;
  const double p = 0.5 * g * q.h * q.h;
  return {q.h * un, q.qx * un + p * nx, q.qy * un + p * ny};
}

double max_abs(const Vec3& a) { return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])}); }

int mirror_cell(const TriMesh& m, std::size_t c, bool swap_xy, double lx, double ly) {
  const Point p = m.centroids[c];
  const auto found = swap_xy ? locate_cell(m, p.y, p.x) : locate_cell(m, lx - p.x, ly - p.y);
  REQUIRE(found.has_value());
  return *found;
}

}  // namespace

TEST_CASE("edge flux along x reduces to the 1D interface flux") {
  const State2D l{1.0, 0.4, 0.3}, r{0.6, -0.1, 0.2};
  const auto n = UnitNormal::from_angle(0.0);
  for (FluxMode mode : kModes) {
    const Vec3 f2 = edge_flux(l, r, n, kG, mode);
    // The tangential velocity plays the role of the passive scalar.
    const Vec3 f1 = interface_flux({l.h, l.qx / l.h, l.qy / l.h}, {r.h, r.qx / r.h, r.qy / r.h}, kG, mode);
    CHECK(std::abs(f2[0] - f1[0]) <= 1e-13);
    CHECK(std::abs(f2[1] - f1[1]) <= 1e-13);
    CHECK(std::abs(f2[2] - f1[2]) <= 1e-13);
  }
}

TEST_CASE("edge flux consistency and antisymmetry") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> hd(0.1, 3.0), vd(-2.0, 2.0), ad(-M_PI, M_PI);
  for (int k = 0; k < 300; ++k) {
    const double h = hd(rng);
    const State2D q{h, h * vd(rng), h * vd(rng)};
    const State2D p{hd(rng), vd(rng), vd(rng)};
    const auto n = UnitNormal::from_angle(ad(rng));
    for (FluxMode mode : kModes) {
      const Vec3 f = edge_flux(q, q, n, kG, mode);
      const Vec3 ref = oracle_normal_flux(q, n.nx(), n.ny(), kG);
      CHECK(max_abs(f - ref) <= 1e-13 * std::max(1.0, max_abs(ref)));
      // F(qi, qj, n) = -F(qj, qi, -n).
      const Vec3 a = edge_flux(q, p, n, kG, mode);
      const Vec3 b = edge_flux(p, q, n.flipped(), kG, mode);
      CHECK(max_abs(a + b) <= 1e-12 * std::max(1.0, max_abs(a)));
    }
  }
}

TEST_CASE("edge flux is frame invariant") {
  // Rotating both states and the normal by the same angle rotates the flux.
  const State2D l{1.2, 0.5, -0.2}, r{0.7, -0.3, 0.4};
  const double theta = 0.3, phi = 1.1;
  const double c = std::cos(phi), s = std::sin(phi);
  auto rot = [&](const State2D& q) { return State2D{q.h, c * q.qx - s * q.qy, s * q.qx + c * q.qy}; };
  for (FluxMode mode : kModes) {
    const Vec3 f = edge_flux(l, r, UnitNormal::from_angle(theta), kG, mode);
    const Vec3 g = edge_flux(rot(l), rot(r), UnitNormal::from_angle(theta + phi), kG, mode);
    CHECK(std::abs(g[0] - f[0]) <= 1e-12);
    CHECK(std::abs(g[1] - (c * f[1] - s * f[2])) <= 1e-12);
    CHECK(std::abs(g[2] - (s * f[1] + c * f[2])) <= 1e-12);
  }
}

TEST_CASE("time step formula") {
  const TriMesh m = generate_rect_mesh(4, 4, 1.0, 1.0);
  Solver2D solver(m, Bathymetry2D::flat(m), {});
  RunState2D st;
  st.cells.assign(m.cell_count(), State2D{1.0, 0.5, 0.0});
  double expected = 1e300;
  for (std::size_t i = 0; i < m.cell_count(); ++i) {
    double perimeter = 0.0;
    for (const CellEdge& ce : m.cell_edges[i]) perimeter += ce.length;
    const double r = m.areas[i] / perimeter;
    CHECK(solver.length_scale(i) == doctest::Approx(r).epsilon(1e-14));
    expected = std::min(expected, 0.45 * r / (0.5 + std::sqrt(kG)));
  }
  CHECK(solver.compute_dt(st, 0.45) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("uniform flow on a flat bed is preserved") {
  const TriMesh m = generate_rect_mesh(6, 5, 2.0, 1.0);
  for (FluxMode mode : kModes) {
    for (int order : {1, 2}) {
      Solver2DOptions opt;
      opt.flux = mode;
      opt.order = order;
      Solver2D solver(m, Bathymetry2D::flat(m), opt);
      RunState2D st;
      st.cells.assign(m.cell_count(), State2D{0.8, 0.3, -0.2});
      st.bcs = all_boundaries(Bc2D::transmissive());
      for (int k = 0; k < 10; ++k) solver.step(st, solver.compute_dt(st, 0.45));
      for (const State2D& q : st.cells) {
        CHECK(std::abs(q.h - 0.8) <= 1e-13);
        CHECK(std::abs(q.qx - 0.3) <= 1e-13);
        CHECK(std::abs(q.qy + 0.2) <= 1e-13);
      }
    }
  }
}

TEST_CASE("lake at rest over a smooth bed") {
  const TriMesh m = generate_rect_mesh(12, 12, 1.0, 1.0);
  const auto bed = [](double x, double y) { return 0.5 * std::exp(-20.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5))); };
  const Bathymetry2D b = Bathymetry2D::from_function(m, bed);
  for (FluxMode mode : kModes) {
    for (int order : {1, 2}) {
      Solver2DOptions opt;
      opt.flux = mode;
      opt.order = order;
      Solver2D solver(m, b, opt);
      RunState2D st;
      for (std::size_t i = 0; i < m.cell_count(); ++i) st.cells.push_back({1.0 - b.cell(i), 0.0, 0.0});
      for (int k = 0; k < 50; ++k) solver.step(st, solver.compute_dt(st, 0.45));
      double err = 0.0;
      for (std::size_t i = 0; i < m.cell_count(); ++i) {
        err = std::max({err, std::abs(st.cells[i].h + b.cell(i) - 1.0), std::abs(st.cells[i].qx),
                        std::abs(st.cells[i].qy)});
      }
      CHECK(err <= 1e-12);
    }
  }
}

TEST_CASE("single tilted cell at rest") {
  const TriMesh m = TriMesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  const Bathymetry2D b = Bathymetry2D::from_function(m, [](double x, double y) { return 0.1 * x + 0.05 * y; });
  Solver2D solver(m, b, {});
  RunState2D st;
  st.cells = {{1.0 - b.cell(0), 0.0, 0.0}};
  solver.step(st, 1e-3);
  CHECK(std::abs(st.cells[0].h + b.cell(0) - 1.0) <= 1e-13);
  CHECK(std::abs(st.cells[0].qx) <= 1e-13);
  CHECK(std::abs(st.cells[0].qy) <= 1e-13);
}

TEST_CASE("mass is conserved with reflective walls") {
  const TriMesh m = generate_rect_mesh(10, 10, 1.0, 1.0);
  const Bathymetry2D b = Bathymetry2D::from_function(m, [](double x, double y) { return 0.2 * x * y; });
  for (int order : {1, 2}) {
    Solver2DOptions opt;
    opt.order = order;
    Solver2D solver(m, b, opt);
    RunState2D st;
    for (std::size_t i = 0; i < m.cell_count(); ++i) {
      const Point p = m.centroids[i];
      st.cells.push_back({(p.x < 0.4 ? 1.0 : 0.5) - b.cell(i), 0.0, 0.0});
    }
    const double m0 = total_mass(st, m);
    for (int k = 0; k < 1000; ++k) solver.step(st, solver.compute_dt(st, 0.45));
    CHECK(std::abs(total_mass(st, m) - m0) <= 1e-11 * m0);
  }
}

TEST_CASE("square dam break keeps the mesh symmetries") {
  const TriMesh m = generate_rect_mesh(16, 16, 2.0, 2.0);
  Solver2D solver(m, Bathymetry2D::flat(m), {});
  RunState2D st;
  for (std::size_t i = 0; i < m.cell_count(); ++i) {
    const Point p = m.centroids[i];
    st.cells.push_back({std::abs(p.x - 1.0) < 0.5 && std::abs(p.y - 1.0) < 0.5 ? 2.0 : 1.0, 0.0, 0.0});
  }
  run_until(solver, st, 0.1, 0.45);
  double swap_err = 0.0, rot_err = 0.0;
  for (std::size_t i = 0; i < m.cell_count(); ++i) {
    const State2D& q = st.cells[i];
    const State2D& s = st.cells[mirror_cell(m, i, true, 2.0, 2.0)];
    swap_err = std::max({swap_err, std::abs(q.h - s.h), std::abs(q.qx - s.qy), std::abs(q.qy - s.qx)});
    const State2D& r = st.cells[mirror_cell(m, i, false, 2.0, 2.0)];
    rot_err = std::max({rot_err, std::abs(q.h - r.h), std::abs(q.qx + r.qx), std::abs(q.qy + r.qy)});
  }
  CHECK(swap_err <= 1e-10);
  CHECK(rot_err <= 1e-10);
}

TEST_CASE("thread count does not change results") {
  const TriMesh m = generate_rect_mesh(12, 8, 2.0, 1.0);
  auto run = [&](int threads) {
    Solver2DOptions opt;
    opt.order = 2;
    opt.threads = threads;
    Solver2D solver(m, Bathymetry2D::flat(m), opt);
    RunState2D st;
    for (std::size_t i = 0; i < m.cell_count(); ++i) st.cells.push_back({m.centroids[i].x < 1.0 ? 1.0 : 0.3, 0.0, 0.0});
    for (int k = 0; k < 20; ++k) solver.step(st, solver.compute_dt(st, 0.45));
    return st.cells;
  };
  const auto a = run(1), b = run(4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].h == b[i].h);
    CHECK(a[i].qx == b[i].qx);
    CHECK(a[i].qy == b[i].qy);
  }
}

TEST_CASE("run_until lands on the end time") {
  const TriMesh m = generate_rect_mesh(4, 4, 1.0, 1.0);
  Solver2D solver(m, Bathymetry2D::flat(m), {});
  RunState2D st;
  st.cells.assign(m.cell_count(), State2D{1.0, 0.0, 0.0});
  int capped = 0;
  run_until(solver, st, 0.0123, 0.45, [&](const RunState2D&, double, bool c) { capped += c ? 1 : 0; });
  CHECK(st.time == 0.0123);
  CHECK(capped == 1);
}

TEST_CASE("negative depth is reported") {
  const TriMesh m = generate_rect_mesh(2, 2, 1.0, 1.0);
  Solver2D solver(m, Bathymetry2D::flat(m), {});
  RunState2D st;
  st.cells.assign(m.cell_count(), State2D{0.01, 0.0, 0.0});
  st.cells[0] = {0.01, 5.0, 5.0};
  CHECK_THROWS_AS(solver.step(st, 1.0), NegativeDepthError);
}
