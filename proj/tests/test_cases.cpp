#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "swe/cases.hpp"

using namespace swe;

TEST_CASE("Riemann table") {
  const RiemannData t1 = riemann_data(1), t2 = riemann_data(2), t3 = riemann_data(3);
  CHECK(t1.left.h == 1.0);
  CHECK(t1.left.u == 0.0);
  CHECK(t1.left.psi == 1.0);
  CHECK(t1.right.h == 0.1);
  CHECK(t1.right.psi == 0.0);
  CHECK(t1.t_out == 3.0);
  CHECK(t2.left.h == 0.51);
  CHECK(t2.left.u == 2.5);
  CHECK(t2.right.h == 0.48);
  CHECK(t2.right.u == -5.8);
  CHECK(t2.t_out == 3.0);
  CHECK(t3.left.u == -3.0);
  CHECK(t3.right.u == 3.0);
  CHECK(t3.t_out == 2.0);
  CHECK_THROWS_AS(riemann_data(4), std::invalid_argument);

  const Case1D c = riemann_case(2, 60);
  CHECK(c.grid.cells == 60);
  CHECK(c.output_times.back() == 3.0);
  const RunState1D st = c.initial_state();
  CHECK(st.cells.front().h == 0.51);
  CHECK(st.cells.back().h == 0.48);
  CHECK(st.cells.front().hpsi == doctest::Approx(0.51));
}

TEST_CASE("bump bed") {
  CHECK(bump_bed(10.0) == doctest::Approx(0.2));
  CHECK(bump_bed(8.0) == doctest::Approx(0.0));
  CHECK(bump_bed(12.0) == doctest::Approx(0.0));
  CHECK(bump_bed(9.0) == doctest::Approx(0.15));
  CHECK(bump_bed(3.0) == 0.0);
  CHECK(bump_bed(20.0) == 0.0);
}

TEST_CASE("bump reference: flat bed limit") {
  const BumpSteadyReference ref(0.18, 0.33, [](double) { return 0.0; }, 0.0, 25.0);
  CHECK_FALSE(ref.transcritical());
  CHECK(std::isnan(ref.shock()));
  for (double x : {0.0, 7.0, 25.0}) CHECK(ref.depth(x) == doctest::Approx(0.33).epsilon(1e-12));
}

TEST_CASE("bump reference: transcritical flow") {
  constexpr double g = 9.81, q = 0.18;
  const BumpSteadyReference ref(q, 0.33, bump_bed, 0.0, 25.0);
  REQUIRE(ref.transcritical());
  const double hc = std::cbrt(q * q / g);
  CHECK(ref.critical_depth() == doctest::Approx(hc).epsilon(1e-12));
  CHECK(ref.crest() == doctest::Approx(10.0));
  CHECK(ref.depth(10.0) == doctest::Approx(hc).epsilon(1e-8));

  // Upstream specific energy equals the critical energy at the crest.
  const double e_crit = 1.5 * hc + 0.2;
  const double h0 = ref.depth(2.0);
  CHECK(q * q / (2 * g * h0 * h0) + h0 == doctest::Approx(e_crit).epsilon(1e-10));

  // Conjugate depths across the jump.
  const double xs = ref.shock();
  CHECK(xs > 10.0);
  CHECK(xs < 12.0);
  const double h1 = ref.depth(xs - 1e-9), h2 = ref.depth(xs + 1e-9);
  const double fr1 = q / (h1 * std::sqrt(g * h1));
  CHECK(fr1 > 1.0);
  CHECK(h2 / h1 == doctest::Approx(0.5 * (std::sqrt(1.0 + 8.0 * fr1 * fr1) - 1.0)).epsilon(1e-6));
  CHECK(ref.depth(20.0) == doctest::Approx(0.33).epsilon(1e-12));
}

TEST_CASE("bump cases") {
  const Case1D c = bump_case_1d(50);
  CHECK(c.output_times.back() == 200.0);
  const RunState1D st = c.initial_state();
  CHECK(st.cells[10].hu == doctest::Approx(0.18));
  const Case2D d = bump_case_2d(20, 2);
  CHECK(d.mesh.cell_count() == 80);
  CHECK(total_area(d.mesh) == doctest::Approx(25.0 * 1.25));
  CHECK(d.bcs[static_cast<int>(BoundarySide::West)].kind == Bc2D::Kind::InflowDischarge);
  CHECK(d.bcs[static_cast<int>(BoundarySide::East)].kind == Bc2D::Kind::OutflowDepth);
  CHECK(d.bcs[static_cast<int>(BoundarySide::North)].kind == Bc2D::Kind::Reflective);
}

TEST_CASE("manufactured solution values") {
  const State2D q = manufactured_exact(0.0, 0.0, 0.0);
  CHECK(q.h == doctest::Approx(0.8));
  CHECK(q.qx == doctest::Approx(0.16));
  CHECK(q.qy == doctest::Approx(0.16));
  CHECK(manufactured_bed(0.0, 0.0) == doctest::Approx(0.2));
}

TEST_CASE("manufactured forcing matches finite differences of the equations") {
  constexpr double g = 9.81, d = 1e-5;
  auto fx = [&](double x, double y, double t) {
    const State2D q = manufactured_exact(x, y, t);
    return Vec3{q.qx, q.qx * q.qx / q.h + 0.5 * g * q.h * q.h, q.qx * q.qy / q.h};
  };
  auto fy = [&](double x, double y, double t) {
    const State2D q = manufactured_exact(x, y, t);
    return Vec3{q.qy, q.qx * q.qy / q.h, q.qy * q.qy / q.h + 0.5 * g * q.h * q.h};
  };
  auto u = [](double x, double y, double t) {
    const State2D q = manufactured_exact(x, y, t);
    return Vec3{q.h, q.qx, q.qy};
  };
  const double pts[10][3] = {{0.1, 0.2, 0.0}, {0.5, 0.5, 0.5}, {0.9, 0.1, 1.0}, {0.3, 0.8, 0.2}, {0.05, 0.05, 0.7},
                             {0.7, 0.4, 0.9}, {0.25, 0.6, 0.1}, {0.95, 0.95, 0.3}, {0.4, 0.15, 0.6}, {0.6, 0.75, 0.4}};
  for (const auto& p : pts) {
    const double x = p[0], y = p[1], t = p[2];
    const Vec3 ut = (1.0 / (2 * d)) * (u(x, y, t + d) - u(x, y, t - d));
    const Vec3 dfx = (1.0 / (2 * d)) * (fx(x + d, y, t) - fx(x - d, y, t));
    const Vec3 dfy = (1.0 / (2 * d)) * (fy(x, y + d, t) - fy(x, y - d, t));
    const double bx = (manufactured_bed(x + d, y) - manufactured_bed(x - d, y)) / (2 * d);
    const double by = (manufactured_bed(x, y + d) - manufactured_bed(x, y - d)) / (2 * d);
    const double h = manufactured_exact(x, y, t).h;
    const Vec3 expected = ut + dfx + dfy + Vec3{0.0, g * h * bx, g * h * by};
    const Vec3 s = manufactured_forcing(x, y, t, g);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(s[k] - expected[k]) <= 1e-6);
  }
}

TEST_CASE("radial reference") {
  RadialOptions opt;
  opt.cells = 1000;
  const RadialProfile p0 = radial_reference(0.0, opt);
  CHECK(p0.depth(1.0) == 2.5);
  CHECK(p0.depth(10.0) == 1.0);
  const double exact_mass = 0.5 * (2.5 * 2.5 * 2.5 + 1.0 * (30.0 * 30.0 - 2.5 * 2.5));
  // The column edge falls inside a cell, so the discrete mass is only close.
  CHECK(std::abs(p0.mass() - exact_mass) <= 2.5 * 1.5 * p0.dr);

  const RadialProfile p1 = radial_reference(1.0, opt);
  CHECK(p1.time == 1.0);
  CHECK(std::abs(p1.mass() - p0.mass()) <= 1e-6 * p0.mass());
  // Water has left the column and the far field is still undisturbed.
  CHECK(p1.depth(0.5) < 2.5);
  CHECK(p1.depth(25.0) == doctest::Approx(1.0));

  // Refinement changes the profile only slightly.
  RadialOptions fine = opt;
  fine.cells = 2000;
  const RadialProfile p2 = radial_reference(1.0, fine);
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < p1.r.size(); ++i) {
    diff += std::abs(p1.h[i] - p2.depth(p1.r[i])) * p1.dr;
    norm += std::abs(p1.h[i]) * p1.dr;
  }
  CHECK(diff / norm < 5e-3);
}

TEST_CASE("circular dam and lake cases") {
  const Case2D c = circular_dam_case(20, 20);
  CHECK(total_area(c.mesh) == doctest::Approx(1600.0));
  const RunState2D st = c.initial_state();
  const auto in = locate_cell(c.mesh, 20.0, 20.5);
  const auto out = locate_cell(c.mesh, 5.0, 5.0);
  REQUIRE(in.has_value());
  REQUIRE(out.has_value());
  CHECK(st.cells[*in].h == 2.5);
  CHECK(st.cells[*out].h == 1.0);

  const Case1D l1 = lake_at_rest_1d(50, 0.5);
  const RunState1D s1 = l1.initial_state();
  const Bathymetry1D b1 = l1.bathymetry();
  for (int i = 0; i < static_cast<int>(s1.cells.size()); ++i) CHECK(s1.cells[i].h + b1.cell(i) == doctest::Approx(0.5));

  const Case2D l2 = lake_at_rest_2d(8, 1.0);
  const RunState2D s2 = l2.initial_state();
  const Bathymetry2D b2 = l2.bathymetry();
  for (std::size_t i = 0; i < s2.cells.size(); ++i) CHECK(s2.cells[i].h + b2.cell(i) == doctest::Approx(1.0));
}
