#include "swe/cases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swe {

RunState1D Case1D::initial_state() const {
  RunState1D s;
  s.left = left;
  s.right = right;
  s.cells.resize(grid.cells);
  for (int i = 0; i < grid.cells; ++i) s.cells[i] = to_conserved(initial(grid.center(i)));
  return s;
}

RunState2D Case2D::initial_state() const {
  RunState2D s;
  s.bcs = bcs;
  s.cells.resize(mesh.cell_count());
  for (std::size_t c = 0; c < s.cells.size(); ++c) s.cells[c] = initial(mesh.centroids[c].x, mesh.centroids[c].y, 0.0);
  return s;
}

RiemannData riemann_data(int k) {
  switch (k) {
    case 1:
      return {{1.0, 0.0, 1.0}, {0.1, 0.0, 0.0}, 3.0};
    case 2:
      return {{0.51, 2.5, 1.0}, {0.48, -5.8, 0.0}, 3.0};
    case 3:
      return {{1.0, -3.0, 1.0}, {1.0, 3.0, 0.0}, 2.0};
    default:
      throw std::invalid_argument("riemann case must be 1, 2 or 3");
  }
}

Case1D riemann_case(int k, int cells) {
  const RiemannData d = riemann_data(k);
  Case1D c;
  c.id = "riemann" + std::to_string(k);
  c.grid = Grid1D::make(0.0, 30.0, cells);
  c.bed = [](double) { return 0.0; };
  c.initial = [d](double x) { return x < 15.0 ? d.left : d.right; };
  c.left = Bc1D::transmissive();
  c.right = Bc1D::transmissive();
  c.cfl = 0.9;
  c.output_times = {d.t_out};
  return c;
}

double bump_bed(double x) {
  if (x > 8.0 && x < 12.0) return 0.2 - 0.05 * (x - 10.0) * (x - 10.0);
  return 0.0;
}

Case1D bump_case_1d(int cells) {
  Case1D c;
  c.id = "bump1d";
  c.grid = Grid1D::make(0.0, 25.0, cells);
  c.bed = bump_bed;
  c.initial = [](double) { return Primitive1D{0.33, 0.18 / 0.33, 0.0}; };
  c.left = Bc1D::inflow(0.18);
  c.right = Bc1D::outflow(0.33);
  c.cfl = 0.9;
  c.output_times = {200.0};
  return c;
}

Case2D bump_case_2d(int nx, int ny) {
  Case2D c;
  c.id = "bump2d";
  c.mesh = generate_rect_mesh(nx, ny, 25.0, 1.25);
  c.bed = [](double x, double) { return bump_bed(x); };
  c.initial = [](double, double, double) { return State2D{0.33, 0.18, 0.0}; };
  c.bcs = all_boundaries(Bc2D::reflective());
  c.bcs[static_cast<int>(BoundarySide::West)] = Bc2D::inflow(0.18);
  c.bcs[static_cast<int>(BoundarySide::East)] = Bc2D::outflow(0.33);
  c.output_times = {200.0};
  return c;
}

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BumpSteadyReference::BumpSteadyReference(double q, double h_out, std::function<double(double)> bed, double x_min,
                                         double x_max, double g)
    : q_(q), g_(g), bed_(std::move(bed)), x_min_(x_min), x_max_(x_max),
      shock_(std::numeric_limits<double>::quiet_NaN()) {
  if (!(q > 0.0) || !(h_out > 0.0)) throw std::invalid_argument("BumpSteadyReference: q and h_out must be positive");
  h_crit_ = std::cbrt(q * q / g);

  // Crest: coarse scan, then golden-section refinement.
  const int samples = 20000;
  double best = x_min;
  for (int i = 0; i <= samples; ++i) {
    const double x = x_min + (x_max - x_min) * i / samples;
    if (bed_(x) > bed_(best)) best = x;
  }
  const double step = (x_max - x_min) / samples;
  double a = std::max(x_min, best - step), b = std::min(x_max, best + step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < 100; ++k) {
    const double c1 = b - ratio * (b - a), c2 = a + ratio * (b - a);
    if (bed_(c1) < bed_(c2)) a = c1; else b = c2;
  }
  crest_ = 0.5 * (a + b);
  if (std::abs(bed_(best) - bed_(crest_)) < 1e-15 || bed_(best) > bed_(crest_)) crest_ = best;

  const double b_out = bed_(x_max);
  energy_down_ = q * q / (2.0 * g * h_out * h_out) + h_out + b_out;
  const double energy_crit = 1.5 * h_crit_ + bed_(crest_);
  if (h_out <= h_crit_) throw RegimeError("BumpSteadyReference: outflow depth is not subcritical");
  if (energy_down_ >= energy_crit) {
    energy_up_ = energy_down_;
    return;
  }
  transcritical_ = true;
  energy_up_ = energy_crit;

  auto conjugate_gap = [&](double x) {
    const double h1 = supercritical(energy_up_, x);
    const double fr2 = q_ * q_ / (g_ * h1 * h1 * h1);
    const double h2 = 0.5 * h1 * (std::sqrt(1.0 + 8.0 * fr2) - 1.0);
    return h2 - subcritical(energy_down_, x);
  };
  // The downstream branch exists only where the outflow energy clears the
  // critical energy of the local bed.
  auto has_down_branch = [&](double x) { return energy_down_ - bed_(x) >= 1.5 * h_crit_; };
  double lo = x_max;
  const int scan = 20000;
  for (int i = 0; i <= scan; ++i) {
    const double x = crest_ + (x_max - crest_) * i / scan;
    if (has_down_branch(x)) {
      lo = x;
      break;
    }
  }
  if (lo >= x_max || !(conjugate_gap(lo) > 0.0) || !(conjugate_gap(x_max) < 0.0)) {
    throw RegimeError("BumpSteadyReference: no admissible shock position");
  }
  shock_ = bisect(conjugate_gap, lo, x_max);
}

double BumpSteadyReference::subcritical(double energy, double x) const {
  const double head = energy - bed_(x);
  auto f = [&](double h) { return q_ * q_ / (2.0 * g_ * h * h) + h - head; };
  if (f(h_crit_) > 0.0) return h_crit_;  // energy below critical; clamp to the branch point
  return bisect(f, h_crit_, head);
}

double BumpSteadyReference::supercritical(double energy, double x) const {
  const double head = energy - bed_(x);
  auto f = [&](double h) { return q_ * q_ / (2.0 * g_ * h * h) + h - head; };
  if (f(h_crit_) > 0.0) return h_crit_;
  return bisect(f, 1e-6 * h_crit_, h_crit_);
}

double BumpSteadyReference::depth(double x) const {
  if (!transcritical_) return subcritical(energy_down_, x);
  if (x < crest_) return subcritical(energy_up_, x);
  if (x < shock_) return supercritical(energy_up_, x);
  return subcritical(energy_down_, x);
}

std::vector<double> BumpSteadyReference::sample(const std::vector<double>& x) const {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = depth(x[i]);
  return out;
}

Case2D circular_dam_case(int nx, int ny) {
  Case2D c;
  c.id = "dam2d";
  c.mesh = generate_rect_mesh(nx, ny, 40.0, 40.0);
  c.bed = [](double, double) { return 0.0; };
  c.initial = [](double x, double y, double) {
    const double r = std::hypot(x - 20.0, y - 20.0);
    return State2D{r <= 2.5 ? 2.5 : 1.0, 0.0, 0.0};
  };
  // Closed walls: the front reaches them around t = 4 s and mass stays exact.
  c.bcs = all_boundaries(Bc2D::reflective());
  for (int k = 0; k <= 8; ++k) c.output_times.push_back(0.5 * k);
  return c;
}

double RadialProfile::depth(double radius) const {
  if (r.empty()) throw std::logic_error("RadialProfile is empty");
  if (radius <= r.front()) return h.front();
  if (radius >= r.back()) return h.back();
  const double s = (radius - r.front()) / dr;
  const std::size_t i = std::min(static_cast<std::size_t>(s), r.size() - 2);
  const double w = s - static_cast<double>(i);
  return (1.0 - w) * h[i] + w * h[i + 1];
}

double RadialProfile::mass() const {
  double m = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) m += h[i] * r[i] * dr;
  return m;
}

RadialProfile radial_reference(double t, const RadialOptions& opt) {
  if (opt.cells < 2 || !(opt.r_max > 0.0)) throw std::invalid_argument("radial_reference: bad grid");
  const int n = opt.cells;
  const double dr = opt.r_max / n;
  const double g = opt.g;
  RadialProfile p;
  p.dr = dr;
  p.r.resize(n);
  p.h.resize(n);
  p.u.assign(n, 0.0);
  std::vector<double> hu(n, 0.0);
  for (int i = 0; i < n; ++i) {
    p.r[i] = (i + 0.5) * dr;
    p.h[i] = p.r[i] <= opt.r_dam ? opt.h_in : opt.h_out;
  }

  // Conservative cylindrical form: d(r h)/dt + d(r h u)/dr = 0 and
  // d(r h u)/dt + d(r (h u^2 + g h^2 / 2))/dr = g h^2 / 2.
  std::vector<Vec3> flux(n + 1);
  double time = 0.0;
  while (time < t) {
    double smax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = p.h[i] > kDryDepth ? hu[i] / p.h[i] : 0.0;
      smax = std::max(smax, std::abs(u) + std::sqrt(g * std::max(p.h[i], 0.0)));
    }
    double dt = opt.cfl * dr / smax;
    if (time + dt >= t) dt = t - time;
    auto prim = [&](int i) {
      return Primitive1D{p.h[i], p.h[i] > kDryDepth ? hu[i] / p.h[i] : 0.0, 0.0};
    };
    flux[0] = {0.0, 0.0, 0.0};  // r = 0 carries no flux
    for (int f = 1; f < n; ++f) flux[f] = godunov_exact_flux(prim(f - 1), prim(f), g);
    flux[n] = godunov_exact_flux(prim(n - 1), prim(n - 1), g);
    for (int i = 0; i < n; ++i) {
      const double rl = i * dr, rr = (i + 1) * dr;
      const double k = dt / (p.r[i] * dr);
      const double h_old = p.h[i];
      p.h[i] -= k * (rr * flux[i + 1][0] - rl * flux[i][0]);
      hu[i] += -k * (rr * flux[i + 1][1] - rl * flux[i][1]) + dt * 0.5 * g * h_old * h_old / p.r[i];
      if (p.h[i] <= kDryDepth) {
        p.h[i] = std::max(p.h[i], 0.0);
        hu[i] = 0.0;
      }
    }
    time += dt;
  }
  for (int i = 0; i < n; ++i) p.u[i] = p.h[i] > kDryDepth ? hu[i] / p.h[i] : 0.0;
  p.time = t;
  return p;
}

double manufactured_bed(double x, double y) { return 0.2 * std::exp(-8.0 * (x * x + y * y)); }

State2D manufactured_exact(double x, double y, double t) {
  using std::numbers::pi;
  const double h = std::exp(0.1 * t) - manufactured_bed(x, y);
  const double u = 0.2 + 0.1 * std::sin(pi * x);
  const double v = 0.2 + 0.1 * std::sin(pi * y);
  return {h, h * u, h * v};
}

Vec3 manufactured_forcing(double x, double y, double t, double) {
  // h + b = e^{0.1 t} is flat in space, so g h (h + b)_x cancels exactly and
  // g drops out of the forcing.
  using std::numbers::pi;
  const double e = std::exp(0.1 * t);
  const double b = manufactured_bed(x, y);
  const double h = e - b;
  const double ht = 0.1 * e;
  const double hx = 16.0 * x * b, hy = 16.0 * y * b;
  const double u = 0.2 + 0.1 * std::sin(pi * x), v = 0.2 + 0.1 * std::sin(pi * y);
  const double ux = 0.1 * pi * std::cos(pi * x), vy = 0.1 * pi * std::cos(pi * y);
  const double s1 = ht + hx * u + h * ux + hy * v + h * vy;
  const double s2 = ht * u + hx * u * u + 2.0 * h * u * ux + hy * u * v + h * u * vy;
  const double s3 = ht * v + hy * v * v + 2.0 * h * v * vy + hx * u * v + h * v * ux;
  return {s1, s2, s3};
}

Case2D manufactured_case(int n) {
  Case2D c;
  c.id = "manufactured";
  c.mesh = generate_rect_mesh(n, n, 1.0, 1.0);
  c.bed = manufactured_bed;
  c.initial = manufactured_exact;
  c.bcs = all_boundaries(Bc2D::dirichlet(manufactured_exact));
  c.forcing = [](double x, double y, double t) { return manufactured_forcing(x, y, t); };
  c.output_times = {1.0};
  return c;
}

Case1D lake_at_rest_1d(int cells, double h0) {
  Case1D c;
  c.id = "lake1d";
  c.grid = Grid1D::make(0.0, 25.0, cells);
  c.bed = bump_bed;
  c.initial = [h0](double x) { return Primitive1D{std::max(0.0, h0 - bump_bed(x)), 0.0, 0.0}; };
  c.left = Bc1D::reflective();
  c.right = Bc1D::reflective();
  c.output_times = {};
  return c;
}

Case2D lake_at_rest_2d(int n, double h0) {
  Case2D c;
  c.id = "lake2d";
  c.mesh = generate_rect_mesh(n, n, 1.0, 1.0);
  c.bed = manufactured_bed;
  c.initial = [h0](double x, double y, double) {
    return State2D{std::max(0.0, h0 - manufactured_bed(x, y)), 0.0, 0.0};
  };
  c.bcs = all_boundaries(Bc2D::reflective());
  return c;
}

}  // namespace swe
