#include "swe/core.hpp"

#include <stdexcept>
#include <string>

namespace swe {

Primitive1D to_primitive(const State1D& q) { return {q.h, q.velocity(), q.scalar()}; }

State1D to_conserved(const Primitive1D& w) { return {w.h, w.h * w.u, w.h * w.psi}; }

UnitNormal UnitNormal::from_angle(double theta) { return UnitNormal(std::cos(theta), std::sin(theta)); }

UnitNormal UnitNormal::from_components(double nx, double ny) {
  if (std::abs(nx * nx + ny * ny - 1.0) > 1e-14) {
    throw std::invalid_argument("UnitNormal: |n|^2 = " + std::to_string(nx * nx + ny * ny) + " is not 1");
  }
  return UnitNormal(nx, ny);
}

UnitNormal UnitNormal::normalized(double dx, double dy) {
  const double len = std::hypot(dx, dy);
  if (!(len > 0.0)) throw std::invalid_argument("UnitNormal: zero-length direction");
  return UnitNormal(dx / len, dy / len);
}

double celerity(double h, double g) {
  if (h < 0.0) throw std::domain_error("celerity: negative depth " + std::to_string(h));
  return std::sqrt(g * h);
}

SplitFlux split_flux_1d(const State1D& q, double g) {
  const double u = q.velocity();
  const double psi = q.scalar();
  return {{0.0, q.hu * u, q.hu * psi}, {q.hu, 0.5 * g * q.h * q.h, 0.0}};
}

Vec3 flux_1d(const State1D& q, double g) {
  const SplitFlux s = split_flux_1d(q, g);
  return s.advection + s.pressure;
}

SplitFlux2D split_flux_2d(const State2D& q, double g) {
  const double u = q.u();
  const double v = q.v();
  const double p = 0.5 * g * q.h * q.h;
  return {{{0.0, q.qx * u, q.qy * u}, {q.qx, p, 0.0}},
          {{0.0, q.qx * v, q.qy * v}, {q.qy, 0.0, p}}};
}

Flux2D flux_2d(const State2D& q, double g) {
  const SplitFlux2D s = split_flux_2d(q, g);
  return {s.x.advection + s.x.pressure, s.y.advection + s.y.pressure};
}

Vec3 normal_flux(const State2D& q, const UnitNormal& n, double g) {
  const Flux2D f = flux_2d(q, g);
  return n.nx() * f.x + n.ny() * f.y;
}

State2D rotate(const State2D& q, const UnitNormal& n) {
  return {q.h, n.nx() * q.qx + n.ny() * q.qy, -n.ny() * q.qx + n.nx() * q.qy};
}

State2D rotate_back(const State2D& q, const UnitNormal& n) {
  return {q.h, n.nx() * q.qx - n.ny() * q.qy, n.ny() * q.qx + n.nx() * q.qy};
}

Vec3 rotate_back_flux(const Vec3& f, const UnitNormal& n) {
  return {f[0], n.nx() * f[1] - n.ny() * f[2], n.ny() * f[1] + n.nx() * f[2]};
}

}  // namespace swe
