#pragma once

#include <array>
#include <cmath>

namespace swe {

/// Three-component vector used for fluxes, sources and conserved increments.
using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Depth below which a state is treated as dry (zero velocity, zero flux).
inline constexpr double kDryDepth = 1e-10;

struct PhysConstants {
  double g = 9.81;
};

/// Conserved 1D state: depth, discharge and depth-weighted passive scalar.
struct State1D {
  double h = 0.0;
  double hu = 0.0;
  double hpsi = 0.0;

  double velocity() const { return h > kDryDepth ? hu / h : 0.0; }
  double scalar() const { return h > kDryDepth ? hpsi / h : 0.0; }
};

struct Primitive1D {
  double h = 0.0;
  double u = 0.0;
  double psi = 0.0;

  double discharge() const { return h * u; }
};

Primitive1D to_primitive(const State1D& q);
State1D to_conserved(const Primitive1D& w);

/// Conserved 2D state (h, qx, qy).
struct State2D {
  double h = 0.0;
  double qx = 0.0;
  double qy = 0.0;

  double u() const { return h > kDryDepth ? qx / h : 0.0; }
  double v() const { return h > kDryDepth ? qy / h : 0.0; }
};

/// Unit normal n = (cos theta, sin theta). Construction checks |n| = 1.
class UnitNormal {
 public:
  UnitNormal() = default;
  static UnitNormal from_angle(double theta);
  /// Throws std::invalid_argument unless nx^2 + ny^2 = 1 within 1e-14.
  static UnitNormal from_components(double nx, double ny);
  /// Normalizes an arbitrary non-zero direction.
  static UnitNormal normalized(double dx, double dy);

  double nx() const { return nx_; }
  double ny() const { return ny_; }
  double theta() const { return std::atan2(ny_, nx_); }
  UnitNormal flipped() const { return UnitNormal(-nx_, -ny_); }

 private:
  UnitNormal(double nx, double ny) : nx_(nx), ny_(ny) {}
  double nx_ = 1.0;
  double ny_ = 0.0;
};

/// sqrt(g h); throws std::domain_error for negative depth.
double celerity(double h, double g);

Vec3 flux_1d(const State1D& q, double g);

struct SplitFlux {
  Vec3 advection;
  Vec3 pressure;
};

/// Advection part (0, hu u, hu psi) and pressure part (hu, g h^2 / 2, 0).
SplitFlux split_flux_1d(const State1D& q, double g);

struct Flux2D {
  Vec3 x;
  Vec3 y;
};

struct SplitFlux2D {
  SplitFlux x;
  SplitFlux y;
};

Flux2D flux_2d(const State2D& q, double g);
SplitFlux2D split_flux_2d(const State2D& q, double g);

/// Normal flux n . (Fx, Fy).
Vec3 normal_flux(const State2D& q, const UnitNormal& n, double g);

/// Applies T(theta): (h, qx, qy) -> (h, q_xi, q_zeta).
State2D rotate(const State2D& q, const UnitNormal& n);
/// Applies T^-1 to a state in the rotated frame.
State2D rotate_back(const State2D& q, const UnitNormal& n);
/// Applies T^-1 to the momentum components of a rotated-frame flux.
Vec3 rotate_back_flux(const Vec3& f, const UnitNormal& n);

}  // namespace swe
