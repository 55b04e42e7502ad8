#include "lightcone/minkowski.hpp"

#include <cmath>
#include <numbers>

#include "lightcone/errors.hpp"

namespace lightcone {

double wrap_phi(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double p = std::fmod(phi, two_pi);
  if (p < 0.0) p += two_pi;
  if (p >= two_pi) p = 0.0;
  return p;
}

EventDoubleNull rect_to_double_null(const EventRect& e) {
  const double rho = std::hypot(e.x1, e.x2);
  const double r = std::hypot(rho, e.x3);
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(e.x0)) {
    throw ChartDegeneracyError("polar chart undefined at r = 0");
  }
  if (rho / r < 1e-14) {
    throw ChartDegeneracyError("polar chart undefined on the axis (theta = 0 or pi)");
  }
  EventDoubleNull out;
  out.u = 0.5 * (e.x0 - r);
  out.v = 0.5 * (e.x0 + r);
  out.theta = std::atan2(rho, e.x3);
  out.phi = wrap_phi(std::atan2(e.x2, e.x1));
  return out;
}

EventRect double_null_to_rect(const EventDoubleNull& e) {
  const double r = e.v - e.u;
  const double phi = wrap_phi(e.phi);
  const double st = std::sin(e.theta);
  return EventRect{e.u + e.v, r * st * std::cos(phi), r * st * std::sin(phi),
                   r * std::cos(e.theta)};
}

EventRect cone_point(double u, double theta, double phi) {
  if (!(u < 0.0)) throw DomainError("cone_point requires u < 0");
  const double r = -u;
  const double st = std::sin(theta);
  return EventRect{u, r * st * std::cos(phi), r * st * std::sin(phi), r * std::cos(theta)};
}

double cone_residual(const EventRect& e) {
  return -e.x0 * e.x0 + e.x1 * e.x1 + e.x2 * e.x2 + e.x3 * e.x3;
}

double causal_norm_sq(const Covector4& a) {
  return -a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3;
}

}  // namespace lightcone
