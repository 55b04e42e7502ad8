#pragma once

namespace lightcone {

/// Rectangular coordinates, x0 = t.
struct EventRect {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

/// Double null coordinates u = (t - r)/2, v = (t + r)/2 plus polar angles.
struct EventDoubleNull {
  double u = 0.0;
  double v = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct Covector4 {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Wraps an angle into [0, 2 pi).
double wrap_phi(double phi);

/// Throws ChartDegeneracyError at the origin or on the polar axis.
EventDoubleNull rect_to_double_null(const EventRect& e);
EventRect double_null_to_rect(const EventDoubleNull& e);

/// Point of the past cone of the origin (v = 0) with u < 0.
EventRect cone_point(double u, double theta, double phi);

/// -x0^2 + |x|^2.
double cone_residual(const EventRect& e);

/// -a0^2 + a1^2 + a2^2 + a3^2.
double causal_norm_sq(const Covector4& a);

}  // namespace lightcone
