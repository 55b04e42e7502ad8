#pragma once

#include <cstddef>

#include <Eigen/Geometry>

#include "lightcone/minkowski.hpp"
#include "lightcone/section_geometry.hpp"

namespace lightcone {

enum class HyperplaneClass { SpacelikePlane, NullPlane, TimelikePlane };

const char* to_string(HyperplaneClass c) noexcept;

/// {x : a.x = c} with a.x = a0 x0 + a1 x1 + a2 x2 + a3 x3, stored with
/// max |a_i| = 1.
struct Hyperplane {
  Covector4 a;
  double c = 0.0;
};

/// Rescales (a, c) so that max |a_i| = 1. Throws DomainError if a = 0.
Hyperplane make_hyperplane(const Covector4& a, double c);

HyperplaneClass classify_hyperplane(const Hyperplane& h, double tol = 1e-12);

struct IntersectionOptions {
  std::size_t n_theta = 256;  ///< grid size when f is constant; otherwise the layout follows f
  double margin = 0.1;  ///< radians trimmed off an edge where f blows up
};

/// Section cut out of the past cone by a hyperplane. The grid lives in a
/// rotated frame whose x3 axis is sign * (spatial normal); the section is
/// axisymmetric there and its domain always contains theta' = pi.
struct ConeIntersection {
  SectionSpec spec;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  ///< omega' = R omega
  double sign = 1.0;
  double spatial_norm = 0.0;  ///< |(a1, a2, a3)|
  bool has_edge = false;
  double edge_theta = 0.0;  ///< rotated polar angle where f blows up
};

/// f(theta', phi') = c / (sign * b * cos(theta') - a0); b = |spatial normal|.
/// Throws EmptySectionError if no direction gives f > 0.
ConeIntersection intersect_cone(const Hyperplane& h, const IntersectionOptions& opt = {});

/// Event on the cone for grid node `node`, in the original frame.
EventRect section_point(const ConeIntersection& s, std::size_t node);

struct TrichotomyReport {
  HyperplaneClass plane_class = HyperplaneClass::SpacelikePlane;
  double K_mean = 0.0;
  double K_min = 0.0;
  double K_max = 0.0;
  double K_deviation = 0.0;  ///< K_max - K_min over the trimmed domain
  bool sign_consistent = false;
  Classification classification = Classification::Mixed;
  bool noncompact = false;
  ExpansionMargins margins;
  double route_discrepancy = 0.0;
  double margin = 0.0;
  double theta_min = 0.0;  ///< rotated frame
  double edge_theta = 0.0;
  bool has_edge = false;
};

TrichotomyReport trichotomy_report(const Hyperplane& h, const IntersectionOptions& opt = {});

/// Same, also handing back the intersection and the computed geometry.
TrichotomyReport trichotomy_report(const Hyperplane& h, const IntersectionOptions& opt,
                                   ConeIntersection* intersection, SectionGeometry* geometry);

}  // namespace lightcone
