#include "lightcone/hyperplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "lightcone/errors.hpp"
#include "lightcone/sphere_ops.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

// f is a rational function of x = cos(theta) with a single pole at x = ratio,
// so every patch uses x as its variable. Patch boundaries grow geometrically
// away from the pole, each patch no wider than half its distance to it. With
// 20 nodes this already resolves f to roundoff; splitting patches further only
// amplifies the rounding of f in the second derivative.
std::vector<PatchSpec> hyperplane_layout(double x_top, double ratio) {
  constexpr std::size_t kNodes = 20;
  constexpr double kGrowth = 1.5;
  const bool pole_below = ratio < -1.0;
  // Distance from the pole, measured along the section towards its far end.
  const double start = pole_below ? -1.0 - ratio : ratio - x_top;
  const double length = pole_below ? 2.0 : x_top + 1.0;
  std::vector<double> t{start};
  while (t.back() < start + length) {
    double next = kGrowth * t.back();
    if (start + length - next < 0.5 * (next - t.back())) next = start + length;
    t.push_back(std::min(next, start + length));
  }
  std::vector<double> xs;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) xs.push_back(pole_below ? ratio + t[k] : ratio - t[k]);
  xs.push_back(pole_below ? 1.0 : -1.0);
  std::vector<double> thetas(xs.size());
  std::transform(xs.begin(), xs.end(), thetas.begin(), [](double x) { return std::acos(x); });
  if (pole_below) std::reverse(thetas.begin(), thetas.end());
  thetas.back() = kPi;
  std::vector<PatchSpec> out;
  for (std::size_t k = 0; k + 1 < thetas.size(); ++k) {
    out.push_back({thetas[k], thetas[k + 1], PatchVariable::CosTheta, kNodes});
  }
  return out;
}

}  // namespace

const char* to_string(HyperplaneClass c) noexcept {
  switch (c) {
    case HyperplaneClass::SpacelikePlane: return "Spacelike";
    case HyperplaneClass::NullPlane: return "Null";
    case HyperplaneClass::TimelikePlane: return "Timelike";
  }
  return "Spacelike";
}

Hyperplane make_hyperplane(const Covector4& a, double c) {
  const double scale = std::max({std::abs(a.a0), std::abs(a.a1), std::abs(a.a2), std::abs(a.a3)});
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(c)) {
    throw DomainError("hyperplane normal must be finite and nonzero");
  }
  return Hyperplane{Covector4{a.a0 / scale, a.a1 / scale, a.a2 / scale, a.a3 / scale}, c / scale};
}

HyperplaneClass classify_hyperplane(const Hyperplane& h, double tol) {
  const double q = causal_norm_sq(h.a);
  if (q < -tol) return HyperplaneClass::SpacelikePlane;
  if (q > tol) return HyperplaneClass::TimelikePlane;
  return HyperplaneClass::NullPlane;
}

ConeIntersection intersect_cone(const Hyperplane& h, const IntersectionOptions& opt) {
  if (!(opt.margin >= 0.0)) throw ConfigError("margin must be nonnegative");
  const Eigen::Vector3d n(h.a.a1, h.a.a2, h.a.a3);
  const double b = n.norm();
  const double a0 = h.a.a0;
  const double c = h.c;
  if (c == 0.0) {
    throw EmptySectionError("hyperplane through the vertex meets the past cone in no spacelike section");
  }

  if (b == 0.0) {
    const double f0 = -c / a0;
    if (!(f0 > 0.0)) throw EmptySectionError("hyperplane does not meet the past cone");
    GridPtr g = SphereGrid::axisymmetric(default_axisym_layout(opt.n_theta, 0.0));
    SectionDomain d;
    d.note = "frame: identity";
    return ConeIntersection{make_section(ScalarField::constant(g, f0), d),
                            Eigen::Matrix3d::Identity(), 1.0, 0.0, false, 0.0};
  }

  // Pick the orientation that puts theta' = pi inside the section.
  auto snapped_ratio = [&](double s) {
    const double r = a0 / (s * b);
    return std::abs(std::abs(r) - 1.0) <= 1e-12 ? std::copysign(1.0, r) : r;
  };
  std::optional<double> sign;
  for (double s : {1.0, -1.0}) {
    const double f_south = c / (s * b * (-1.0 - snapped_ratio(s)));
    if (std::isfinite(f_south) && f_south > 0.0) {
      sign = s;
      break;
    }
  }
  if (!sign) throw EmptySectionError("hyperplane does not meet the past cone");
  const double s = *sign;
  const Eigen::Matrix3d rotation =
      Eigen::Quaterniond::FromTwoVectors(n / b, Eigen::Vector3d(0.0, 0.0, s)).toRotationMatrix();

  const double ratio = snapped_ratio(s);
  bool has_edge = false;
  double edge = 0.0;
  double theta_lo = 0.0;
  if (std::abs(ratio) < 1.0 || ratio == 1.0) {
    has_edge = true;
    edge = std::acos(ratio);
    if (!(opt.margin > 0.0)) throw ConfigError("margin must be positive when the section has an edge");
    theta_lo = edge + opt.margin;
    if (!(theta_lo < kPi - 1e-6)) {
      throw EmptySectionError("section is empty after trimming the edge margin");
    }
  }
  GridPtr g =
      SphereGrid::axisymmetric(hyperplane_layout(std::cos(theta_lo), ratio));
  // Denominator written as s*b*(cos - ratio) to keep the null case exact.
  ScalarField f = ScalarField::sample(
      g, [&](double th, double) { return c / (s * b * (std::cos(th) - ratio)); });

  SectionDomain d;
  d.full_sphere = !has_edge;
  d.theta_min = g->theta_min();
  d.theta_max = kPi;
  d.noncompact = has_edge;
  std::ostringstream os;
  os << "frame: x3' = " << (s > 0 ? "+" : "-") << "(a1,a2,a3)/|(a1,a2,a3)|";
  d.note = os.str();
  return ConeIntersection{make_section(std::move(f), std::move(d)), rotation, s, b, has_edge,
                          edge};
}

EventRect section_point(const ConeIntersection& s, std::size_t node) {
  const SphereGrid& g = s.spec.f.grid();
  const double th = g.theta_at(node);
  const double ph = g.phi_at(node);
  const Eigen::Vector3d w_rot(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                              std::cos(th));
  const Eigen::Vector3d w = s.rotation.transpose() * w_rot;
  const double f = s.spec.f[node];
  return EventRect{-f, f * w.x(), f * w.y(), f * w.z()};
}

TrichotomyReport trichotomy_report(const Hyperplane& h, const IntersectionOptions& opt) {
  return trichotomy_report(h, opt, nullptr, nullptr);
}

TrichotomyReport trichotomy_report(const Hyperplane& h, const IntersectionOptions& opt,
                                   ConeIntersection* intersection, SectionGeometry* geometry) {
  ConeIntersection cut = intersect_cone(h, opt);
  SectionGeometry geo = compute_geometry(cut.spec);

  TrichotomyReport r;
  r.plane_class = classify_hyperplane(h);
  r.K_min = geo.K.min();
  r.K_max = geo.K.max();
  r.K_deviation = r.K_max - r.K_min;
  double sum = 0.0;
  for (double v : geo.K.values()) sum += v;
  r.K_mean = sum / static_cast<double>(geo.K.size());
  switch (r.plane_class) {
    case HyperplaneClass::SpacelikePlane: r.sign_consistent = r.K_min > 0.0; break;
    case HyperplaneClass::TimelikePlane: r.sign_consistent = r.K_max < 0.0; break;
    case HyperplaneClass::NullPlane:
      r.sign_consistent = std::max(std::abs(r.K_min), std::abs(r.K_max)) <= 1e-6;
      break;
  }
  r.classification = geo.classification;
  r.noncompact = cut.spec.domain.noncompact;
  r.margins = geo.margins;
  r.route_discrepancy = geo.route_discrepancy;
  r.margin = opt.margin;
  r.theta_min = cut.spec.domain.theta_min;
  r.has_edge = cut.has_edge;
  r.edge_theta = cut.edge_theta;
  if (intersection) *intersection = cut;
  if (geometry) *geometry = std::move(geo);
  return r;
}

}  // namespace lightcone
