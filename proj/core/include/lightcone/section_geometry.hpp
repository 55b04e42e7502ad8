#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lightcone/minkowski.hpp"
#include "lightcone/scalar_field.hpp"

namespace lightcone {

enum class Classification {
  Trapped,
  MarginallyTrappedOutgoing,
  MarginallyTrappedIngoing,
  Untrapped,
  Mixed,
};

const char* to_string(Classification c) noexcept;

/// Where a section lives. Truncated zones of a surface that continues past the
/// zone (or escapes to infinity) are flagged noncompact.
struct SectionDomain {
  bool full_sphere = true;
  double theta_min = 0.0;
  double theta_max = 3.141592653589793;
  bool noncompact = false;
  std::string note;  ///< free text, e.g. the frame rotation used
};

/// The graph u = -f(theta, phi) inside the past cone {v = 0}.
struct SectionSpec {
  ScalarField f;
  SectionDomain domain;
};

/// Builds a spec whose domain is read off the grid. Throws DomainError if
/// min f <= 0.
SectionSpec make_section(ScalarField f);
SectionSpec make_section(ScalarField f, SectionDomain domain);

struct ExpansionOptions {
  double route_tolerance = 1e-9;  ///< relative agreement of the two tr chi routes
  bool check_routes = true;
  bool check_spectral_tail = true;
  double tail_tolerance = 1e-10;
};

struct NullExpansions {
  ScalarField tr_chi;      ///< (2/f)(1 - lap log f)
  ScalarField tr_chibar;   ///< -2/f
  ScalarField tr_chi_raw;  ///< (2/f)(1 - lap f / f + |df|^2 / f^2)
  double route_discrepancy = 0.0;
};

NullExpansions null_expansions(const SectionSpec& spec, const ExpansionOptions& opt = {});
ScalarField gauss_curvature(const SectionSpec& spec, const ExpansionOptions& opt = {});
/// K + tr_chi * tr_chibar / 4 with tr_chi from the raw route.
ScalarField gauss_residual(const SectionSpec& spec, const ExpansionOptions& opt = {});

/// Coefficients of L~ in the double null basis (d_u, d_v, d_theta, d_phi).
/// The ingoing normal is L_ = d_u.
struct NullFrameCoeffs {
  double u = 0.0;
  double v = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

NullFrameCoeffs null_frame_at(double f, double f_theta, double f_phi, double theta);
NullFrameCoeffs null_frame(const SectionSpec& spec, std::size_t node);
std::vector<NullFrameCoeffs> null_frame_field(const SectionSpec& spec);

/// Inner products of L~ evaluated by pushing the frame into rectangular
/// coordinates: eta(L,L), eta(L,L_), eta(L,T_theta), eta(L,T_phi).
struct NullFrameResiduals {
  double ll = 0.0;
  double l_lbar = 0.0;
  double l_ttheta = 0.0;
  double l_tphi = 0.0;
};
NullFrameResiduals null_frame_residuals(double f, double f_theta, double f_phi, double theta,
                                        double phi, const NullFrameCoeffs& c);

/// Components of the null curvature. Every Minkowski section has all of
/// them equal to zero, which is the only value this library produces.
struct NullCurvature {
  double alpha[3] = {0.0, 0.0, 0.0};     ///< (thth, thph, phph)
  double alphabar[3] = {0.0, 0.0, 0.0};
  double beta[2] = {0.0, 0.0};
  double betabar[2] = {0.0, 0.0};
  double rho = 0.0;
  double sigma = 0.0;
};
inline NullCurvature minkowski_curvature() { return {}; }

struct ExpansionMargins {
  double tr_chi_min = 0.0;
  double tr_chi_max = 0.0;
  double tr_chibar_min = 0.0;
  double tr_chibar_max = 0.0;
};

struct SectionGeometry {
  SectionSpec spec;
  ScalarField tr_chi;
  ScalarField tr_chibar;
  ScalarField K;
  Classification classification = Classification::Mixed;
  ExpansionMargins margins;
  double route_discrepancy = 0.0;
};

SectionGeometry compute_geometry(const SectionSpec& spec, double classify_tol = 1e-8,
                                 const ExpansionOptions& opt = {});

Classification classify(const ScalarField& tr_chi, const ScalarField& tr_chibar,
                        double tol = 1e-8);
Classification classify(const SectionGeometry& g, double tol = 1e-8);

// General transformation formula for the outgoing expansion of a deformed
// section:
//   tr chi~ = tr chi - 2 Omega lap f - 4 Omega eta.grad f
//             - 4 Omega^2 chibar_hat(grad f, grad f) - Omega^2 tr chibar |grad f|^2
//             - 8 Omega^2 omegabar |grad f|^2

struct OneFormField {
  ScalarField theta;  ///< coordinate component along d theta
  ScalarField phi;
};

struct SymTensorField {
  ScalarField tt;  ///< coordinate components
  ScalarField tp;
  ScalarField pp;
};

struct BackgroundFields {
  ScalarField omega;  ///< lapse, must be positive
  OneFormField eta;
  ScalarField tr_chi;
  ScalarField tr_chibar;
  SymTensorField chibar_hat;
  ScalarField omegabar;

  /// Flat background seen from the section u = -f: Omega = 1, eta = 0,
  /// chibar_hat = 0, omegabar = 0, tr chi = 2/f, tr chibar = -2/f.
  static BackgroundFields minkowski(const ScalarField& f);
};

/// Which 2-metric supplies lap and grad: f^2 times the round metric, or the
/// unit round metric.
enum class MetricSpec { ConformalSection, RoundUnit };

struct TransformationResult {
  ScalarField tr_chi;
  ScalarField background;   ///< tr chi
  ScalarField laplacian;    ///< -2 Omega lap f
  ScalarField torsion;      ///< -4 Omega eta.grad f
  ScalarField shear;        ///< -4 Omega^2 chibar_hat(grad f, grad f)
  ScalarField ingoing;      ///< -Omega^2 tr chibar |grad f|^2
  ScalarField acceleration; ///< -8 Omega^2 omegabar |grad f|^2
};

TransformationResult transformation_general(const BackgroundFields& bg, const ScalarField& f,
                                            MetricSpec metric = MetricSpec::ConformalSection);

}  // namespace lightcone
