#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lightcone/minkowski.hpp"
#include "lightcone/scalar_field.hpp"

namespace lightcone {

/// w(theta) = 2 log sin(theta/2), pole at theta = 0. Domain (0, pi].
double greens_w(double theta);
/// e^{-w} = 2 / (1 - cos theta).
double conformal_factor(double theta);

/// Integral of w * g dA on a FullSphere grid. The logarithmic singularity is
/// removed by subtracting g(north pole), whose w-integral is -4 pi exactly.
double pairing_with_w(const ScalarField& g);

struct DistributionalResidual {
  double residual = 0.0;     ///< |<w, lap phi> + <1, phi> - 4 pi phi(N)|
  double pairing = 0.0;      ///< <w, lap phi>
  double phi_integral = 0.0; ///< <1, phi>
  double pole_value = 0.0;   ///< phi(N) from the spectral expansion
};

/// Tests lap w + 1 = 4 pi delta_N against a smooth field on a FullSphere grid.
DistributionalResidual distributional_residual(const ScalarField& phi);

struct RefinementStudy {
  std::vector<std::size_t> n_theta;
  std::vector<double> residual;
  bool monotone = false;  ///< each level improves, or is already below the floor
};

RefinementStudy refinement_study(const std::function<double(double, double)>& phi,
                                  const std::vector<std::size_t>& levels, std::size_t n_phi = 1,
                                  double floor = 1e-12);

/// (-2/(1-cos), 2 sin cos(phi)/(1-cos), 2 sin sin(phi)/(1-cos), 2 cos/(1-cos)).
/// Throws BlowUpError at theta = 0.
EventRect embed_marginal_section(double theta, double phi);

/// Checks of S_{e^{-w}} on an axisymmetric grid.
struct MarginalSurfaceCheck {
  double laplacian_w_error = 0.0;  ///< sup |lap w + 1|
  double gradient_sq_error = 0.0;  ///< sup | |dw|^2 - cot^2(theta/2) |
  double tr_chi_sup = 0.0;         ///< sup |tr chi~|
  double tr_chibar_error = 0.0;    ///< sup |tr chibar~ - (cos theta - 1)|
  double K_sup = 0.0;              ///< sup |K|
  double gauss_residual_sup = 0.0;
};

MarginalSurfaceCheck marginal_surface_check(const GridPtr& grid);

/// sup |K| of S_{e^{-w}} on an AxisymTruncated grid.
double flatness_check(const GridPtr& grid);

}  // namespace lightcone
