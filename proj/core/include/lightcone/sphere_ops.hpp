#pragma once

#include <cstddef>
#include <vector>

#include "lightcone/scalar_field.hpp"

namespace lightcone {

// Differential operators of the unit round metric. FullSphere fields are
// differentiated spectrally, AxisymTruncated fields by patch collocation.
// No boundary conditions are imposed anywhere.

ScalarField laplacian(const ScalarField& f);
ScalarField d_theta(const ScalarField& f);
ScalarField d_phi(const ScalarField& f);  ///< identically zero on axisymmetric grids

/// |d f|^2 = f_theta^2 + f_phi^2 / sin^2(theta).
ScalarField gradient_sq(const ScalarField& f);

/// Quadrature of f dA over the sphere (FullSphere) or over the grid's zone.
double integrate(const ScalarField& f);

struct CapSup {
  double value = 0.0;       ///< refined supremum
  double theta = 0.0;       ///< location of the refined supremum
  double phi = 0.0;
  std::size_t node = 0;     ///< best node
  double node_value = 0.0;  ///< value at that node
};

/// Supremum of f over nodes with theta <= theta_max, refined by maximising
/// the local interpolant around the best node. Needs at least 16 such nodes.
CapSup sup_on_cap(const ScalarField& f, double theta_max);

/// Interpolates f at (theta, phi) using the grid's own representation.
double interpolate(const ScalarField& f, double theta, double phi);

/// Real spherical-harmonic coefficients against orthonormal Pbar_l^m(x)
/// times cos(m phi) (a) and sin(m phi) (b). Index [m][l - m].
struct SpectralCoeffs {
  std::size_t lmax = 0;
  std::size_t mmax = 0;
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;
};

SpectralCoeffs analyze(const ScalarField& f);  ///< FullSphere only
double evaluate(const SpectralCoeffs& c, double theta, double phi);

/// Value of the spectral expansion at theta = 0 (FullSphere only).
double north_pole_value(const ScalarField& f);

}  // namespace lightcone
