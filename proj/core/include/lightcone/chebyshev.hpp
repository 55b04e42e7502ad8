#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace lightcone::cheb {

/// Chebyshev points of the first kind, ascending in (-1, 1).
std::vector<double> gauss_nodes(std::size_t n);

/// Barycentric weights matching gauss_nodes(n).
std::vector<double> barycentric_weights(std::size_t n);

/// First and second derivative matrices on gauss_nodes(n).
/// Off-diagonal entries use trigonometric node differences and the diagonal
/// is the negative row sum (smallest terms first).
struct DiffMatrices {
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;
};
DiffMatrices differentiation_matrices(std::size_t n);

/// Fejer's first rule on gauss_nodes(n); integrates over [-1, 1].
std::vector<double> fejer_weights(std::size_t n);

/// Barycentric interpolation through (nodes, values) evaluated at x.
double barycentric_interpolate(std::span<const double> nodes,
                               std::span<const double> weights,
                               std::span<const double> values, double x);

}  // namespace lightcone::cheb
