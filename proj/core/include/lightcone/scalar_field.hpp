#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lightcone/sphere_grid.hpp"

namespace lightcone {

/// Samples of a real function at the nodes of a grid. Values are finite.
class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Evaluates fn(theta, phi) at every node.
  static ScalarField sample(GridPtr grid, const std::function<double(double, double)>& fn);
  static ScalarField constant(GridPtr grid, double value);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const SphereGrid& grid() const noexcept { return *grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double min() const;
  double max() const;
  std::size_t argmin() const;
  std::size_t argmax() const;
  double sup_norm() const;

  /// Pointwise map; the result is validated as finite.
  ScalarField map(const std::function<double(double)>& fn) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Throws GridMismatchError unless both fields share a grid object.
void require_same_grid(const ScalarField& a, const ScalarField& b, const char* where);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

}  // namespace lightcone
