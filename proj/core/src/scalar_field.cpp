#include "lightcone/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lightcone/errors.hpp"

namespace lightcone {

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw UsageError("scalar field without a grid");
  if (values_.size() != grid_->size()) {
    throw GridMismatchError("field has " + std::to_string(values_.size()) +
                            " values for a grid of " + std::to_string(grid_->size()) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("non-finite field value at node " + std::to_string(i) +
                        " (theta=" + std::to_string(grid_->theta_at(i)) + ")");
    }
  }
}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(double, double)>& fn) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid->theta_at(i), grid->phi_at(i));
  return ScalarField(std::move(grid), std::move(v));
}

ScalarField ScalarField::constant(GridPtr grid, double value) {
  std::vector<double> v(grid->size(), value);
  return ScalarField(std::move(grid), std::move(v));
}

double ScalarField::min() const { return values_[argmin()]; }
double ScalarField::max() const { return values_[argmax()]; }

std::size_t ScalarField::argmin() const {
  return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

std::size_t ScalarField::argmax() const {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

double ScalarField::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

ScalarField ScalarField::map(const std::function<double(double)>& fn) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), fn);
  return ScalarField(grid_, std::move(v));
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* where) {
  if (a.grid_ptr() != b.grid_ptr()) {
    throw GridMismatchError(std::string(where) + ": fields live on different grids");
  }
}

namespace {

template <class Op>
ScalarField combine(const ScalarField& a, const ScalarField& b, const char* where, Op op) {
  require_same_grid(a, b, where);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
  return ScalarField(a.grid_ptr(), std::move(v));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, "operator+", [](double x, double y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, "operator-", [](double x, double y) { return x - y; });
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, "operator*", [](double x, double y) { return x * y; });
}
ScalarField operator*(double s, const ScalarField& a) {
  return a.map([s](double x) { return s * x; });
}

}  // namespace lightcone
