#include "lightcone/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lightcone/errors.hpp"

namespace lightcone::cheb {
namespace {

// Angles t_k with cos(t_k) ascending.
std::vector<double> node_angles(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double j = static_cast<double>(n - 1 - k);
    t[k] = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n));
  }
  return t;
}

double sorted_negative_sum(std::vector<double>& row) {
  std::sort(row.begin(), row.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  double s = 0.0;
  for (double v : row) s += v;
  return -s;
}

}  // namespace

std::vector<double> gauss_nodes(std::size_t n) {
  std::vector<double> x = node_angles(n);
  for (double& v : x) v = std::cos(v);
  return x;
}

std::vector<double> barycentric_weights(std::size_t n) {
  const std::vector<double> t = node_angles(n);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = n - 1 - k;
    w[k] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(t[k]);
  }
  return w;
}

DiffMatrices differentiation_matrices(std::size_t n) {
  if (n < 2) throw ConfigError("differentiation_matrices: need at least 2 nodes");
  const std::vector<double> t = node_angles(n);
  const std::vector<double> bw = barycentric_weights(n);
  Eigen::MatrixXd dx(n, n);
  DiffMatrices out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  std::vector<double> row;
  row.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k) continue;
      dx(i, k) = 2.0 * std::sin(0.5 * (t[i] + t[k])) * std::sin(0.5 * (t[k] - t[i]));
      out.d1(i, k) = (bw[k] / bw[i]) / dx(i, k);
      row.push_back(out.d1(i, k));
    }
    out.d1(i, i) = sorted_negative_sum(row);
  }
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k) continue;
      out.d2(i, k) = 2.0 * out.d1(i, k) * (out.d1(i, i) - 1.0 / dx(i, k));
      row.push_back(out.d2(i, k));
    }
    out.d2(i, i) = sorted_negative_sum(row);
  }
  return out;
}

std::vector<double> fejer_weights(std::size_t n) {
  const std::vector<double> t = node_angles(n);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n / 2; ++j) {
      const double jd = static_cast<double>(j);
      s += std::cos(2.0 * jd * t[k]) / (4.0 * jd * jd - 1.0);
    }
    w[k] = 2.0 / static_cast<double>(n) * (1.0 - 2.0 * s);
  }
  return w;
}

double barycentric_interpolate(std::span<const double> nodes,
                               std::span<const double> weights,
                               std::span<const double> values, double x) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double d = x - nodes[k];
    if (d == 0.0) return values[k];
    const double c = weights[k] / d;
    num += c * values[k];
    den += c;
  }
  return num / den;
}

}  // namespace lightcone::cheb
