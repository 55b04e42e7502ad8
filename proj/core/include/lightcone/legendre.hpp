#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace lightcone {

struct GaussLegendreRule {
  std::vector<double> nodes;    ///< ascending in (-1, 1)
  std::vector<double> weights;  ///< sum to 2
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(std::size_t n);

/// Extended-precision rule (ascending nodes), used for the sphere grid.
struct GaussLegendreRuleWide {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};
GaussLegendreRuleWide gauss_legendre_wide(std::size_t n);

/// Gauss-Legendre rule mapped to [a, b].
GaussLegendreRule gauss_legendre(std::size_t n, double a, double b);

/// Associated Legendre functions normalised so that
/// \int_{-1}^{1} Pbar_l^m(x)^2 dx = 1 (no Condon-Shortley phase).
/// Fills out[l - m] = Pbar_l^m(x) for l = m .. lmax.
/// `sin_theta` must equal sqrt(1 - x^2); it is passed to avoid cancellation.
void normalized_legendre_column(std::size_t m, std::size_t lmax, double x,
                                double sin_theta, std::span<double> out);

/// d/dtheta of Pbar_l^m(cos theta) for l = m .. lmax given the column of values.
/// Requires sin_theta > 0.
void normalized_legendre_dtheta(std::size_t m, std::size_t lmax, double x,
                                double sin_theta, std::span<const double> column,
                                std::span<double> out);

/// Same recursion in an arbitrary floating type (used with long double by the
/// spectral transforms to keep roundoff below the derivative amplification).
template <class T>
void normalized_legendre_column_t(std::size_t m, std::size_t lmax, T x, T sin_theta,
                                  std::span<T> out) {
  using std::sqrt;
  if (lmax < m) return;
  T pmm = sqrt(T(0.5));
  for (std::size_t k = 1; k <= m; ++k) {
    const T kd = static_cast<T>(k);
    pmm *= sqrt((2 * kd + 1) / (2 * kd)) * sin_theta;
  }
  out[0] = pmm;
  if (lmax == m) return;
  const T md = static_cast<T>(m);
  out[1] = x * sqrt(2 * md + 3) * pmm;
  for (std::size_t l = m + 2; l <= lmax; ++l) {
    const T ld = static_cast<T>(l);
    const T a = sqrt((4 * ld * ld - 1) / (ld * ld - md * md));
    const T lm1 = ld - 1;
    const T b = sqrt((lm1 * lm1 - md * md) / (4 * lm1 * lm1 - 1));
    out[l - m] = a * (x * out[l - m - 1] - b * out[l - m - 2]);
  }
}

template <class T>
void normalized_legendre_dtheta_t(std::size_t m, std::size_t lmax, T x, T sin_theta,
                                  std::span<const T> column, std::span<T> out) {
  using std::sqrt;
  const T md = static_cast<T>(m);
  for (std::size_t l = m; l <= lmax; ++l) {
    const T ld = static_cast<T>(l);
    T v = ld * x * column[l - m];
    if (l > m) v -= sqrt((2 * ld + 1) / (2 * ld - 1) * (ld * ld - md * md)) * column[l - m - 1];
    out[l - m] = v / sin_theta;
  }
}

/// Real spherical harmonic, orthonormal on the unit sphere:
/// m > 0 -> cos(m phi), m < 0 -> sin(|m| phi).
double real_spherical_harmonic(int l, int m, double theta, double phi);

}  // namespace lightcone
