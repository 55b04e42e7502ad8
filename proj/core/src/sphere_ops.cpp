#include "lightcone/sphere_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lightcone/chebyshev.hpp"
#include "lightcone/errors.hpp"

namespace lightcone {
namespace {

constexpr double kPi = std::numbers::pi;

enum class SpectralOp { Value, Laplacian, DTheta, DPhi };

void require_full_sphere(const SphereGrid& g, const char* where) {
  if (g.mode() != GridMode::FullSphere) {
    throw UsageError(std::string(where) + " requires a FullSphere grid");
  }
}

using Real = long double;

// Coefficients kept in extended precision between analysis and synthesis.
struct WideCoeffs {
  std::size_t lmax = 0;
  std::size_t mmax = 0;
  std::vector<std::vector<Real>> a;
  std::vector<std::vector<Real>> b;
};

// cos and sin of 2 pi k / n for k < n; m * phi_j reduces to k = (m j) mod n.
struct TrigTable {
  std::size_t n;
  std::vector<Real> c;
  std::vector<Real> s;
  explicit TrigTable(std::size_t n_) : n(n_), c(n_), s(n_) {
    for (std::size_t k = 0; k < n; ++k) {
      const Real a = 2.0L * std::numbers::pi_v<Real> * static_cast<Real>(k) / static_cast<Real>(n);
      c[k] = std::cos(a);
      s[k] = std::sin(a);
    }
  }
};

WideCoeffs analyze_wide(const ScalarField& f) {
  const SphereGrid& g = f.grid();
  require_full_sphere(g, "analyze");
  const std::size_t nt = g.n_theta();
  const std::size_t np = g.n_phi();
  WideCoeffs c;
  c.lmax = g.lmax();
  c.mmax = g.mmax();
  c.a.resize(c.mmax + 1);
  c.b.resize(c.mmax + 1);
  const TrigTable trig(np);
  for (std::size_t m = 0; m <= c.mmax; ++m) {
    const std::size_t len = c.lmax - m + 1;
    const std::size_t step = m % np;
    c.a[m].assign(len, 0.0L);
    c.b[m].assign(len, 0.0L);
    const Real norm = (m == 0 ? 1.0L : 2.0L) / static_cast<Real>(np);
    for (std::size_t i = 0; i < nt; ++i) {
      Real am = 0.0L;
      Real bm = 0.0L;
      for (std::size_t j = 0, k = 0; j < np; ++j) {
        const Real v = f[i * np + j];
        am += v * trig.c[k];
        bm += v * trig.s[k];
        k += step;
        if (k >= np) k -= np;
      }
      am *= norm;
      bm = m > 0 ? bm * norm : 0.0L;
      const Real* col = g.legendre_column(m, i);
      const Real w = g.legendre_weights_wide()[i];
      for (std::size_t k = 0; k < len; ++k) {
        c.a[m][k] += w * col[k] * am;
        c.b[m][k] += w * col[k] * bm;
      }
    }
  }
  return c;
}

std::vector<double> synthesize(const SphereGrid& g, const WideCoeffs& c, SpectralOp op) {
  const std::size_t nt = g.n_theta();
  const std::size_t np = g.n_phi();
  std::vector<Real> acc(g.size(), 0.0L);
  std::vector<Real> dcol(c.lmax + 1);
  const TrigTable trig(np);
  for (std::size_t m = 0; m <= c.mmax; ++m) {
    const std::size_t len = c.lmax - m + 1;
    const std::size_t step = m % np;
    for (std::size_t i = 0; i < nt; ++i) {
      const Real x = g.cos_theta_wide()[i];
      const Real st = g.sin_theta_wide()[i];
      const Real* col = g.legendre_column(m, i);
      const Real* basis = col;
      if (op == SpectralOp::DTheta) {
        normalized_legendre_dtheta_t<Real>(m, c.lmax, x, st,
                                           std::span<const Real>(col, len),
                                           std::span(dcol.data(), len));
        basis = dcol.data();
      }
      Real ga = 0.0L;
      Real gb = 0.0L;
      for (std::size_t k = 0; k < len; ++k) {
        Real fac = 1.0L;
        if (op == SpectralOp::Laplacian) {
          const Real l = static_cast<Real>(m + k);
          fac = -l * (l + 1.0L);
        }
        ga += fac * c.a[m][k] * basis[k];
        gb += fac * c.b[m][k] * basis[k];
      }
      const Real md = static_cast<Real>(m);
      if (op == SpectralOp::DPhi) {
        const Real ta = md * gb;
        gb = -md * ga;
        ga = ta;
      }
      for (std::size_t j = 0, k = 0; j < np; ++j) {
        acc[i * np + j] += ga * trig.c[k] + gb * trig.s[k];
        k += step;
        if (k >= np) k -= np;
      }
    }
  }
  return std::vector<double>(acc.begin(), acc.end());
}

ScalarField spectral(const ScalarField& f, SpectralOp op) {
  return ScalarField(f.grid_ptr(), synthesize(f.grid(), analyze_wide(f), op));
}

enum class PatchOp { Laplacian, DTheta };

ScalarField collocation(const ScalarField& f, PatchOp op) {
  const SphereGrid& g = f.grid();
  std::vector<double> out(g.size());
  for (const Patch& p : g.patches()) {
    const std::size_t n = p.spec.nodes;
    Eigen::VectorXd seg(n);
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) mean += f[p.offset + k];
    mean /= static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) seg(k) = f[p.offset + k] - mean;
    const Eigen::VectorXd r = (op == PatchOp::Laplacian ? p.laplacian : p.d_theta) * seg;
    for (std::size_t k = 0; k < n; ++k) out[p.offset + k] = r(k);
  }
  return ScalarField(f.grid_ptr(), std::move(out));
}

double patch_value(const ScalarField& f, const Patch& p, double theta) {
  const std::size_t n = p.spec.nodes;
  return cheb::barycentric_interpolate(
      p.s, p.bary, std::span<const double>(f.values().data() + p.offset, n),
      p.to_reference(theta));
}

template <class Fn>
std::pair<double, double> maximise(Fn&& fn, double a, double b, std::size_t samples) {
  double best_t = a;
  double best_v = fn(a);
  const double h = (b - a) / static_cast<double>(samples);
  for (std::size_t k = 1; k <= samples; ++k) {
    const double t = a + h * static_cast<double>(k);
    const double v = fn(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = std::max(a, best_t - h);
  double hi = std::min(b, best_t + h);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = fn(x1);
  double f2 = fn(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = fn(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = fn(x1);
    }
  }
  const double t = f1 > f2 ? x1 : x2;
  const double v = std::max(f1, f2);
  if (v > best_v) return {t, v};
  return {best_t, best_v};
}

}  // namespace

ScalarField laplacian(const ScalarField& f) {
  if (f.grid().mode() == GridMode::FullSphere) return spectral(f, SpectralOp::Laplacian);
  return collocation(f, PatchOp::Laplacian);
}

ScalarField d_theta(const ScalarField& f) {
  if (f.grid().mode() == GridMode::FullSphere) return spectral(f, SpectralOp::DTheta);
  return collocation(f, PatchOp::DTheta);
}

ScalarField d_phi(const ScalarField& f) {
  if (f.grid().mode() == GridMode::FullSphere) return spectral(f, SpectralOp::DPhi);
  return ScalarField::constant(f.grid_ptr(), 0.0);
}

ScalarField gradient_sq(const ScalarField& f) {
  const ScalarField ft = d_theta(f);
  if (f.grid().mode() == GridMode::AxisymTruncated) return ft * ft;
  const ScalarField fp = d_phi(f);
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double s = std::sin(f.grid().theta_at(i));
    v[i] = ft[i] * ft[i] + fp[i] * fp[i] / (s * s);
  }
  return ScalarField(f.grid_ptr(), std::move(v));
}

double integrate(const ScalarField& f) {
  const std::vector<double>& w = f.grid().quad_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[i];
  return s;
}

SpectralCoeffs analyze(const ScalarField& f) {
  const WideCoeffs w = analyze_wide(f);
  SpectralCoeffs c;
  c.lmax = w.lmax;
  c.mmax = w.mmax;
  for (std::size_t m = 0; m <= w.mmax; ++m) {
    c.a.emplace_back(w.a[m].begin(), w.a[m].end());
    c.b.emplace_back(w.b[m].begin(), w.b[m].end());
  }
  return c;
}

double evaluate(const SpectralCoeffs& c, double theta, double phi) {
  std::vector<double> col(c.lmax + 1);
  const double x = std::cos(theta);
  const double st = std::sin(theta);
  double s = 0.0;
  for (std::size_t m = 0; m <= c.mmax; ++m) {
    const std::size_t len = c.lmax - m + 1;
    normalized_legendre_column(m, c.lmax, x, st, std::span(col.data(), len));
    double ga = 0.0;
    double gb = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      ga += c.a[m][k] * col[k];
      gb += c.b[m][k] * col[k];
    }
    const double md = static_cast<double>(m);
    s += ga * std::cos(md * phi) + gb * std::sin(md * phi);
  }
  return s;
}

double north_pole_value(const ScalarField& f) {
  const WideCoeffs c = analyze_wide(f);
  Real s = 0.0L;
  for (std::size_t l = 0; l <= c.lmax; ++l) {
    s += c.a[0][l] * std::sqrt((2.0L * static_cast<Real>(l) + 1.0L) / 2.0L);
  }
  return static_cast<double>(s);
}

double interpolate(const ScalarField& f, double theta, double phi) {
  const SphereGrid& g = f.grid();
  if (g.mode() == GridMode::FullSphere) return evaluate(analyze(f), theta, phi);
  if (theta < g.theta_min() || theta > g.theta_max()) {
    throw DomainError("interpolate: theta outside the grid's zone");
  }
  for (const Patch& p : g.patches()) {
    if (theta <= p.spec.theta_hi) return patch_value(f, p, theta);
  }
  return patch_value(f, g.patches().back(), theta);
}

CapSup sup_on_cap(const ScalarField& f, double theta_max) {
  const SphereGrid& g = f.grid();
  const std::vector<double>& th = g.theta_nodes();
  std::size_t rows = 0;
  while (rows < th.size() && th[rows] <= theta_max) ++rows;
  if (rows * g.n_phi() < 16) {
    throw ResolutionError("sup_on_cap: only " + std::to_string(rows * g.n_phi()) +
                          " nodes with theta <= " + std::to_string(theta_max) +
                          " (need 16)");
  }
  const std::size_t np = g.n_phi();
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows * np; ++i) {
    if (f[i] > f[best]) best = i;
  }
  CapSup out;
  out.node = best;
  out.node_value = f[best];
  out.value = f[best];
  out.theta = g.theta_at(best);
  out.phi = g.phi_at(best);

  const std::size_t row = best / np;
  double a = th[row > 0 ? row - 1 : 0];
  double b = th[row + 1 < rows ? row + 1 : rows - 1];
  std::pair<double, double> refined;
  if (g.mode() == GridMode::AxisymTruncated) {
    const Patch& p = g.patches()[g.patch_of(row)];
    a = std::max(a, p.spec.theta_lo);
    b = std::min(b, p.spec.theta_hi);
    if (!(b > a)) return out;
    refined = maximise([&](double t) { return patch_value(f, p, t); }, a, b, 16);
  } else {
    const SpectralCoeffs c = analyze(f);
    const double phi = out.phi;
    refined = maximise([&](double t) { return evaluate(c, t, phi); }, a, b, 16);
  }
  if (refined.second > out.value) {
    out.value = refined.second;
    out.theta = refined.first;
  }
  return out;
}

}  // namespace lightcone
