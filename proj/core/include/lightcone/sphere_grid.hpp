#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "lightcone/legendre.hpp"

namespace lightcone {

enum class GridMode { FullSphere, AxisymTruncated };

const char* to_string(GridMode mode) noexcept;

/// Collocation variable used on one axisymmetric patch.
///  CosTheta: x = cos(theta), regular at the poles.
///  Mercator: xi = log tan(theta / 2), for patches away from the poles.
enum class PatchVariable { CosTheta, Mercator };

struct PatchSpec {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  PatchVariable variable = PatchVariable::CosTheta;
  std::size_t nodes = 16;
};

/// One Chebyshev patch of an axisymmetric grid. Local node k is grid node
/// `offset + k`; nodes are ordered by increasing theta.
struct Patch {
  PatchSpec spec;
  std::size_t offset = 0;
  double y_lo = 0.0;  ///< variable value at the end mapped to s = -1
  double y_hi = 0.0;  ///< variable value at the end mapped to s = +1
  std::vector<double> s;               ///< reference coordinate per local node
  std::vector<double> bary;            ///< barycentric weight per local node
  Eigen::MatrixXd laplacian;           ///< round Laplacian (axisymmetric part)
  Eigen::MatrixXd d_theta;             ///< d/dtheta

  /// Reference coordinate of an angle inside the patch.
  double to_reference(double theta) const;
};

/// Discretisation of the unit sphere (FullSphere) or of an axisymmetric
/// zone theta in [theta_min, theta_max] (AxisymTruncated, one phi node).
/// Node index = i_theta * n_phi + i_phi. Immutable after construction.
class SphereGrid {
 public:
  static std::shared_ptr<const SphereGrid> full_sphere(std::size_t n_theta,
                                                       std::size_t n_phi);
  static std::shared_ptr<const SphereGrid> axisymmetric(std::vector<PatchSpec> patches);

  GridMode mode() const noexcept { return mode_; }
  std::size_t n_theta() const noexcept { return theta_.size(); }
  std::size_t n_phi() const noexcept { return phi_.size(); }
  std::size_t size() const noexcept { return theta_.size() * phi_.size(); }
  double theta_min() const noexcept { return theta_lo_; }
  double theta_max() const noexcept { return theta_hi_; }

  const std::vector<double>& theta_nodes() const noexcept { return theta_; }
  const std::vector<double>& phi_nodes() const noexcept { return phi_; }
  const std::vector<double>& quad_weights() const noexcept { return weights_; }

  double theta_at(std::size_t node) const { return theta_[node / phi_.size()]; }
  double phi_at(std::size_t node) const { return phi_[node % phi_.size()]; }

  // AxisymTruncated only.
  const std::vector<Patch>& patches() const noexcept { return patches_; }
  std::size_t patch_of(std::size_t i_theta) const;

  // FullSphere only: cos(theta) per theta row and the Gauss-Legendre weight.
  const std::vector<double>& cos_theta() const noexcept { return cos_; }
  const std::vector<double>& sin_theta() const noexcept { return sin_; }
  const std::vector<double>& legendre_weights() const noexcept { return gl_weights_; }
  const std::vector<long double>& cos_theta_wide() const noexcept { return cos_w_; }
  const std::vector<long double>& sin_theta_wide() const noexcept { return sin_w_; }
  const std::vector<long double>& legendre_weights_wide() const noexcept { return gl_w_; }
  std::size_t lmax() const noexcept { return lmax_; }
  std::size_t mmax() const noexcept { return mmax_; }
  /// Pbar_l^m(cos theta_i) for l = m .. lmax, computed once per grid.
  const long double* legendre_column(std::size_t m, std::size_t i_theta) const {
    return legendre_.data() + legendre_offset_[m] + i_theta * (lmax_ - m + 1);
  }

 private:
  SphereGrid() = default;

  GridMode mode_ = GridMode::FullSphere;
  double theta_lo_ = 0.0;
  double theta_hi_ = 0.0;
  std::vector<double> theta_;
  std::vector<double> phi_;
  std::vector<double> weights_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<double> gl_weights_;
  std::vector<long double> cos_w_;
  std::vector<long double> sin_w_;
  std::vector<long double> gl_w_;
  std::vector<long double> legendre_;
  std::vector<std::size_t> legendre_offset_;
  std::size_t lmax_ = 0;
  std::size_t mmax_ = 0;
  std::vector<Patch> patches_;
  std::vector<std::size_t> patch_index_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// Patch layout used by build_grid in AxisymTruncated mode: CosTheta caps at
/// the poles and 16-node Mercator patches of equal theta width in between.
std::vector<PatchSpec> default_axisym_layout(std::size_t n_theta, double theta_min,
                                             double theta_max = 3.141592653589793);

/// n_theta >= 4; theta_min in [0, pi/2); n_phi == 1 in AxisymTruncated mode.
/// FullSphere mode requires theta_min == 0.
GridPtr build_grid(GridMode mode, std::size_t n_theta, std::size_t n_phi,
                   double theta_min);

}  // namespace lightcone
