#pragma once

// Coherent-state wavefunctions and kernels.
//
// Conventions used throughout the library:
//  * inner products are conjugate-linear in the first slot;
//  * the Bergman inner product is <f, g> = (1/pi) int_D conj(f) g (1-|z|^2)^{2B-2} d eta,
//    under which the C_j^B below are orthonormal and (2B-1)(1 - conj(z) w)^{-2B}
//    is the reproducing kernel;
//  * K_{B,m} keeps its pi prefactor and reproduces with respect to d eta itself.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "nbsloc/errors.hpp"
#include "nbsloc/quadrature.hpp"
#include "nbsloc/specfun.hpp"

namespace nbsloc {

/// Weight parameter B (> 1/2) and Landau level m (0 <= m <= floor(B - 1/2)).
class ModelParams {
 public:
  explicit ModelParams(double B, int m = 0) : B_(B), m_(m) {
    detail::require(std::isfinite(B) && 2.0 * B > 1.0, "B must satisfy 2B > 1 (got B = " + std::to_string(B) + ")");
    detail::require(m >= 0 && m <= max_level(B),
                    "Landau level m = " + std::to_string(m) + " is not admissible: need 0 ≤ m ≤ ⌊B−1/2⌋ = " +
                        std::to_string(max_level(B)));
  }

  static int max_level(double B) { return static_cast<int>(std::floor(B - 0.5)); }

  double B() const { return B_; }
  int m() const { return m_; }

  /// Half-plane hyperbolic Landau level (B - m)(1 - B + m).
  double halfplane_level() const { return (B_ - m_) * (1.0 - B_ + m_); }
  /// Disk hyperbolic Landau level 4m(2B - m - 1).
  double disk_level() const { return 4.0 * m_ * (2.0 * B_ - m_ - 1.0); }

 private:
  double B_;
  int m_;
};

/// Label of a coherent state on the unit disk, |z| < 1.
class DiskPoint {
 public:
  explicit DiskPoint(cplx z) : z_(z) {
    detail::require(std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) < 1.0,
                    "disk point must satisfy |z| < 1");
  }
  DiskPoint(double re, double im = 0.0) : DiskPoint(cplx{re, im}) {}

  cplx z() const { return z_; }
  double norm2() const { return std::norm(z_); }

 private:
  cplx z_;
};

/// Point of the Poincare upper half-plane, Im w > 0.
class HalfPlanePoint {
 public:
  explicit HalfPlanePoint(cplx w) : w_(w) {
    detail::require(std::isfinite(w.real()) && w.imag() > 0.0 && std::isfinite(w.imag()),
                    "half-plane point must satisfy Im w > 0");
  }
  cplx w() const { return w_; }

 private:
  cplx w_;
};

/// Radius of the localization disk D_R, 0 < R < 1.
class LocalizationRadius {
 public:
  explicit LocalizationRadius(double R) : R_(R) {
    detail::require(R > 0.0 && R < 1.0, "localization radius must satisfy 0 < R < 1");
  }
  double R() const { return R_; }
  /// Upper limit R^2 of the incomplete Beta integral.
  double s() const { return R_ * R_; }

 private:
  double R_;
};

namespace detail {
inline void require_weight(double B) { require(std::isfinite(B) && 2.0 * B > 1.0, "B must satisfy 2B > 1"); }
}  // namespace detail

/// Affine coherent state <xi | tau_{(x,y),B}> = (2B)^{-1/2} (xi y)^B exp(-xi (y - i x) / 2).
inline cplx affine_cs(double x, double y, double B, double xi) {
  detail::require_weight(B);
  detail::require(y > 0.0, "affine_cs: y must be > 0");
  detail::require(xi > 0.0, "affine_cs: xi must be > 0");
  const double mod = std::pow(xi * y, B) / std::sqrt(2.0 * B);
  return mod * std::exp(cplx{-0.5 * xi * y, 0.5 * xi * x});
}

struct AffinePoint {
  double x;
  double y;
};

/// Inverse Cayley transform D -> affine group (x, y), y > 0.
inline AffinePoint cayley_inverse(DiskPoint p) {
  const cplx z = p.z();
  const double d = std::norm(cplx{1.0, 0.0} - z);
  return {-2.0 * z.imag() / d, (1.0 - p.norm2()) / d};
}

/// NBS wavefunction in L^2(R_+, d xi):
/// sqrt(2/Gamma(2B)) xi^{2B-1/2} ((1-|z|^2)/(1-z)^2)^B exp(-(1/2)((1+z)/(1-z)) xi^2).
inline cplx nbs_wavefunction(DiskPoint p, double B, double xi) {
  detail::require_weight(B);
  detail::require(xi > 0.0, "nbs_wavefunction: xi must be > 0");
  const cplx z = p.z();
  const cplx one{1.0, 0.0};
  const cplx base = (1.0 - p.norm2()) / ((one - z) * (one - z));
  const double log_mod = 0.5 * (std::numbers::ln2 - log_gamma(2.0 * B)) + (2.0 * B - 0.5) * std::log(xi);
  return std::exp(log_mod) * principal_pow(base, B) * std::exp(-0.5 * ((one + z) / (one - z)) * xi * xi);
}

/// The same state built from the affine coherent state through the Cayley
/// transform: ((1 - conj z)/(1 - z))^B pi_+(C^{-1}(z)) phi_B, moved to
/// L^2(R_+, d xi) by xi -> xi^2 with the sqrt(2/xi) Jacobian, and rescaled
/// from the fiducial (2B)^{-1/2} to the unit-norm Gamma(2B)^{-1/2}.
inline cplx nbs_via_cayley(DiskPoint p, double B, double xi) {
  detail::require_weight(B);
  detail::require(xi > 0.0, "nbs_via_cayley: xi must be > 0");
  const cplx z = p.z();
  const cplx one{1.0, 0.0};
  const AffinePoint g = cayley_inverse(p);
  const cplx phase = principal_pow((one - std::conj(z)) / (one - z), B);
  const cplx kappa = phase * affine_cs(g.x, g.y, B, xi * xi);
  const double renorm = std::exp(0.5 * (std::log(2.0 * B) - log_gamma(2.0 * B)));
  return std::sqrt(2.0 / xi) * renorm * kappa;
}

/// Bergman basis element C_j^B(z) = sqrt(2B-1) sqrt(Gamma(2B+j)/(j! Gamma(2B))) z^j.
inline cplx coeff_C(long j, double B, DiskPoint p) {
  detail::require_weight(B);
  detail::require(j >= 0, "coeff_C: j must be >= 0");
  return std::sqrt((2.0 * B - 1.0) * negbin_coeff(j, 2.0 * B)) * std::pow(p.z(), static_cast<int>(j));
}

/// Laguerre function l_j^B(xi) = (2 j!/Gamma(2B+j))^{1/2} xi^{2B-1/2} e^{-xi^2/2} L_j^{(2B-1)}(xi^2).
inline double laguerre_fn(long j, double B, double xi) {
  detail::require_weight(B);
  detail::require(j >= 0, "laguerre_fn: j must be >= 0");
  detail::require(xi > 0.0, "laguerre_fn: xi must be > 0");
  const double dj = static_cast<double>(j);
  const double log_mod = 0.5 * (std::numbers::ln2 + log_gamma(dj + 1.0) - log_gamma(2.0 * B + dj)) +
                         (2.0 * B - 0.5) * std::log(xi) - 0.5 * xi * xi;
  return std::exp(log_mod) * laguerre(j, 2.0 * B - 1.0, xi * xi);
}

/// Number-state expansion truncated at J:
/// (1-|z|^2)^B (2B-1)^{-1/2} sum_{j<=J} C_j^B(z) l_j^B(xi).
inline cplx nbs_expansion(DiskPoint p, double B, double xi, long J) {
  detail::require(J >= 0, "nbs_expansion: J must be >= 0");
  cplx acc{0.0, 0.0};
  for (long j = 0; j <= J; ++j) acc += coeff_C(j, B, p) * laguerre_fn(j, B, xi);
  return std::pow(1.0 - p.norm2(), B) / std::sqrt(2.0 * B - 1.0) * acc;
}

/// <l_j, kappa~_z> = (1-|z|^2)^B sqrt(Gamma(2B+j)/(j! Gamma(2B))) z^j.
inline cplx number_state_overlap(long j, double B, DiskPoint p) {
  detail::require_weight(B);
  return std::pow(1.0 - p.norm2(), B) * std::sqrt(negbin_coeff(j, 2.0 * B)) * std::pow(p.z(), static_cast<int>(j));
}

/// <kappa~_z, kappa~_w> = (1-|z|^2)^B (1-|w|^2)^B (1 - conj(z) w)^{-2B}.
inline cplx nbs_overlap(DiskPoint z, DiskPoint w, double B) {
  detail::require_weight(B);
  const cplx base = cplx{1.0, 0.0} - std::conj(z.z()) * w.z();
  return std::pow((1.0 - z.norm2()) * (1.0 - w.norm2()), B) * principal_pow(base, -2.0 * B);
}

/// Reproducing kernel of the lowest Landau level on the half-plane.
inline cplx halfplane_kernel(HalfPlanePoint w, HalfPlanePoint zeta, double B) {
  detail::require_weight(B);
  const cplx a = w.w(), b = zeta.w();
  const cplx d = a - std::conj(b);
  const double ratio = std::norm(d) / (4.0 * a.imag() * b.imag());
  return std::pow(ratio, -B) * principal_pow((b - std::conj(a)) / d, B);
}

/// Reproducing kernel K_{B,m}(z, w) of the m-th disk Landau level (w.r.t. d eta):
/// pi (2B-2m-1) (1 - z conj w)^{-2B} (|1 - z conj w|^2 / ((1-|z|^2)(1-|w|^2)))^m
///   * P_m^{(0, 2(B-m)-1)}(2 (1-|z|^2)(1-|w|^2) / |1 - z conj w|^2 - 1).
inline cplx disk_kernel(DiskPoint z, DiskPoint w, const ModelParams& params) {
  const double B = params.B();
  const int m = params.m();
  const cplx base = cplx{1.0, 0.0} - z.z() * std::conj(w.z());
  const double q = std::norm(base) / ((1.0 - z.norm2()) * (1.0 - w.norm2()));
  const double poly = jacobi(m, 0.0, 2.0 * (B - m) - 1.0, 2.0 / q - 1.0);
  return std::numbers::pi * (2.0 * B - 2.0 * m - 1.0) * principal_pow(base, -2.0 * B) * std::pow(q, m) * poly;
}

/// Negative binomial pmf Gamma(2B+j)/(j! Gamma(2B)) p^j (1-p)^{2B}.
inline double nb_pmf(long j, double B, double p) {
  detail::require_weight(B);
  detail::require(j >= 0, "nb_pmf: j must be >= 0");
  detail::require(p >= 0.0 && p < 1.0, "nb_pmf: p must lie in [0, 1)");
  if (p == 0.0) return j == 0 ? 1.0 : 0.0;
  const double dj = static_cast<double>(j);
  const double r = 2.0 * B;
  return std::exp(log_gamma(r + dj) - log_gamma(dj + 1.0) - log_gamma(r) + dj * std::log(p) + r * std::log1p(-p));
}

/// Bergman inner product (1/pi) int_D conj(f) g (1-|z|^2)^{2B-2} d eta on a disk grid.
template <class F, class G>
cplx bergman_inner(F&& f, G&& g, const DiskGrid& grid) {
  return grid.integrate([&](cplx z) { return cplx(std::conj(cplx(f(z))) * cplx(g(z))); }) / std::numbers::pi;
}

/// Residual of the eigen-relation H_B l_j^B = (j + 1) l_j^B.
inline double hamiltonian_residual(long j, double B, double grid_step = 1e-3, Window window = {}) {
  detail::require(j >= 0, "hamiltonian_residual: j must be >= 0");
  return hamiltonian_residual([&](double x) { return laguerre_fn(j, B, x); }, static_cast<double>(j + 1), B,
                              grid_step, window);
}

}  // namespace nbsloc
