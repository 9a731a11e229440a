#pragma once

// Weighted Bergman space A^B(D): the unitary map W_B from the Laguerre
// basis, and the localization operator transported to A^B as an integral
// operator with kernel P_s^B.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "nbsloc/errors.hpp"
#include "nbsloc/locop.hpp"
#include "nbsloc/quadrature.hpp"
#include "nbsloc/specfun.hpp"
#include "nbsloc/states.hpp"

namespace nbsloc {

/// Element of A^B(D), held either as coefficients in the orthonormal basis
/// {C_j^B} or as a pointwise evaluator.
class BergmanFunction {
 public:
  using Evaluator = std::function<cplx(cplx)>;

  static BergmanFunction from_coefficients(double B, std::vector<cplx> coeffs) {
    detail::require_weight(B);
    return BergmanFunction(B, std::move(coeffs));
  }
  static BergmanFunction from_evaluator(double B, Evaluator f) {
    detail::require_weight(B);
    detail::require(static_cast<bool>(f), "BergmanFunction: empty evaluator");
    return BergmanFunction(B, std::move(f));
  }

  double B() const { return B_; }
  bool has_coefficients() const { return std::holds_alternative<std::vector<cplx>>(rep_); }

  const std::vector<cplx>& coefficients() const {
    if (!has_coefficients())
      throw UnsupportedError("BergmanFunction: pointwise-only function; call project() to obtain coefficients");
    return std::get<std::vector<cplx>>(rep_);
  }

  /// Fast pointwise evaluator; for the coefficient form the C_j^B
  /// normalizations are folded into monomial coefficients once.
  Evaluator evaluator() const {
    if (!has_coefficients()) return std::get<Evaluator>(rep_);
    const auto& a = std::get<std::vector<cplx>>(rep_);
    std::vector<cplx> mono(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
      mono[j] = a[j] * std::sqrt((2.0 * B_ - 1.0) * negbin_coeff(static_cast<long>(j), 2.0 * B_));
    return [mono = std::move(mono)](cplx z) {
      cplx acc{0.0, 0.0};
      for (auto it = mono.rbegin(); it != mono.rend(); ++it) acc = acc * z + *it;
      return acc;
    };
  }

  cplx operator()(DiskPoint p) const { return evaluator()(p.z()); }

  /// Coefficients <C_j, F> for j <= J by disk quadrature.
  BergmanFunction project(long J, const DiskGrid& grid) const {
    detail::require(J >= 0, "BergmanFunction::project: J must be >= 0");
    const Evaluator f = evaluator();
    std::vector<cplx> out(static_cast<std::size_t>(J + 1));
    for (long j = 0; j <= J; ++j) {
      const double c = std::sqrt((2.0 * B_ - 1.0) * negbin_coeff(j, 2.0 * B_));
      out[static_cast<std::size_t>(j)] =
          bergman_inner([&](cplx z) { return c * std::pow(z, static_cast<int>(j)); }, f, grid);
    }
    return from_coefficients(B_, std::move(out));
  }

  /// Cauchy-Riemann check at the given points with centered differences of step h.
  bool is_analytic(std::span<const cplx> points, double tol = 1e-6, double h = 1e-4) const {
    const Evaluator f = evaluator();
    for (const cplx& z : points) {
      detail::require(std::abs(z) + h < 1.0, "BergmanFunction::is_analytic: point too close to the boundary");
      const cplx dx = (f(z + cplx{h, 0.0}) - f(z - cplx{h, 0.0})) / (2.0 * h);
      const cplx dy = (f(z + cplx{0.0, h}) - f(z - cplx{0.0, h})) / (2.0 * h);
      // f analytic iff df/dy = i df/dx.
      if (std::abs(dy - cplx{0.0, 1.0} * dx) > tol * std::max(1.0, std::abs(dx))) return false;
    }
    return true;
  }

 private:
  BergmanFunction(double B, std::vector<cplx> a) : B_(B), rep_(std::move(a)) {}
  BergmanFunction(double B, Evaluator f) : B_(B), rep_(std::move(f)) {}

  double B_;
  std::variant<std::vector<cplx>, Evaluator> rep_;
};

/// (W_B f)(z) = sum_j c_j C_j^B(z) for f = sum_j c_j l_j^B.
inline cplx wb_transform(const std::vector<cplx>& coeffs, DiskPoint z, double B) {
  return BergmanFunction::from_coefficients(B, coeffs)(z);
}

/// (W_B^{-1} F)(xi) truncated to j <= J.
inline cplx wb_inverse(const BergmanFunction& F, double xi, long J) {
  detail::require(J >= 0, "wb_inverse: J must be >= 0");
  const auto& a = F.coefficients();
  cplx acc{0.0, 0.0};
  const long top = std::min<long>(J, static_cast<long>(a.size()) - 1);
  for (long j = 0; j <= top; ++j) acc += a[static_cast<std::size_t>(j)] * laguerre_fn(j, F.B(), xi);
  return acc;
}

enum class KernelEvalMode { series, closed_form };

struct KernelSeriesValue {
  cplx value;
  long terms_used;
  double tail_bound;
};

namespace detail {

inline void require_kernel_s(double s) { require(s > 0.0 && s < 1.0, "kernel: s = R^2 must lie in (0, 1)"); }

inline void require_right_half_plane(cplx base, const char* what) {
  if (!(base.real() > 0.0)) throw DomainError(std::string(what) + ": base left the right half-plane");
}

}  // namespace detail

/// P_s^B(z, w) = (2B-1) sum_k I_s(k+1, 2B-1) (2B)_k/k! (conj(z) w)^k, with a
/// certified tail bound: terms from K on are bounded by a geometric series
/// once the ratio q (2B+k)/(k+1) drops below 1.
inline KernelSeriesValue kernel_series_certified(DiskPoint z, DiskPoint w, double B, double s,
                                                 const SeriesControl& ctl = {}) {
  detail::require_weight(B);
  detail::require_kernel_s(s);
  ctl.validate();
  const cplx omega = std::conj(z.z()) * w.z();
  const double q = std::abs(omega);
  const double lead = 2.0 * B - 1.0;
  cplx acc{0.0, 0.0};
  cplx power{1.0, 0.0};
  for (long k = 0; k < ctl.max_terms; ++k) {
    const double c = negbin_coeff(k, 2.0 * B);
    acc += lead * reg_inc_beta(s, static_cast<double>(k) + 1.0, lead) * c * power;
    // Bound on the remainder sum_{n>k}: I_s <= 1, coefficient ratios decreasing.
    const double ratio = q * (2.0 * B + static_cast<double>(k + 1)) / static_cast<double>(k + 2);
    if (ratio < 1.0) {
      const double next = lead * negbin_coeff(k + 1, 2.0 * B) * std::pow(q, static_cast<double>(k + 1));
      const double tail = next / (1.0 - ratio);
      if (tail <= ctl.rel_tol * std::abs(acc) + ctl.abs_tol) return {acc, k + 1, tail};
    }
    power *= omega;
  }
  throw ConvergenceError("kernel_series: tail bound not reached within max_terms", ctl.max_terms);
}

inline cplx kernel_series(DiskPoint z, DiskPoint w, double B, double s, const SeriesControl& ctl = {}) {
  return kernel_series_certified(z, w, B, s, ctl).value;
}

/// Closed form (2B-1)^2 s (1 - s omega)^{-2B} F1(2-2B; 1-2B, 2B; 2; s, (s - s omega)/(1 - s omega)),
/// omega = conj(z) w.
inline cplx kernel_closed(DiskPoint z, DiskPoint w, double B, double s, const SeriesControl& ctl = {}) {
  detail::require_weight(B);
  detail::require_kernel_s(s);
  const cplx omega = std::conj(z.z()) * w.z();
  const cplx base = cplx{1.0, 0.0} - s * omega;
  detail::require_right_half_plane(base, "kernel_closed");
  const cplx v = (s - s * omega) / base;
  const HypergeomResult f1 = appell_f1(2.0 - 2.0 * B, 1.0 - 2.0 * B, 2.0 * B, 2.0, cplx{s, 0.0}, v, ctl);
  return (2.0 * B - 1.0) * (2.0 * B - 1.0) * s * principal_pow(base, -2.0 * B) * f1.value;
}

/// Limit s -> 1: the reproducing kernel (2B-1)(1 - conj(z) w)^{-2B}.
inline cplx kernel_limit(DiskPoint z, DiskPoint w, double B) {
  detail::require_weight(B);
  const cplx base = cplx{1.0, 0.0} - std::conj(z.z()) * w.z();
  detail::require_right_half_plane(base, "kernel_limit");
  return (2.0 * B - 1.0) * principal_pow(base, -2.0 * B);
}

inline cplx kernel(DiskPoint z, DiskPoint w, double B, double s, KernelEvalMode mode, const SeriesControl& ctl = {}) {
  return mode == KernelEvalMode::series ? kernel_series(z, w, B, s, ctl) : kernel_closed(z, w, B, s, ctl);
}

struct TransferOptions {
  long n_r = 64;
  long n_theta = 128;
  bool refine = true;
  double tol = 1e-9;
  SeriesControl ctl{};
};

namespace detail {

// conj(z)-power coefficients d_k of z -> P_s(z, w) for fixed w, truncated
// with the same certificate as kernel_series at the worst case |z| -> 1.
inline std::vector<cplx> kernel_row_coefficients(DiskPoint w, double B, double s, const SeriesControl& ctl) {
  const double q = std::abs(w.z());
  const double lead = 2.0 * B - 1.0;
  std::vector<cplx> d;
  cplx power{1.0, 0.0};
  double mass = 0.0;
  for (long k = 0; k < ctl.max_terms; ++k) {
    const double c = lead * reg_inc_beta(s, static_cast<double>(k) + 1.0, lead) * negbin_coeff(k, 2.0 * B);
    d.push_back(c * power);
    mass += std::abs(d.back());
    const double ratio = q * (2.0 * B + static_cast<double>(k + 1)) / static_cast<double>(k + 2);
    if (ratio < 1.0) {
      const double tail = lead * negbin_coeff(k + 1, 2.0 * B) * std::pow(q, static_cast<double>(k + 1)) / (1.0 - ratio);
      if (tail <= ctl.rel_tol * mass + ctl.abs_tol) return d;
    }
    power *= w.z();
  }
  throw ConvergenceError("transferred_apply: kernel expansion did not converge", ctl.max_terms);
}

inline cplx transferred_once(const BergmanFunction::Evaluator& f, DiskPoint w, double B, double s,
                             KernelEvalMode mode, long n_r, long n_theta, const SeriesControl& ctl) {
  const DiskGrid grid = disk_grid(n_r, n_theta, B);
  if (mode == KernelEvalMode::series) {
    const std::vector<cplx> d = kernel_row_coefficients(w, B, s, ctl);
    return grid.integrate([&](cplx z) {
             const cplx zc = std::conj(z);
             cplx acc{0.0, 0.0};
             for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * zc + *it;
             return acc * f(z);
           }) /
           std::numbers::pi;
  }
  return grid.integrate([&](cplx z) { return kernel_closed(DiskPoint(z), w, B, s, ctl) * f(z); }) /
         std::numbers::pi;
}

}  // namespace detail

/// (P_R F)(w) = (1/pi) int_D P_s^B(z, w) F(z) (1-|z|^2)^{2B-2} d eta(z), s = R^2.
///
/// With refine set, the integral is recomputed on a grid of twice the
/// resolution and AccuracyError is raised if the two disagree beyond tol;
/// the finer value is returned.
inline cplx transferred_apply(const BergmanFunction& F, DiskPoint w, LocalizationRadius R, KernelEvalMode mode,
                              const TransferOptions& opt = {}) {
  const double B = F.B();
  const double s = R.s();
  const auto f = F.evaluator();
  const cplx coarse = detail::transferred_once(f, w, B, s, mode, opt.n_r, opt.n_theta, opt.ctl);
  if (!opt.refine) return coarse;
  const cplx fine = detail::transferred_once(f, w, B, s, mode, 2 * opt.n_r, 2 * opt.n_theta, opt.ctl);
  const double diff = std::abs(fine - coarse);
  if (diff > opt.tol * std::max(1.0, std::abs(fine)))
    throw AccuracyError("transferred_apply: grid refinement changed the result beyond tol", diff);
  return fine;
}

}  // namespace nbsloc
