#pragma once

// Deterministic integration grids: mapped Gauss-Legendre on a truncated
// half-line, Gauss-Jacobi on [0, 1] with the (1 - rho)^{2B-2} weight folded
// into the weights, graded composite rules for sub-intervals, and tensor
// grids on the unit disk.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <type_traits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nbsloc/errors.hpp"
#include "nbsloc/specfun.hpp"

namespace nbsloc {

enum class GridKind { half_line, radial_jacobi, angular, disk_tensor };

/// One-dimensional rule: sum_i weights[i] * f(nodes[i]).
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  GridKind kind = GridKind::half_line;

  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<decltype(f(0.0))>;
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }

  std::size_t size() const { return nodes.size(); }
};

namespace detail {

// P_n^(a,b)(x) together with its derivative.
inline std::pair<double, double> jacobi_with_derivative(long n, double a, double b, double x) {
  const double p = jacobi(n, a, b, x);
  const double dp = n == 0 ? 0.0 : 0.5 * (static_cast<double>(n) + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x);
  return {p, dp};
}

}  // namespace detail

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^alpha (1 + x)^beta.
///
/// Nodes start from the Golub-Welsch eigenvalues of the Jacobi matrix, are
/// polished by Newton steps on P_n, and weights come from the closed form
/// in terms of P_n'.
inline QuadratureGrid gauss_jacobi(long n, double alpha, double beta) {
  detail::require(n >= 1, "gauss_jacobi: n must be >= 1");
  detail::require(alpha > -1.0 && beta > -1.0, "gauss_jacobi: exponents must be > -1");
  const double ab = alpha + beta;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (long k = 0; k < n; ++k) {
    const double s = 2.0 * static_cast<double>(k) + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (long k = 1; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const double s = 2.0 * dk + ab;
    sub(k - 1) = std::sqrt(4.0 * dk * (dk + alpha) * (dk + beta) * (dk + ab) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("gauss_jacobi: eigen-solver failed", n);

  const double dn = static_cast<double>(n);
  const double log_pref = log_gamma(dn + alpha + 1.0) + log_gamma(dn + beta + 1.0) -
                          log_gamma(dn + ab + 1.0) - log_gamma(dn + 1.0) + (ab + 1.0) * std::numbers::ln2;
  QuadratureGrid g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (long i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = detail::jacobi_with_derivative(n, alpha, beta, x);
      const double step = p / dp;
      if (!std::isfinite(step)) break;
      x -= step;
    }
    const double dp = detail::jacobi_with_derivative(n, alpha, beta, x).second;
    g.nodes[i] = x;
    g.weights[i] = std::exp(log_pref) / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

/// Decay-based truncation point for Laguerre functions up to degree J.
inline double default_half_line_cutoff(long J, double B) {
  return std::sqrt(2.0 * (4.0 * static_cast<double>(J) + 8.0 * B)) + 10.0;
}

/// Gauss-Legendre nodes mapped to [0, cutoff] for L^2(R_+, d xi) integrals.
inline QuadratureGrid half_line_grid(long n, double cutoff) {
  detail::require(n >= 2, "half_line_grid: n must be >= 2");
  detail::require(cutoff > 0.0, "half_line_grid: cutoff must be > 0");
  QuadratureGrid g = gauss_jacobi(n, 0.0, 0.0);
  for (long i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * cutoff * (g.nodes[i] + 1.0);
    g.weights[i] *= 0.5 * cutoff;
  }
  g.kind = GridKind::half_line;
  return g;
}

/// Rule for int_0^1 f(rho) (1 - rho)^exp_one rho^exp_zero d rho.
inline QuadratureGrid jacobi_unit_grid(long n, double exp_one, double exp_zero = 0.0) {
  QuadratureGrid g = gauss_jacobi(n, exp_one, exp_zero);
  const double scale = std::pow(0.5, exp_one + exp_zero + 1.0);
  for (long i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * (g.nodes[i] + 1.0);
    g.weights[i] *= scale;
  }
  g.kind = GridKind::radial_jacobi;
  return g;
}

/// Gauss-Jacobi rule on [0, 1] with (1 - rho)^{2B-2} absorbed into the
/// weights; exact for polynomials of degree <= 2n - 1.
inline QuadratureGrid radial_jacobi_grid(long n, double B) {
  detail::require(n >= 2, "radial_jacobi_grid: n must be >= 2");
  detail::require(B > 0.5, "radial_jacobi_grid: B must be > 1/2 (weight not integrable)");
  return jacobi_unit_grid(n, 2.0 * B - 2.0);
}

/// Rule for int_a^b f(rho) (1 - rho)^exponent d rho with 0 <= a < b <= 1.
///
/// Sub-intervals are graded toward rho = 1 so each panel has length at most
/// its distance to the weight singularity; a panel ending at 1 uses a
/// Jacobi rule.
inline QuadratureGrid radial_segment_grid(double a, double b, double exponent, long n_per_panel = 24) {
  detail::require(0.0 <= a && a < b && b <= 1.0, "radial_segment_grid: need 0 <= a < b <= 1");
  detail::require(exponent > -1.0, "radial_segment_grid: exponent must be > -1");
  QuadratureGrid out;
  out.kind = GridKind::radial_jacobi;
  const QuadratureGrid gl = gauss_jacobi(n_per_panel, 0.0, 0.0);
  auto add_legendre_panel = [&](double lo, double hi) {
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double x = lo + 0.5 * (hi - lo) * (gl.nodes[i] + 1.0);
      out.nodes.push_back(x);
      out.weights.push_back(0.5 * (hi - lo) * gl.weights[i] * std::pow(1.0 - x, exponent));
    }
  };
  double lo = a;
  if (b == 1.0) {
    // Last panel [c, 1]: rho = 1 - (1 - c) u, weight ((1 - c) u)^exponent.
    const double c = a + 0.5 * (1.0 - a);
    if (c > a && a > 0.0) add_legendre_panel(a, c);
    const double start = a > 0.0 ? c : 0.0;
    const double len = 1.0 - start;
    const QuadratureGrid gj = jacobi_unit_grid(n_per_panel, 0.0, exponent);
    for (std::size_t i = 0; i < gj.size(); ++i) {
      out.nodes.push_back(1.0 - len * gj.nodes[i]);
      out.weights.push_back(std::pow(len, exponent + 1.0) * gj.weights[i]);
    }
    return out;
  }
  while (lo < b) {
    const double hi = std::min(b, lo + 0.5 * (1.0 - lo));
    add_legendre_panel(lo, hi);
    if (hi >= b) break;
    lo = hi;
  }
  return out;
}

/// Uniform trapezoid rule on [0, 2 pi); spectrally accurate for periodic integrands.
inline QuadratureGrid angular_grid(long n) {
  detail::require(n >= 2, "angular_grid: n must be >= 2");
  QuadratureGrid g;
  g.kind = GridKind::angular;
  const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (long k = 0; k < n; ++k) {
    g.nodes.push_back(w * static_cast<double>(k));
    g.weights.push_back(w);
  }
  return g;
}

/// Tensor rule for int_D f(z) (1 - |z|^2)^{2B-2} d eta(z), d eta the Lebesgue measure.
///
/// Radial nodes are in rho = |z|^2, so d eta = (1/2) d rho d theta.
struct DiskGrid {
  QuadratureGrid radial;
  QuadratureGrid angular;
  GridKind kind = GridKind::disk_tensor;

  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<decltype(f(cplx{}))>;
    R acc{};
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double r = std::sqrt(radial.nodes[i]);
      R ring{};
      for (std::size_t k = 0; k < angular.size(); ++k)
        ring += angular.weights[k] * f(std::polar(r, angular.nodes[k]));
      acc += (0.5 * radial.weights[i]) * ring;
    }
    return acc;
  }

  std::size_t size() const { return radial.size() * angular.size(); }
};

inline DiskGrid disk_grid(long n_r, long n_theta, double B) {
  detail::require(n_r >= 2 && n_theta >= 2, "disk_grid: n_r and n_theta must be >= 2");
  return DiskGrid{radial_jacobi_grid(n_r, B), angular_grid(n_theta)};
}

/// Disk rule restricted to |z| < R (radial integral over [0, R^2]).
inline DiskGrid disk_grid_restricted(long n_r, long n_theta, double B, double R) {
  detail::require(n_r >= 2 && n_theta >= 2, "disk_grid_restricted: n_r and n_theta must be >= 2");
  detail::require(B > 0.5, "disk_grid_restricted: B must be > 1/2");
  detail::require(R > 0.0 && R <= 1.0, "disk_grid_restricted: need 0 < R <= 1");
  return DiskGrid{radial_segment_grid(0.0, R * R, 2.0 * B - 2.0, n_r), angular_grid(n_theta)};
}

struct Window {
  double lo = 0.5;
  double hi = 8.0;
};

/// Relative L^2 residual ||H_B f - E f|| / ||E f|| on a uniform grid over
/// `window`, second derivative by central differences. The operator is
/// H_B = (1/4)(-d^2/dx^2 + x^2 + ((2B-1)^2 - 1/4)/x^2) + (1 - B); with this
/// prefactor H_B l_j^B = (j + 1) l_j^B.
template <class F>
double hamiltonian_residual(F&& f, double eigenvalue, double B, double grid_step, Window window = {}) {
  detail::require(B > 0.5, "hamiltonian_residual: B must be > 1/2");
  detail::require(grid_step > 0.0 && grid_step <= 1e-3, "hamiltonian_residual: grid_step must be in (0, 1e-3]");
  detail::require(window.lo > grid_step && window.hi > window.lo,
                  "hamiltonian_residual: window must lie inside (0, inf) away from xi = 0");
  const double c = (2.0 * B - 1.0) * (2.0 * B - 1.0) - 0.25;
  const long steps = static_cast<long>(std::floor((window.hi - window.lo) / grid_step));
  double num = 0.0, den = 0.0;
  for (long i = 0; i <= steps; ++i) {
    const double x = window.lo + grid_step * static_cast<double>(i);
    const double f0 = f(x);
    const double d2 = (f(x + grid_step) - 2.0 * f0 + f(x - grid_step)) / (grid_step * grid_step);
    const double hf = 0.25 * (-d2 + x * x * f0 + c / (x * x) * f0) + (1.0 - B) * f0;
    const double r = hf - eigenvalue * f0;
    num += r * r;
    den += eigenvalue * eigenvalue * f0 * f0;
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

}  // namespace nbsloc
