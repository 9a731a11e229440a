#pragma once

// Scalar special functions: log-gamma, Beta, regularized incomplete Beta,
// Laguerre and Jacobi polynomials, Gauss 2F1 and the Appell F1/F3 double
// series.

#include <math.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "nbsloc/errors.hpp"

namespace nbsloc {

using cplx = std::complex<double>;

/// Truncation policy shared by every infinite series in the library.
///
/// A series either meets `rel_tol` (relative to the running sum, with
/// `abs_tol` as an underflow floor) within `max_terms` terms per summation
/// index, or the evaluator throws ConvergenceError.
struct SeriesControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  long max_terms = 100000;

  void validate() const {
    detail::require(rel_tol > 0.0 && std::isfinite(rel_tol), "SeriesControl: rel_tol must be > 0");
    detail::require(abs_tol >= 0.0, "SeriesControl: abs_tol must be >= 0");
    detail::require(max_terms >= 1, "SeriesControl: max_terms must be >= 1");
  }
};

struct HypergeomResult {
  cplx value{0.0, 0.0};
  long terms_used = 0;
  bool converged = false;
};

namespace debug {
// Relative perturbation applied to every (r)_j / j! weight. Zero in normal
// operation; the verification harness sets it to prove its suites can fail.
inline std::atomic<double> gamma_ratio_perturbation{0.0};
}  // namespace debug

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// log|Gamma(x)| and sign(Gamma(x)); sign == 0 marks a pole.
struct SignedLogGamma {
  double log_abs;
  int sign;
};

inline SignedLogGamma signed_lgamma(double x) {
  if (is_nonpositive_integer(x)) return {std::numeric_limits<double>::infinity(), 0};
  int sign = 1;
#if defined(__GLIBC__)
  const double v = ::lgamma_r(x, &sign);
#else
  const double v = std::lgamma(x);
  if (x < 0.0 && static_cast<long long>(std::floor(x)) % 2 != 0) sign = -1;
#endif
  return {v, sign};
}

inline bool near_negative_real_axis(cplx base) {
  return base.real() <= 0.0 && base.imag() == 0.0;
}

}  // namespace detail

inline double log_gamma(double x) {
  detail::require(x > 0.0 && std::isfinite(x), "log_gamma: x must be > 0");
  return detail::signed_lgamma(x).log_abs;
}

inline double log_beta(double a, double b) {
  detail::require(a > 0.0 && b > 0.0, "log_beta: a, b must be > 0");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

inline double beta(double a, double b) { return std::exp(log_beta(a, b)); }

/// (r)_j / j! = Gamma(r + j) / (j! Gamma(r)), the negative binomial weight.
inline double negbin_coeff(long j, double r) {
  detail::require(j >= 0 && r > 0.0, "negbin_coeff: need j >= 0 and r > 0");
  const double v = std::exp(log_gamma(r + static_cast<double>(j)) - log_gamma(static_cast<double>(j) + 1.0) -
                            log_gamma(r));
  return v * (1.0 + debug::gamma_ratio_perturbation.load(std::memory_order_relaxed));
}

/// Principal branch of base^e. Throws if the base lies on the branch cut.
inline cplx principal_pow(cplx base, double e) {
  if (detail::near_negative_real_axis(base))
    throw DomainError("principal_pow: base on the negative real axis (branch cut)");
  return std::exp(e * std::log(base));
}

namespace detail {

// Continued fraction for I_x(a,b), modified Lentz; valid for x < (a+1)/(a+b+2).
inline double ibeta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const long max_it = 20000 + static_cast<long>(10.0 * std::sqrt(a + b));
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (long m = 1; m <= max_it; ++m) {
    const double dm = static_cast<double>(m), m2 = 2.0 * dm;
    double aa = dm * (b - dm) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + dm) * (qab + dm) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw ConvergenceError("reg_inc_beta: continued fraction did not converge", max_it);
}

}  // namespace detail

/// Regularized incomplete Beta function I_x(a, b), the Beta(a, b) CDF.
inline double reg_inc_beta(double x, double a, double b) {
  detail::require(a > 0.0 && b > 0.0, "reg_inc_beta: a, b must be > 0");
  detail::require(x >= 0.0 && x <= 1.0, "reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(log_front);
  double r;
  if (x < (a + 1.0) / (a + b + 2.0))
    r = front * detail::ibeta_cf(x, a, b) / a;
  else
    r = 1.0 - front * detail::ibeta_cf(1.0 - x, b, a) / b;
  return std::clamp(r, 0.0, 1.0);
}

/// Generalized Laguerre polynomial L_j^(alpha)(x), three-term recurrence.
inline double laguerre(long j, double alpha, double x) {
  detail::require(j >= 0, "laguerre: degree must be >= 0");
  detail::require(alpha > -1.0, "laguerre: alpha must be > -1");
  if (j == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (long k = 1; k < j; ++k) {
    const double dk = static_cast<double>(k);
    const double next = ((2.0 * dk + 1.0 + alpha - x) * cur - (dk + alpha) * prev) / (dk + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Jacobi polynomial P_k^(alpha,beta)(x), three-term recurrence.
inline double jacobi(long k, double alpha, double beta, double x) {
  detail::require(k >= 0, "jacobi: degree must be >= 0");
  detail::require(alpha > -1.0 && beta > -1.0, "jacobi: alpha, beta must be > -1");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
  const double ab = alpha + beta;
  for (long n = 2; n <= k; ++n) {
    const double dn = static_cast<double>(n);
    const double s = 2.0 * dn + ab;
    const double a1 = 2.0 * dn * (dn + ab) * (s - 2.0);
    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (dn + alpha - 1.0) * (dn + beta - 1.0) * s;
    const double next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Gauss hypergeometric 2F1(a, b; c; z) for |z| <= 1.
///
/// At z = 1 (with Re(c - a - b) > 0) the Gauss summation theorem is used
/// instead of the series.
inline HypergeomResult gauss_2f1(double a, double b, double c, cplx z, const SeriesControl& ctl = {}) {
  ctl.validate();
  const bool terminates = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
  detail::require(std::abs(z) <= 1.0, "gauss_2f1: |z| > 1 requires analytic continuation (unsupported)");

  const double excess = c - a - b;
  if (z == cplx{1.0, 0.0} && !terminates && !(excess > 0.0))
    throw DivergenceError("gauss_2f1: z = 1 requires Re(c - a - b) > 0");
  if (z == cplx{1.0, 0.0} && excess > 0.0) {
    const auto gc = detail::signed_lgamma(c);
    if (gc.sign == 0) throw DomainError("gauss_2f1: c is a non-positive integer");
    const auto ge = detail::signed_lgamma(excess);
    const auto gca = detail::signed_lgamma(c - a);
    const auto gcb = detail::signed_lgamma(c - b);
    if (gca.sign == 0 || gcb.sign == 0) return {cplx{0.0, 0.0}, 0, true};
    const double v = gc.sign * ge.sign * gca.sign * gcb.sign *
                     std::exp(gc.log_abs + ge.log_abs - gca.log_abs - gcb.log_abs);
    return {cplx{v, 0.0}, 0, true};
  }

  cplx sum{1.0, 0.0};
  cplx term{1.0, 0.0};
  int quiet = 0;
  for (long n = 0; n < ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    if (a + dn == 0.0 || b + dn == 0.0) return {sum, n + 1, true};
    if (c + dn == 0.0) throw DomainError("gauss_2f1: c is a non-positive integer");
    const double ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0));
    term *= ratio * z;
    sum += term;
    const bool small = std::abs(term) <= ctl.rel_tol * std::abs(sum) + ctl.abs_tol;
    const bool shrinking = std::abs(ratio * z) < 1.0;
    quiet = (small && shrinking) ? quiet + 1 : 0;
    if (quiet >= 3) return {sum, n + 2, true};
  }
  throw ConvergenceError("gauss_2f1: series did not converge", ctl.max_terms);
}

namespace detail {

// Sum over anti-diagonals j + k = n of outer_n * p_j * q_k, where
//   outer_{n+1} = outer_n * outer_ratio(n),
//   p_{j+1} = p_j * p_ratio(j) * u,  q_{k+1} = q_k * q_ratio(k) * v.
// Each anti-diagonal is accumulated pairwise, (j, n-j) with (n-j, j), so that
// swapping the roles of (p, u) and (q, v) reproduces the result bit for bit.
template <class OuterRatio, class PRatio, class QRatio>
HypergeomResult anti_diagonal_sum(OuterRatio outer_ratio, PRatio p_ratio, QRatio q_ratio, cplx u, cplx v,
                                  const SeriesControl& ctl, const char* name) {
  ctl.validate();
  std::vector<cplx> p{cplx{1.0, 0.0}};
  std::vector<cplx> q{cplx{1.0, 0.0}};
  cplx outer{1.0, 0.0};
  cplx sum{0.0, 0.0};
  int quiet = 0;
  for (long n = 0; n < ctl.max_terms; ++n) {
    if (n > 0) {
      const double r = outer_ratio(n - 1);
      if (std::isnan(r)) throw DomainError(std::string(name) + ": lower parameter is a non-positive integer");
      outer *= r;
      p.push_back(p.back() * p_ratio(n - 1) * u);
      q.push_back(q.back() * q_ratio(n - 1) * v);
    }
    if (outer == cplx{0.0, 0.0}) return {sum, n, true};
    cplx block{0.0, 0.0};
    const long half = n / 2;
    for (long j = 0; j < n - half; ++j) {
      const long k = n - j;
      block += p[j] * q[k] + p[k] * q[j];
    }
    if (n % 2 == 0) block += p[half] * q[half];
    block *= outer;
    sum += block;
    quiet = (std::abs(block) <= ctl.rel_tol * std::abs(sum) + ctl.abs_tol) ? quiet + 1 : 0;
    if (quiet >= 3) return {sum, n + 1, true};
  }
  throw ConvergenceError(std::string(name) + ": double series did not converge", ctl.max_terms);
}

inline double pochhammer_step(double a, long n) { return a + static_cast<double>(n); }

}  // namespace detail

/// Appell F1(a; b1, b2; c; u, v) = sum (a)_{j+k} (b1)_j (b2)_k / (j! k! (c)_{j+k}) u^j v^k.
inline HypergeomResult appell_f1(double a, double b1, double b2, double c, cplx u, cplx v,
                                 const SeriesControl& ctl = {}) {
  const bool outer_stops = detail::is_nonpositive_integer(a);
  const bool u_ok = std::abs(u) < 1.0 || outer_stops || detail::is_nonpositive_integer(b1);
  const bool v_ok = std::abs(v) < 1.0 || outer_stops || detail::is_nonpositive_integer(b2);
  detail::require(u_ok && v_ok, "appell_f1: need |u| < 1 and |v| < 1 unless the series terminates");
  auto outer = [=](long n) {
    const double den = detail::pochhammer_step(c, n);
    if (den == 0.0 && detail::pochhammer_step(a, n) != 0.0) return std::numeric_limits<double>::quiet_NaN();
    return den == 0.0 ? 0.0 : detail::pochhammer_step(a, n) / den;
  };
  auto pr = [=](long j) { return detail::pochhammer_step(b1, j) / static_cast<double>(j + 1); };
  auto qr = [=](long k) { return detail::pochhammer_step(b2, k) / static_cast<double>(k + 1); };
  return detail::anti_diagonal_sum(outer, pr, qr, u, v, ctl, "appell_f1");
}

/// Appell F3(a, a2; b1, b2; c; u, v) = sum (a)_j (a2)_k (b1)_j (b2)_k / (j! k! (c)_{j+k}) u^j v^k.
inline HypergeomResult appell_f3(double a, double a2, double b1, double b2, double c, cplx u, cplx v,
                                 const SeriesControl& ctl = {}) {
  const bool u_ok = std::abs(u) < 1.0 || detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b1);
  const bool v_ok = std::abs(v) < 1.0 || detail::is_nonpositive_integer(a2) || detail::is_nonpositive_integer(b2);
  detail::require(u_ok && v_ok, "appell_f3: need |u| < 1 and |v| < 1 unless the series terminates");
  auto outer = [=](long n) {
    const double den = detail::pochhammer_step(c, n);
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 / den;
  };
  auto pr = [=](long j) {
    return detail::pochhammer_step(a, j) * detail::pochhammer_step(b1, j) / static_cast<double>(j + 1);
  };
  auto qr = [=](long k) {
    return detail::pochhammer_step(a2, k) * detail::pochhammer_step(b2, k) / static_cast<double>(k + 1);
  };
  return detail::anti_diagonal_sum(outer, pr, qr, u, v, ctl, "appell_f3");
}

}  // namespace nbsloc
