#pragma once

// Spectral data of the localization operator: radial-symbol eigenvalues,
// the disk-indicator eigenvalues I_{R^2}(j+1, 2B-1), Beta/Jacobi densities,
// Monte-Carlo cross-checks and the photon-counting leakage bound.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nbsloc/errors.hpp"
#include "nbsloc/quadrature.hpp"
#include "nbsloc/sampling.hpp"
#include "nbsloc/specfun.hpp"
#include "nbsloc/states.hpp"

namespace nbsloc {

/// Bounded classical observable F(rho), rho = |z|^2 in [0, 1).
///
/// `breakpoints` lists jump locations in (0, 1); integration is split there
/// so piecewise-smooth symbols such as indicators integrate to full accuracy.
struct RadialSymbol {
  std::function<double(double)> F;
  double bound = 1.0;
  std::vector<double> breakpoints;

  static RadialSymbol constant(double c) { return {[c](double) { return c; }, std::abs(c), {}}; }

  /// Indicator of the disk D_R, i.e. F(rho) = 1 for rho < R^2.
  static RadialSymbol disk_indicator(LocalizationRadius R) {
    const double s = R.s();
    return {[s](double rho) { return rho < s ? 1.0 : 0.0; }, 1.0, {s}};
  }
};

/// lambda_j^{B,F} = (1/B(j+1, 2B-1)) int_0^1 rho^j (1-rho)^{2B-2} F(rho) d rho.
inline double radial_eigenvalue(const RadialSymbol& symbol, long j, double B, long n_nodes = 64) {
  detail::require_weight(B);
  detail::require(j >= 0, "radial_eigenvalue: j must be >= 0");
  detail::require(static_cast<bool>(symbol.F), "radial_eigenvalue: empty symbol");
  detail::require(std::isfinite(symbol.bound) && symbol.bound >= 0.0,
                  "radial_eigenvalue: symbol must be bounded (finite bound)");
  const long n = std::max(n_nodes, j + 16);
  auto integrand = [&](double rho) {
    const double f = symbol.F(rho);
    if (!(std::abs(f) <= symbol.bound)) throw DomainError("radial_eigenvalue: |F(rho)| exceeds the declared bound");
    return std::pow(rho, static_cast<double>(j)) * f;
  };
  double acc = 0.0;
  if (symbol.breakpoints.empty()) {
    acc = radial_jacobi_grid(n, B).integrate(integrand);
  } else {
    std::vector<double> cuts{0.0};
    for (double b : symbol.breakpoints) {
      detail::require(b > 0.0 && b < 1.0, "radial_eigenvalue: breakpoints must lie in (0, 1)");
      cuts.push_back(b);
    }
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      acc += radial_segment_grid(cuts[i], cuts[i + 1], 2.0 * B - 2.0, n / 2 + 8).integrate(integrand);
  }
  return acc / beta(static_cast<double>(j) + 1.0, 2.0 * B - 1.0);
}

/// Spectral function n -> I_{R^2}(n, 2B - 1) of H_B (eigenvalues n = j + 1).
inline double as_function_of_hamiltonian(long n, double B, LocalizationRadius R) {
  detail::require_weight(B);
  detail::require(n >= 1, "as_function_of_hamiltonian: n must be >= 1");
  return reg_inc_beta(R.s(), static_cast<double>(n), 2.0 * B - 1.0);
}

/// lambda_j^{B,R} = I_{R^2}(j + 1, 2B - 1).
inline double disk_eigenvalue(long j, double B, LocalizationRadius R) {
  detail::require(j >= 0, "disk_eigenvalue: j must be >= 0");
  return as_function_of_hamiltonian(j + 1, B, R);
}

/// Beta(j+1, 2B-1) density Gamma(2B+j)/(Gamma(2B-1) j!) (1-rho)^{2B-2} rho^j.
inline double beta_density(long j, double B, double rho) {
  detail::require_weight(B);
  detail::require(j >= 0, "beta_density: j must be >= 0");
  detail::require(rho >= 0.0 && rho < 1.0, "beta_density: rho must lie in [0, 1)");
  const double dj = static_cast<double>(j);
  const double c = std::exp(log_gamma(2.0 * B + dj) - log_gamma(2.0 * B - 1.0) - log_gamma(dj + 1.0));
  return c * std::pow(1.0 - rho, 2.0 * B - 2.0) * std::pow(rho, dj);
}

namespace detail {

inline void require_nondegenerate_level(const ModelParams& p) {
  require(2.0 * (p.B() - p.m()) - 1.0 > 0.0,
          "Landau level m = B - 1/2 is degenerate: the density (1-rho)^{2B-2m-2} is not integrable");
}

// Density g^(m) split as weight (1-rho)^{2B-2m-2} times a polynomial part.
struct HigherDensityParts {
  double coef;
  long lo;
  long gap;
  double jac_beta;
  double weight_exp;

  double polynomial(double rho) const {
    const double p = jacobi(lo, static_cast<double>(gap), jac_beta, 1.0 - 2.0 * rho);
    return coef * std::pow(rho, static_cast<double>(gap)) * p * p;
  }
};

inline HigherDensityParts higher_density_parts(long j, const ModelParams& params) {
  require(j >= 0, "higher_density: j must be >= 0");
  require_nondegenerate_level(params);
  const double B = params.B();
  const long m = params.m();
  const long lo = std::min(m, j), hi = std::max(m, j);
  const double shift = 2.0 * B - 2.0 * static_cast<double>(m);
  const double coef = (shift - 1.0) * std::exp(log_gamma(static_cast<double>(lo) + 1.0) -
                                               log_gamma(static_cast<double>(hi) + 1.0) +
                                               log_gamma(shift + static_cast<double>(hi)) -
                                               log_gamma(shift + static_cast<double>(lo)));
  return {coef, lo, hi - lo, shift - 1.0, shift - 2.0};
}

}  // namespace detail

/// Higher-Landau-level density g^(m)_{B,j}(rho).
inline double higher_density(long j, const ModelParams& params, double rho) {
  detail::require(rho >= 0.0 && rho < 1.0, "higher_density: rho must lie in [0, 1)");
  const auto parts = detail::higher_density_parts(j, params);
  return std::pow(1.0 - rho, parts.weight_exp) * parts.polynomial(rho);
}

/// Total mass int_0^1 g^(m)_{B,j}, by Gauss-Jacobi with the (1-rho)^{2B-2m-2} weight.
inline double higher_density_mass(long j, const ModelParams& params) {
  const auto parts = detail::higher_density_parts(j, params);
  const long n = (parts.gap + 2 * parts.lo) / 2 + 8;
  return jacobi_unit_grid(n, parts.weight_exp).integrate([&](double rho) { return parts.polynomial(rho); });
}

/// lambda_j^{B,R,m} = int_0^{R^2} g^(m)_{B,j}(rho) d rho.
inline double higher_eigenvalue(long j, const ModelParams& params, LocalizationRadius R) {
  const auto parts = detail::higher_density_parts(j, params);
  const long n = (parts.gap + 2 * parts.lo) / 2 + 16;
  const double v = radial_segment_grid(0.0, R.s(), parts.weight_exp, n).integrate([&](double rho) {
    return parts.polynomial(rho);
  });
  return std::clamp(v, 0.0, 1.0);
}

/// Eigenvalue table {(j, lambda_j)} for fixed (B, R, m), filled lazily.
///
/// Copies share one cache. Concurrent first access is safe: the fill is
/// idempotent and guarded by a mutex.
class SpectralData {
 public:
  SpectralData(ModelParams params, LocalizationRadius R)
      : params_(params), R_(R), cache_(std::make_shared<Cache>()) {}

  double B() const { return params_.B(); }
  int m() const { return params_.m(); }
  LocalizationRadius radius() const { return R_; }
  const ModelParams& params() const { return params_; }

  double lambda(long j) const {
    detail::require(j >= 0, "SpectralData: index must be >= 0");
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      if (static_cast<std::size_t>(j) < cache_->values.size()) return cache_->values[static_cast<std::size_t>(j)];
    }
    std::vector<double> fresh;
    std::size_t start;
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      start = cache_->values.size();
    }
    for (std::size_t k = start; k <= static_cast<std::size_t>(j); ++k) fresh.push_back(compute(static_cast<long>(k)));
    std::lock_guard<std::mutex> lock(cache_->mu);
    for (std::size_t k = cache_->values.size(); k <= static_cast<std::size_t>(j); ++k)
      cache_->values.push_back(fresh[k - start]);
    return cache_->values[static_cast<std::size_t>(j)];
  }

  std::vector<std::pair<long, double>> eigenvalues(long j_max) const {
    std::vector<std::pair<long, double>> out;
    for (long j = 0; j <= j_max; ++j) out.emplace_back(j, lambda(j));
    return out;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::vector<double> values;
  };

  double compute(long j) const {
    return params_.m() == 0 ? disk_eigenvalue(j, params_.B(), R_) : higher_eigenvalue(j, params_, R_);
  }

  ModelParams params_;
  LocalizationRadius R_;
  std::shared_ptr<Cache> cache_;
};

/// Action of the localization operator on {l_j}-basis coefficients: c_j -> lambda_j c_j.
inline std::vector<cplx> spectral_apply(const std::vector<cplx>& coeffs, const SpectralData& spec) {
  std::vector<cplx> out(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) out[j] = spec.lambda(static_cast<long>(j)) * coeffs[j];
  return out;
}

struct McEstimate {
  double estimate;
  double std_error;
};

/// Empirical Pr(Y <= R^2) with Y ~ Beta(j+1, 2B-1); only the m = 0 level is sampleable.
inline McEstimate mc_eigenvalue(long j, const ModelParams& params, LocalizationRadius R, long n_samples,
                                std::uint64_t seed) {
  if (params.m() != 0)
    throw UnsupportedError("mc_eigenvalue: sampling exists only for m = 0; use higher_eigenvalue for m > 0");
  detail::require(j >= 0, "mc_eigenvalue: j must be >= 0");
  detail::require(n_samples >= 100, "mc_eigenvalue: n_samples must be >= 100");
  // Same variate stream as sample_beta(j + 1, 2B - 1, n_samples, seed).
  VariateStream stream(seed);
  const double a = static_cast<double>(j) + 1.0, b = 2.0 * params.B() - 1.0, s = R.s();
  long hits = 0;
  for (long i = 0; i < n_samples; ++i)
    if (stream.beta(a, b) <= s) ++hits;
  const double n = static_cast<double>(n_samples);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

/// sqrt(E[(I_{R^2}(X+1, 2B-1))^2]) with X ~ NB(2B, |z0|^2).
///
/// Summation stops once both the pmf term and the upper tail Pr(X > j) fall
/// below tail_tol; the I-factors are <= 1 so the neglected mass bounds the error.
inline double leakage_bound(DiskPoint z0, double B, LocalizationRadius R, double tail_tol = 1e-14,
                            long max_terms = 10000000) {
  detail::require_weight(B);
  detail::require(tail_tol > 0.0, "leakage_bound: tail_tol must be > 0");
  const double p = z0.norm2();
  double acc = 0.0;
  for (long j = 0; j < max_terms; ++j) {
    const double pmf = nb_pmf(j, B, p);
    const double lam = disk_eigenvalue(j, B, R);
    acc += lam * lam * pmf;
    // Pr(X > j) = I_p(j + 1, 2B) for the negative binomial law.
    const double tail = p == 0.0 ? 0.0 : reg_inc_beta(p, static_cast<double>(j) + 1.0, 2.0 * B);
    if (pmf < tail_tol && tail < tail_tol) return std::sqrt(acc);
    if (p == 0.0) return std::sqrt(acc);
  }
  throw ConvergenceError("leakage_bound: negative binomial tail did not fall below tail_tol", max_terms);
}

/// |<kappa~_{z0}, P_R f>| for f = sum_j c_j l_j, in closed form.
inline double leakage_lhs(DiskPoint z0, double B, LocalizationRadius R, const std::vector<cplx>& coeffs) {
  detail::require_weight(B);
  const double front = std::pow(1.0 - z0.norm2(), B);
  const cplx zc = std::conj(z0.z());
  cplx acc{0.0, 0.0};
  cplx power{1.0, 0.0};
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const long jj = static_cast<long>(j);
    acc += disk_eigenvalue(jj, B, R) * std::sqrt(negbin_coeff(jj, 2.0 * B)) * power * coeffs[j];
    power *= zc;
  }
  return front * std::abs(acc);
}

/// Unit-norm coefficients (support 0..J) aligned with the Cauchy-Schwarz
/// extremal vector, for which leakage_lhs approaches leakage_bound.
inline std::vector<cplx> leakage_extremal(DiskPoint z0, double B, LocalizationRadius R, long J) {
  detail::require(J >= 0, "leakage_extremal: J must be >= 0");
  std::vector<cplx> a(static_cast<std::size_t>(J + 1));
  double norm2 = 0.0;
  cplx power{1.0, 0.0};
  for (long j = 0; j <= J; ++j) {
    a[static_cast<std::size_t>(j)] = std::conj(disk_eigenvalue(j, B, R) * std::sqrt(negbin_coeff(j, 2.0 * B)) * power);
    norm2 += std::norm(a[static_cast<std::size_t>(j)]);
    power *= std::conj(z0.z());
  }
  const double n = std::sqrt(norm2);
  for (auto& c : a) c /= n;
  return a;
}

/// Matrix elements [gamma_F]_{j,k}, j, k <= j_max, of the quantized symbol F(z)
/// (not necessarily radial) by disk quadrature:
/// (1/(pi Gamma(2B-1))) sqrt(Gamma(2B+j) Gamma(2B+k)/(j! k!)) int conj(z)^j z^k (1-|z|^2)^{2B-2} F d eta.
inline Eigen::MatrixXcd matrix_elements(const std::function<cplx(cplx)>& F, double B, long j_max,
                                        const DiskGrid& grid) {
  detail::require_weight(B);
  detail::require(j_max >= 0, "matrix_elements: j_max must be >= 0");
  const long n = j_max + 1;
  std::vector<double> scale(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j)
    scale[static_cast<std::size_t>(j)] =
        std::exp(0.5 * (log_gamma(2.0 * B + j) - log_gamma(static_cast<double>(j) + 1.0)));
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  std::vector<cplx> zp(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < grid.radial.size(); ++i) {
    const double r = std::sqrt(grid.radial.nodes[i]);
    for (std::size_t t = 0; t < grid.angular.size(); ++t) {
      const cplx z = std::polar(r, grid.angular.nodes[t]);
      const cplx w = 0.5 * grid.radial.weights[i] * grid.angular.weights[t] * F(z);
      zp[0] = 1.0;
      for (long k = 1; k < n; ++k) zp[static_cast<std::size_t>(k)] = zp[static_cast<std::size_t>(k - 1)] * z;
      for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k)
          acc(j, k) += std::conj(zp[static_cast<std::size_t>(j)]) * zp[static_cast<std::size_t>(k)] * w;
    }
  }
  const double front = 1.0 / (std::numbers::pi * std::exp(log_gamma(2.0 * B - 1.0)));
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k)
      acc(j, k) *= front * scale[static_cast<std::size_t>(j)] * scale[static_cast<std::size_t>(k)];
  return acc;
}

}  // namespace nbsloc
