#pragma once

// Self-check suite: every library invariant as a named check with a measured
// error and a fixed tolerance. Random draws come from the configured seed, so
// a given VerifyConfig always produces the same report.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nbsloc/bergman.hpp"
#include "nbsloc/errors.hpp"
#include "nbsloc/locop.hpp"
#include "nbsloc/quadrature.hpp"
#include "nbsloc/sampling.hpp"
#include "nbsloc/specfun.hpp"
#include "nbsloc/states.hpp"

namespace nbsloc {

struct VerifyConfig {
  double B = 1.5;
  double R = 0.6;
  int m = 0;
  std::uint64_t seed = 42;
  long mc_samples = 1000000;
};

struct CheckResult {
  std::string id;
  std::string description;
  bool passed;
  double measured;  // NaN when the check threw
  double tolerance;
  std::string error;
};

namespace detail {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : stream_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * stream_.uniform(); }
  cplx in_disk(double rmax) {
    const double r = rmax * std::sqrt(stream_.uniform());
    return std::polar(r, 2.0 * std::numbers::pi * stream_.uniform());
  }
  std::vector<cplx> unit_vector(std::size_t n) {
    std::vector<cplx> v(n);
    double s = 0.0;
    for (auto& c : v) {
      c = {stream_.normal(), stream_.normal()};
      s += std::norm(c);
    }
    for (auto& c : v) c /= std::sqrt(s);
    return v;
  }
  std::uint64_t next_seed() { return static_cast<std::uint64_t>(stream_.uniform() * 9007199254740992.0); }

 private:
  VariateStream stream_;
};

inline double rel_err(cplx a, cplx b) {
  const double d = std::max(std::abs(a), std::abs(b));
  return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

inline double gram_error(const std::function<double(long, double)>& basis, long J, const QuadratureGrid& grid) {
  double worst = 0.0;
  for (long j = 0; j <= J; ++j)
    for (long k = j; k <= J; ++k) {
      const double v = grid.integrate([&](double x) { return basis(j, x) * basis(k, x); });
      worst = std::max(worst, std::abs(v - (j == k ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace detail

/// Runs every check; checks never throw, failures are recorded in the result.
inline std::vector<CheckResult> run_verification(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  detail::Draws draws(cfg.seed);
  auto check = [&](const std::string& id, const std::string& desc, double tol, const std::function<double()>& body) {
    CheckResult r{id, desc, false, std::numeric_limits<double>::quiet_NaN(), tol, {}};
    try {
      r.measured = body();
      r.passed = r.measured <= tol;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  };

  // specfun
  check("specfun.ibeta_reflection", "I_x(a,b) + I_{1-x}(b,a) = 1 on 200 random draws", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = draws.uniform(0.0, 1.0), a = draws.uniform(0.05, 30.0), b = draws.uniform(0.05, 30.0);
      worst = std::max(worst, std::abs(reg_inc_beta(x, a, b) + reg_inc_beta(1.0 - x, b, a) - 1.0));
    }
    return worst;
  });
  check("specfun.laguerre_generating_function", "sum_{j<=60} t^j L_j^(alpha)(x) vs generating function", 1e-9, [&] {
    double worst = 0.0;
    for (double alpha : {-0.5, 0.0, 1.5, 3.0})
      for (double x : {0.5, 2.0})
        for (double t : {0.1, 0.4}) {
          double acc = 0.0, tp = 1.0;
          for (long j = 0; j <= 60; ++j, tp *= t) acc += tp * laguerre(j, alpha, x);
          const double exact = std::pow(1.0 - t, -alpha - 1.0) * std::exp(-t * x / (1.0 - t));
          worst = std::max(worst, std::abs(acc - exact) / std::abs(exact));
        }
    return worst;
  });
  check("specfun.gauss_theorem", "2F1(2-2B, 1; 2; 1) = 1/(2B-1), B in {0.75, 1, 1.5, 2.5, 4}", 1e-10, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.0, 1.5, 2.5, 4.0})
      worst = std::max(worst, std::abs(gauss_2f1(2.0 - 2.0 * B, 1.0, 2.0, 1.0).value.real() - 1.0 / (2.0 * B - 1.0)));
    return worst;
  });
  check("specfun.gauss_limit", "2F1 at z = 1 - 10^-k approaches the Gauss value monotonically, k = 2..5", 0.0, [&] {
    SeriesControl ctl;
    ctl.max_terms = 10000000;
    double violations = 0.0;
    const double params[3][3] = {{-0.5, 1.0, 2.0}, {0.3, 0.4, 2.5}, {-1.5, 0.5, 3.0}};
    for (const auto& p : params) {
      const double g = gauss_2f1(p[0], p[1], p[2], 1.0).value.real();
      double prev = std::numeric_limits<double>::infinity();
      for (int k = 2; k <= 5; ++k) {
        const double d = std::abs(gauss_2f1(p[0], p[1], p[2], 1.0 - std::pow(10.0, -k), ctl).value.real() - g);
        if (!(d < prev)) violations += 1.0;
        prev = d;
      }
    }
    return violations;
  });
  auto f1_draw = [&](double arg_max) {
    struct P {
      double a, b1, b2, c;
      cplx u, v;
    };
    return P{draws.uniform(-1.0, 1.5), draws.uniform(-1.0, 1.5), draws.uniform(-1.0, 1.5), draws.uniform(1.0, 3.0),
             draws.in_disk(arg_max), draws.in_disk(arg_max)};
  };
  check("specfun.f1_diagonal", "F1(a,b,b';c;z,z) = 2F1(a,b+b';c;z) on 20 random draws", 1e-9, [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto p = f1_draw(0.6);
      worst = std::max(worst, detail::rel_err(appell_f1(p.a, p.b1, p.b2, p.c, p.u, p.u).value,
                                              gauss_2f1(p.a, p.b1 + p.b2, p.c, p.u).value));
    }
    return worst;
  });
  check("specfun.f1_euler_first", "F1(a,b1,b2;c;X,Y) = (1-X)^-b1 (1-Y)^-b2 F1(c-a,b1,b2;c;X/(X-1),Y/(Y-1))", 1e-9,
        [&] {
          double worst = 0.0;
          for (int i = 0; i < 20; ++i) {
            const auto p = f1_draw(0.3);
            const cplx one{1.0, 0.0};
            const cplx lhs = appell_f1(p.a, p.b1, p.b2, p.c, p.u, p.v).value;
            const cplx rhs = principal_pow(one - p.u, -p.b1) * principal_pow(one - p.v, -p.b2) *
                             appell_f1(p.c - p.a, p.b1, p.b2, p.c, p.u / (p.u - one), p.v / (p.v - one)).value;
            worst = std::max(worst, detail::rel_err(lhs, rhs));
          }
          return worst;
        });
  check("specfun.f1_euler_second",
        "F1(a,b,b';c;u,z) = (1-u)^(c-a-b) (1-z)^-b' F1(c-a,c-b-b',b';c;u,(u-z)/(1-z))", 1e-9, [&] {
          double worst = 0.0;
          for (int i = 0; i < 20; ++i) {
            const auto p = f1_draw(0.3);
            const cplx one{1.0, 0.0};
            const cplx lhs = appell_f1(p.a, p.b1, p.b2, p.c, p.u, p.v).value;
            const cplx rhs = principal_pow(one - p.u, p.c - p.a - p.b1) * principal_pow(one - p.v, -p.b2) *
                             appell_f1(p.c - p.a, p.c - p.b1 - p.b2, p.b2, p.c, p.u, (p.u - p.v) / (one - p.v)).value;
            worst = std::max(worst, detail::rel_err(lhs, rhs));
          }
          return worst;
        });
  check("specfun.f3_to_f1", "F3(a,a',b,b';a+a';w,z) = (1-z)^-b' F1(a,b,b';a+a';w,z/(z-1)) on 20 draws", 1e-9, [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double a = draws.uniform(-1.0, 1.5), a2 = draws.uniform(-1.0, 1.5);
      const double b = draws.uniform(-1.0, 1.5), b2 = draws.uniform(-1.0, 1.5);
      const double c = a + a2;
      if (c <= 0.2) continue;
      const cplx w = draws.in_disk(0.3), z = draws.in_disk(0.3);
      const cplx one{1.0, 0.0};
      const cplx lhs = appell_f3(a, a2, b, b2, c, w, z).value;
      const cplx rhs = principal_pow(one - z, -b2) * appell_f1(a, b, b2, c, w, z / (z - one)).value;
      worst = std::max(worst, detail::rel_err(lhs, rhs));
    }
    return worst;
  });
  check("specfun.f1_symmetry", "F1(a,b,b';c;z,u) == F1(a,b',b;c;u,z) bit for bit on 20 draws", 0.0, [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto p = f1_draw(0.6);
      const cplx l = appell_f1(p.a, p.b1, p.b2, p.c, p.u, p.v).value;
      const cplx r = appell_f1(p.a, p.b2, p.b1, p.c, p.v, p.u).value;
      worst = std::max(worst, std::abs(l - r));
    }
    return worst;
  });
  check("sampling.beta_mean", "Beta(2,3) sample mean within 4 standard errors of 0.4 (n = 1e5)", 4.0, [&] {
    const auto xs = sample_beta(2.0, 3.0, 100000, draws.next_seed());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    const double sd = std::sqrt(2.0 * 3.0 / (25.0 * 6.0));
    return std::abs(mean - 0.4) / (sd / std::sqrt(static_cast<double>(xs.size())));
  });

  // quadrature
  check("quadrature.radial_exactness", "radial grid integrates rho^j (1-rho)^{2B-2} exactly for j <= 2n-1", 1e-12, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.0, 1.5, 3.0}) {
      const auto g = radial_jacobi_grid(12, B);
      for (long j = 0; j <= 23; ++j) {
        const double exact = beta(static_cast<double>(j) + 1.0, 2.0 * B - 1.0);
        const double v = g.integrate([&](double r) { return std::pow(r, static_cast<double>(j)); });
        worst = std::max(worst, std::abs(v - exact) / exact);
      }
    }
    return worst;
  });
  check("quadrature.laguerre_gram", "Gram matrix of l_j^B, j <= 20, is the identity for B in {0.8, 1.5, 3}", 1e-8, [&] {
    double worst = 0.0;
    for (double B : {0.8, 1.5, 3.0}) {
      const auto g = half_line_grid(600, default_half_line_cutoff(20, B));
      worst = std::max(worst, detail::gram_error([&](long j, double x) { return laguerre_fn(j, B, x); }, 20, g));
    }
    return worst;
  });
  check("quadrature.hamiltonian", "finite-difference residual of H_B l_j = (j+1) l_j, j <= 5, B in {0.8, 1.5}", 1e-3,
        [&] {
          double worst = 0.0;
          for (double B : {0.8, 1.5})
            for (long j = 0; j <= 5; ++j) worst = std::max(worst, hamiltonian_residual(j, B));
          return worst;
        });
  check("quadrature.bergman_orthonormality", "(1/pi) int conj(C_j) C_k (1-|z|^2)^{2B-2} = delta_jk, j,k <= 8, B = 1.5",
        1e-10, [&] {
          const double B = 1.5;
          const auto g = disk_grid(16, 32, B);
          double worst = 0.0;
          for (long j = 0; j <= 8; ++j)
            for (long k = 0; k <= 8; ++k) {
              const cplx v = bergman_inner([&](cplx z) { return coeff_C(j, B, DiskPoint(z)); },
                                           [&](cplx z) { return coeff_C(k, B, DiskPoint(z)); }, g);
              worst = std::max(worst, std::abs(v - (j == k ? 1.0 : 0.0)));
            }
          return worst;
        });

  // states
  check("states.resolution_of_identity", "int <f,kappa_z><kappa_z,g> d eta_B = <f,g> on span{l_j}, j <= 6", 1e-8, [&] {
    double worst = 0.0;
    for (double B : {0.8, 1.5, 2.5}) {
      const auto g = disk_grid(16, 32, B);
      for (int t = 0; t < 3; ++t) {
        const auto f = draws.unit_vector(7), h = draws.unit_vector(7);
        cplx exact{0.0, 0.0};
        for (std::size_t j = 0; j < 7; ++j) exact += std::conj(f[j]) * h[j];
        // Overlaps with the (1-|z|^2)^B factors stripped; they form the grid weight.
        const cplx v = g.integrate([&](cplx z) {
          cplx fz{0.0, 0.0}, gz{0.0, 0.0};
          for (long j = 0; j < 7; ++j) {
            const double c = std::sqrt(negbin_coeff(j, 2.0 * B));
            fz += std::conj(f[static_cast<std::size_t>(j)]) * c * std::pow(z, static_cast<int>(j));
            gz += h[static_cast<std::size_t>(j)] * c * std::pow(std::conj(z), static_cast<int>(j));
          }
          return fz * gz;
        });
        worst = std::max(worst, std::abs((2.0 * B - 1.0) / std::numbers::pi * v - exact));
      }
    }
    return worst;
  });
  check("states.overlap", "half-line quadrature of <kappa_z, kappa_w> matches the closed form", 1e-10, [&] {
    double worst = 0.0;
    for (double B : {0.8, 1.25, 2.0}) {
      const auto g = half_line_grid(600, 30.0);
      for (int t = 0; t < 4; ++t) {
        const DiskPoint z(draws.in_disk(0.6)), w(draws.in_disk(0.6));
        const cplx q = g.integrate(
            [&](double x) { return cplx(std::conj(nbs_wavefunction(z, B, x)) * nbs_wavefunction(w, B, x)); });
        worst = std::max(worst, std::abs(q - nbs_overlap(z, w, B)));
      }
    }
    return worst;
  });
  check("states.expansion_convergence", "number-state expansion error decreases in J and is below 1e-10 at J = 120",
        1e-10, [&] {
          const double B = 1.25;
          const DiskPoint z(draws.in_disk(0.7));
          double prev = std::numeric_limits<double>::infinity(), err = 0.0;
          for (long J : {10L, 20L, 40L, 80L, 120L}) {
            err = 0.0;
            for (double x = 0.25; x <= 4.0; x += 0.25)
              err = std::max(err, std::abs(nbs_expansion(z, B, x, J) - nbs_wavefunction(z, B, x)));
            if (!(err < prev || err < 1e-14)) return std::numeric_limits<double>::infinity();
            prev = err;
          }
          return err;
        });
  check("states.cayley_route", "NBS via the Cayley transform of the affine state equals the closed form", 1e-12, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.5, 3.0})
      for (int t = 0; t < 5; ++t) {
        const DiskPoint z(draws.in_disk(0.9));
        const double x = draws.uniform(0.2, 3.0);
        worst = std::max(worst, std::abs(nbs_via_cayley(z, B, x) - nbs_wavefunction(z, B, x)));
      }
    return worst;
  });
  check("states.negbin_identities", "negative binomial pmf sums to 1 and has mean 2Bp/(1-p)", 1e-10, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.25, 1.5})
      for (double p : {0.1, 0.3, 0.4}) {
        double mass = 0.0, mean = 0.0;
        for (long j = 0; j < 2000; ++j) {
          const double q = nb_pmf(j, B, p);
          mass += q;
          mean += static_cast<double>(j) * q;
        }
        worst = std::max({worst, std::abs(mass - 1.0), std::abs(mean - 2.0 * B * p / (1.0 - p))});
      }
    return worst;
  });

  // locop
  check("locop.eigenvalue_bounds", "0 <= lambda_j <= 1 and lambda_{j+1} < lambda_j, j <= 50", 0.0, [&] {
    double violations = 0.0;
    for (double B : {0.8, 1.0, 1.5, 3.0})
      for (double R : {0.3, 0.6, 0.9}) {
        const LocalizationRadius r(R);
        double prev = 2.0;
        for (long j = 0; j <= 50; ++j) {
          const double l = disk_eigenvalue(j, B, r);
          if (!(l >= 0.0 && l <= 1.0 && (l < prev || (l == 0.0 && prev == 0.0)))) violations += 1.0;
          prev = l;
        }
      }
    return violations;
  });
  check("locop.b1_powers", "lambda_j^{1,R} = (R^2)^{j+1}, j <= 20", 1e-12, [&] {
    double worst = 0.0;
    for (double R : {0.3, 0.5, 0.9})
      for (long j = 0; j <= 20; ++j)
        worst = std::max(worst, std::abs(disk_eigenvalue(j, 1.0, LocalizationRadius(R)) -
                                         std::pow(R * R, static_cast<double>(j + 1))));
    return worst;
  });
  check("locop.function_of_hamiltonian", "I_{R^2}(n, 2B-1) at n = j+1 equals lambda_j exactly", 0.0, [&] {
    double worst = 0.0;
    for (long j = 0; j <= 30; ++j)
      worst = std::max(worst, std::abs(as_function_of_hamiltonian(j + 1, cfg.B, LocalizationRadius(cfg.R)) -
                                       disk_eigenvalue(j, cfg.B, LocalizationRadius(cfg.R))));
    return worst;
  });
  check("locop.restricted_norm", "lambda_j = ||C_j 1_{D_R}||^2 by restricted disk quadrature", 1e-8, [&] {
    double worst = 0.0;
    for (double B : {0.8, 1.5, 2.5}) {
      const double R = 0.6;
      const auto g = disk_grid_restricted(24, 48, B, R);
      for (long j = 0; j <= 8; ++j) {
        const cplx v = bergman_inner([&](cplx z) { return coeff_C(j, B, DiskPoint(z)); },
                                     [&](cplx z) { return coeff_C(j, B, DiskPoint(z)); }, g);
        worst = std::max(worst, std::abs(v - disk_eigenvalue(j, B, LocalizationRadius(R))));
      }
    }
    return worst;
  });
  check("locop.radial_symbol", "radial_eigenvalue of the disk indicator equals I_{R^2}(j+1, 2B-1)", 1e-10, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.25, 3.0})
      for (long j = 0; j <= 10; ++j)
        worst = std::max(worst, std::abs(radial_eigenvalue(RadialSymbol::disk_indicator(LocalizationRadius(cfg.R)),
                                                           j, B) -
                                         disk_eigenvalue(j, B, LocalizationRadius(cfg.R))));
    return worst;
  });
  check("locop.radial_matrix_diagonal", "matrix elements of a radial symbol vanish off the diagonal, j,k <= 8", 1e-10,
        [&] {
          const auto g = disk_grid(24, 48, 1.5);
          const auto M = matrix_elements([](cplx z) { return cplx(std::exp(-std::norm(z))); }, 1.5, 8, g);
          double worst = 0.0;
          for (long j = 0; j <= 8; ++j)
            for (long k = 0; k <= 8; ++k)
              if (j != k) worst = std::max(worst, std::abs(M(j, k)));
          return worst;
        });
  check("locop.density_mass", "int_0^1 g^(m)_{B,j} = 1 for (B,m) in {(1.5,0),(2.5,1),(3,2)}, j in {0,1,4}", 1e-9, [&] {
    double worst = 0.0;
    const std::pair<double, int> levels[3] = {{1.5, 0}, {2.5, 1}, {3.0, 2}};
    for (const auto& [B, m] : levels)
      for (long j : {0L, 1L, 4L}) worst = std::max(worst, std::abs(higher_density_mass(j, ModelParams(B, m)) - 1.0));
    return worst;
  });
  check("locop.density_reduction", "g^(0) equals the Beta(j+1, 2B-1) density on a 100-point grid", 1e-12, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.5, 2.5})
      for (long j : {0L, 2L, 7L})
        for (int i = 0; i < 100; ++i) {
          const double rho = (i + 0.5) / 100.0;
          const double a = higher_density(j, ModelParams(B, 0), rho), b = beta_density(j, B, rho);
          worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
    return worst;
  });
  check("locop.monte_carlo", "MC eigenvalue within 4 standard errors of I_{R^2}(j+1, 2B-1) on 10 draws", 4.0, [&] {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const long j = static_cast<long>(draws.uniform(0.0, 6.0));
      const double B = draws.uniform(0.75, 3.0), R = draws.uniform(0.3, 0.9);
      const auto mc = mc_eigenvalue(j, ModelParams(B), LocalizationRadius(R), cfg.mc_samples, draws.next_seed());
      worst = std::max(worst, std::abs(mc.estimate - disk_eigenvalue(j, B, LocalizationRadius(R))) / mc.std_error);
    }
    return worst;
  });
  check("locop.monte_carlo_rate", "MC standard error halves when n quadruples (ratio within 10% of 2)", 0.1, [&] {
    const auto a = mc_eigenvalue(1, ModelParams(1.5), LocalizationRadius(0.6), 50000, draws.next_seed());
    const auto b = mc_eigenvalue(1, ModelParams(1.5), LocalizationRadius(0.6), 200000, draws.next_seed());
    return std::abs(a.std_error / b.std_error - 2.0) / 2.0;
  });
  check("locop.leakage_inequality", "|<kappa_z0, P_R f>| <= bound * ||f|| on 50 random unit f, support <= 10", 0.0,
        [&] {
          const DiskPoint z0(0.5, 0.3);
          const LocalizationRadius R(0.6);
          const double bound = leakage_bound(z0, 1.25, R);
          double worst = 0.0;
          for (int t = 0; t < 50; ++t) {
            const auto f = draws.unit_vector(1 + static_cast<std::size_t>(draws.uniform(0.0, 10.0)));
            worst = std::max(worst, leakage_lhs(z0, 1.25, R, f) - bound * (1.0 + 1e-14));
          }
          return std::max(worst, 0.0);
        });
  check("locop.leakage_extremal", "the aligned vector attains the bound (relative gap)", 1e-10, [&] {
    const DiskPoint z0(0.5, 0.3);
    const LocalizationRadius R(0.6);
    const double bound = leakage_bound(z0, 1.25, R);
    return std::abs(leakage_lhs(z0, 1.25, R, leakage_extremal(z0, 1.25, R, 400)) - bound) / bound;
  });
  check("locop.leakage_center", "bound at z0 = 0 equals 1 - (1-R^2)^{2B-1}", 1e-12, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.25, 2.0})
      for (double R : {0.3, 0.6, 0.9})
        worst = std::max(worst, std::abs(leakage_bound(DiskPoint(0.0), B, LocalizationRadius(R)) -
                                         (1.0 - std::pow(1.0 - R * R, 2.0 * B - 1.0))));
    return worst;
  });

  // bergman
  check("bergman.kernel_equivalence", "series vs closed-form kernel, B x s grid, 8 random pairs each", 1e-8, [&] {
    double worst = 0.0;
    for (double B : {0.75, 1.0, 1.5, 2.5})
      for (double s : {0.09, 0.36, 0.81})
        for (int t = 0; t < 8; ++t) {
          const DiskPoint z(draws.in_disk(0.8)), w(draws.in_disk(0.8));
          worst = std::max(worst, detail::rel_err(kernel_series(z, w, B, s), kernel_closed(z, w, B, s)));
        }
    return worst;
  });
  check("bergman.kernel_equivalence_config", "series vs closed-form kernel at the configured B and s = R^2", 1e-8, [&] {
    double worst = 0.0;
    for (int t = 0; t < 8; ++t) {
      const DiskPoint z(draws.in_disk(0.8)), w(draws.in_disk(0.8));
      const double s = cfg.R * cfg.R;
      worst = std::max(worst, detail::rel_err(kernel_series(z, w, cfg.B, s), kernel_closed(z, w, cfg.B, s)));
    }
    return worst;
  });
  check("bergman.limit", "closed kernel approaches the reproducing kernel monotonically; gap at s = 0.999", 1e-2, [&] {
    // conj(z) w = 0.3
    const DiskPoint zz(std::sqrt(0.3)), ww(std::sqrt(0.3));
    const double B = 1.5;
    const cplx lim = kernel_limit(zz, ww, B);
    double prev = std::numeric_limits<double>::infinity(), gap = 0.0;
    for (double s : {0.9, 0.99, 0.999}) {
      gap = std::abs(kernel_closed(zz, ww, B, s) - lim) / std::abs(lim);
      if (!(gap < prev)) return std::numeric_limits<double>::infinity();
      prev = gap;
    }
    return gap;
  });
  check("bergman.positivity", "[P_s(z_i, z_j)] is Hermitian positive semidefinite (minus smallest eigenvalue)", 1e-10,
        [&] {
          double worst = 0.0;
          for (double B : {0.75, 1.5, 2.5}) {
            std::vector<DiskPoint> pts;
            for (int i = 0; i < 6; ++i) pts.emplace_back(draws.in_disk(0.8));
            Eigen::MatrixXcd M(6, 6);
            for (int i = 0; i < 6; ++i)
              for (int j = 0; j < 6; ++j) M(i, j) = kernel_series(pts[i], pts[j], B, 0.36);
            const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
            worst = std::max(worst, -es.eigenvalues().minCoeff());
          }
          return std::max(worst, 0.0);
        });
  check("bergman.hermitian", "P_s(z, w) = conj(P_s(w, z))", 1e-13, [&] {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const DiskPoint z(draws.in_disk(0.8)), w(draws.in_disk(0.8));
      worst = std::max(worst, detail::rel_err(kernel_series(z, w, 1.25, 0.36), std::conj(kernel_series(w, z, 1.25, 0.36))));
    }
    return worst;
  });
  check("bergman.transferred_basis", "transferred operator maps C_k to lambda_k C_k, k <= 4, both kernel modes", 1e-7,
        [&] {
          const double B = 1.5;
          const LocalizationRadius R(0.6);
          double worst = 0.0;
          for (long k = 0; k <= 4; ++k) {
            std::vector<cplx> e(static_cast<std::size_t>(k + 1), cplx{0.0, 0.0});
            e.back() = 1.0;
            const auto F = BergmanFunction::from_coefficients(B, e);
            const DiskPoint w(draws.in_disk(0.8));
            const cplx expect = disk_eigenvalue(k, B, R) * coeff_C(k, B, w);
            for (auto mode : {KernelEvalMode::series, KernelEvalMode::closed_form})
              worst = std::max(worst, std::abs(transferred_apply(F, w, R, mode) - expect));
          }
          return worst;
        });
  check("bergman.intertwining", "W_B(P_R f) = transferred P_R(W_B f) on 10 random coefficient vectors", 1e-7, [&] {
    const SpectralData spec(ModelParams(cfg.B), LocalizationRadius(cfg.R));
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto c = draws.unit_vector(1 + static_cast<std::size_t>(draws.uniform(0.0, 8.0)));
      const DiskPoint w(draws.in_disk(0.8));
      const cplx lhs = wb_transform(spectral_apply(c, spec), w, cfg.B);
      const cplx rhs = transferred_apply(BergmanFunction::from_coefficients(cfg.B, c), w, spec.radius(),
                                         t % 2 == 0 ? KernelEvalMode::series : KernelEvalMode::closed_form);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
  });
  check("bergman.reproducing", "(1/pi) int kernel_limit(z, w) C_k(z) dmu = C_k(w), k <= 5, B in {1, 1.5}", 1e-7, [&] {
    double worst = 0.0;
    for (double B : {1.0, 1.5}) {
      const auto g = disk_grid(64, 128, B);
      for (long k = 0; k <= 5; ++k) {
        const DiskPoint w(draws.in_disk(0.5));
        const cplx v = g.integrate([&](cplx z) { return kernel_limit(DiskPoint(z), w, B) * coeff_C(k, B, DiskPoint(z)); }) /
                       std::numbers::pi;
        worst = std::max(worst, std::abs(v - coeff_C(k, B, w)));
      }
    }
    return worst;
  });
  check("bergman.wb_roundtrip", "W_B^{-1} W_B is the identity on span{l_j}, j <= 7", 1e-13, [&] {
    const auto c = draws.unit_vector(8);
    const auto F = BergmanFunction::from_coefficients(cfg.B, c);
    double worst = 0.0;
    for (double x : {0.3, 1.0, 2.5}) {
      cplx direct{0.0, 0.0};
      for (long j = 0; j < 8; ++j) direct += c[static_cast<std::size_t>(j)] * laguerre_fn(j, cfg.B, x);
      worst = std::max(worst, std::abs(wb_inverse(F, x, 7) - direct));
    }
    return worst;
  });

  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace nbsloc
