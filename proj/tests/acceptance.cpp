// Acceptance harness: one pass/fail line per criterion, exit status 1 if any fail.

#include <Eigen/Eigenvalues>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "nbsloc/nbsloc.hpp"
#include "support.hpp"

#ifndef NBSLOC_CLI_PATH
#error "NBSLOC_CLI_PATH must be defined"
#endif

using namespace nbsloc;
using testsupport::Gen;
using testsupport::rel;

namespace {

struct Measure {
  std::string name;
  double value;
  double tol;
  bool ok() const { return value <= tol; }
};

struct Outcome {
  std::vector<Measure> parts;
  std::string note;
};

constexpr double inf = std::numeric_limits<double>::infinity();

Outcome criterion1() {
  Gen g(101);
  double gauss = 0.0;
  for (double B : {0.75, 1.0, 1.5, 2.5, 4.0})
    gauss = std::max(gauss, std::abs(gauss_2f1(2.0 - 2.0 * B, 1.0, 2.0, 1.0).value.real() - 1.0 / (2.0 * B - 1.0)));
  const cplx one{1.0, 0.0};
  double diag = 0.0, e1 = 0.0, e2 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = g.real(-1, 1.5), b = g.real(-1, 1.5), b2 = g.real(-1, 1.5), c = g.real(1, 3);
    const cplx z = g.disk(0.6);
    diag = std::max(diag, rel(appell_f1(a, b, b2, c, z, z).value, gauss_2f1(a, b + b2, c, z).value));
  }
  for (int i = 0; i < 20; ++i) {
    const double a = g.real(-1, 1.5), b = g.real(-1, 1.5), b2 = g.real(-1, 1.5), c = g.real(1, 3);
    const cplx u = g.disk(0.3), v = g.disk(0.3);
    const cplx lhs = appell_f1(a, b, b2, c, u, v).value;
    e1 = std::max(e1, rel(lhs, principal_pow(one - u, -b) * principal_pow(one - v, -b2) *
                                   appell_f1(c - a, b, b2, c, u / (u - one), v / (v - one)).value));
  }
  for (int i = 0; i < 20; ++i) {
    const double a = g.real(-1, 1.5), b = g.real(-1, 1.5), b2 = g.real(-1, 1.5), c = g.real(1, 3);
    const cplx u = g.disk(0.3), v = g.disk(0.3);
    const cplx lhs = appell_f1(a, b, b2, c, u, v).value;
    e2 = std::max(e2, rel(lhs, principal_pow(one - u, c - a - b) * principal_pow(one - v, -b2) *
                                   appell_f1(c - a, c - b - b2, b2, c, u, (u - v) / (one - v)).value));
  }
  return {{{"gauss", gauss, 1e-10}, {"f1_diag", diag, 1e-9}, {"euler1", e1, 1e-9}, {"euler2", e2, 1e-9}}, {}};
}

Outcome criterion2() {
  Gen g(102);
  double worst = 0.0;
  for (double B : {0.75, 1.0, 1.5, 2.5})
    for (double s : {0.09, 0.36, 0.81})
      for (int t = 0; t < 8; ++t) {
        const DiskPoint z(g.disk(0.8)), w(g.disk(0.8));
        worst = std::max(worst, rel(kernel_series(z, w, B, s), kernel_closed(z, w, B, s)));
      }
  return {{{"rel", worst, 1e-8}}, {}};
}

Outcome criterion3() {
  const DiskPoint z(std::sqrt(0.3)), w(std::sqrt(0.3));
  const double B = 1.5;
  const cplx lim = 2.0 * std::pow(0.7, -3.0);
  double prev = inf, gap = 0.0, nonmono = 0.0;
  for (double s : {0.9, 0.99, 0.999}) {
    gap = std::abs(kernel_closed(z, w, B, s) - lim);
    if (!(gap < prev)) nonmono += 1.0;
    prev = gap;
  }
  return {{{"nonmonotone_steps", nonmono, 0.0}, {"rel_gap", gap / std::abs(lim), 1e-2}}, {}};
}

Outcome criterion4() {
  double powers = 0.0, nondecr = 0.0;
  for (double R : {0.2, 0.5, 0.6, 0.9}) {
    double prev = inf;
    for (long j = 0; j <= 20; ++j) {
      const double l = disk_eigenvalue(j, 1.0, LocalizationRadius(R));
      powers = std::max(powers, std::abs(l - std::pow(R * R, static_cast<double>(j + 1))));
    }
    for (double B : {0.75, 1.5, 3.0})
      for (long j = 0; j <= 40; ++j) {
        const double l = disk_eigenvalue(j, B, LocalizationRadius(R));
        if (!(l < prev)) nondecr += 1.0;
        prev = j == 40 ? inf : l;
      }
  }
  Gen g(104);
  double zmax = 0.0;
  for (int t = 0; t < 10; ++t) {
    const long j = g.integer(0, 5);
    const double B = g.real(0.75, 3.0), R = g.real(0.3, 0.9);
    const auto mc = mc_eigenvalue(j, ModelParams(B), LocalizationRadius(R), 1000000, 1000 + static_cast<unsigned>(t));
    zmax = std::max(zmax, std::abs(mc.estimate - reg_inc_beta(R * R, j + 1.0, 2.0 * B - 1.0)) / mc.std_error);
  }
  return {{{"b1_powers", powers, 1e-12}, {"non_decreasing_steps", nondecr, 0.0}, {"mc_z", zmax, 4.0}}, {}};
}

Outcome criterion5() {
  double gram = 0.0;
  for (double B : {0.8, 1.5, 3.0}) {
    const auto grid = half_line_grid(600, default_half_line_cutoff(20, B));
    for (long j = 0; j <= 20; ++j)
      for (long k = j; k <= 20; ++k) {
        const double v = grid.integrate([&](double x) { return laguerre_fn(j, B, x) * laguerre_fn(k, B, x); });
        gram = std::max(gram, std::abs(v - (j == k ? 1.0 : 0.0)));
      }
  }
  double ham = 0.0;
  for (double B : {0.8, 1.5, 2.5})
    for (long j = 0; j <= 5; ++j) ham = std::max(ham, hamiltonian_residual(j, B));
  Gen g(105);
  const double B = 1.5;
  const LocalizationRadius R(0.6);
  double basis = 0.0;
  for (long k = 0; k <= 4; ++k) {
    std::vector<cplx> e(static_cast<std::size_t>(k + 1));
    e.back() = 1.0;
    const auto F = BergmanFunction::from_coefficients(B, e);
    const DiskPoint w(g.disk(0.8));
    for (auto mode : {KernelEvalMode::series, KernelEvalMode::closed_form})
      basis = std::max(basis, std::abs(transferred_apply(F, w, R, mode) - disk_eigenvalue(k, B, R) * coeff_C(k, B, w)));
  }
  const SpectralData spec(ModelParams(B), R);
  double inter = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto c = g.unit_vector(static_cast<std::size_t>(g.integer(1, 10)));
    const DiskPoint w(g.disk(0.8));
    const cplx lhs = wb_transform(spectral_apply(c, spec), w, B);
    const cplx rhs = transferred_apply(BergmanFunction::from_coefficients(B, c), w, R,
                                       t % 2 ? KernelEvalMode::series : KernelEvalMode::closed_form);
    inter = std::max(inter, std::abs(lhs - rhs));
  }
  return {{{"gram", gram, 1e-8}, {"hamiltonian", ham, 1e-3}, {"transferred_basis", basis, 1e-7},
           {"intertwining", inter, 1e-7}},
          {}};
}

Outcome criterion6() {
  double mass = 0.0;
  const std::array<std::pair<double, int>, 3> levels{{{1.5, 0}, {2.5, 1}, {3.0, 2}}};
  for (const auto& [B, m] : levels)
    for (long j : {0L, 1L, 4L}) {
      // independent of the library's Gauss-Jacobi route
      const double v = testsupport::simpson(
          [&](double r) { return r <= 0.0 || r >= 1.0 ? 0.0 : higher_density(j, ModelParams(B, m), r); }, 0.0, 1.0,
          1e-13);
      mass = std::max({mass, std::abs(v - 1.0), std::abs(higher_density_mass(j, ModelParams(B, m)) - 1.0)});
    }
  double reduction = 0.0;
  for (double B : {0.75, 1.5, 2.5})
    for (long j : {0L, 1L, 4L})
      for (int i = 0; i < 100; ++i) {
        const double r = (i + 0.5) / 100.0;
        const double beta_pdf = std::pow(r, static_cast<double>(j)) * std::pow(1.0 - r, 2.0 * B - 2.0) /
                                std::exp(log_beta(j + 1.0, 2.0 * B - 1.0));
        reduction = std::max(reduction, std::abs(higher_density(j, ModelParams(B, 0), r) - beta_pdf) /
                                            std::max(1.0, beta_pdf));
      }
  return {{{"mass", mass, 1e-9}, {"m0_reduction", reduction, 1e-12}}, {}};
}

Outcome criterion7() {
  Gen g(107);
  const DiskPoint z0(0.5, 0.3);
  const LocalizationRadius R(0.6);
  const double B = 1.25;
  const double bound = leakage_bound(z0, B, R);
  double excess = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto f = g.unit_vector(static_cast<std::size_t>(g.integer(1, 10)));
    excess = std::max(excess, leakage_lhs(z0, B, R, f) / bound - 1.0);
  }
  double center = 0.0;
  for (double Bc : {0.75, 1.25, 2.0})
    for (double r : {0.3, 0.6, 0.9})
      center = std::max(center, std::abs(leakage_bound(DiskPoint(0.0), Bc, LocalizationRadius(r)) -
                                         (1.0 - std::pow(1.0 - r * r, 2.0 * Bc - 1.0))));
  double nb = 0.0;
  for (double Bn : {0.75, 1.25, 2.0})
    for (double p : {0.1, 0.34, 0.5}) {
      double m0 = 0.0, m1 = 0.0;
      for (long j = 0; j < 3000; ++j) {
        const double q = nb_pmf(j, Bn, p);
        m0 += q;
        m1 += j * q;
      }
      nb = std::max({nb, std::abs(m0 - 1.0), std::abs(m1 - 2.0 * Bn * p / (1.0 - p))});
    }
  // LHS <= bound with a rounding allowance of a few ulps
  return {{{"relative_excess", std::max(excess, 0.0), 1e-14}, {"center", center, 1e-12}, {"negbin", nb, 1e-10}},
          {}};
}

Outcome criterion8() {
  Gen g(108);
  double worst = 0.0;
  for (double B : {1.0, 1.5}) {
    const auto grid = disk_grid(64, 128, B);
    for (long k = 0; k <= 5; ++k) {
      const DiskPoint w(g.disk(0.5));
      const cplx v = grid.integrate([&](cplx z) {
                       return kernel_limit(DiskPoint(z), w, B) * coeff_C(k, B, DiskPoint(z));
                     }) /
                     std::numbers::pi;
      worst = std::max(worst, std::abs(v - coeff_C(k, B, w)));
    }
  }
  return {{{"abs", worst, 1e-7}}, {}};
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

Outcome criterion9() {
  const std::string cmd = std::string("\"") + NBSLOC_CLI_PATH + "\" verify --format json";
  int s1 = 0, s2 = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const std::string a = run_capture(cmd, s1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string b = run_capture(cmd, s2);
  const bool same = !a.empty() && a == b;
  return {{{"byte_mismatch", same ? 0.0 : 1.0, 0.0},
           {"exit_status", static_cast<double>(s1 != 0) + static_cast<double>(s2 != 0), 0.0},
           {"verify_seconds", secs, 300.0}},
          "report " + std::to_string(a.size()) + " bytes"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double time_limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "hypergeometric identities", 10.0, criterion1},
      {2, "kernel equivalence", 60.0, criterion2},
      {3, "kernel limit", inf, criterion3},
      {4, "spectral suite", 60.0, criterion4},
      {5, "basis and operator suite", inf, criterion5},
      {6, "probabilistic suite", inf, criterion6},
      {7, "leakage suite", inf, criterion7},
      {8, "reproducing property", inf, criterion8},
      {9, "CLI determinism", inf, criterion9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string err;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      err = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = err.empty() && secs < c.time_limit;
    std::string detail;
    for (const auto& m : o.parts) {
      ok = ok && m.ok();
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s=%.3g(<=%.3g)", m.name.c_str(), m.value, m.tol);
      detail += buf;
    }
    if (!err.empty()) detail += " error: " + err;
    if (!o.note.empty()) detail += " [" + o.note + "]";
    char head[64];
    if (std::isfinite(c.time_limit))
      std::snprintf(head, sizeof head, " time=%.2fs(<%.0fs)", secs, c.time_limit);
    else
      std::snprintf(head, sizeof head, " time=%.2fs", secs);
    std::printf("criterion %d %s: %s%s%s\n", c.id, c.title, ok ? "PASS" : "FAIL", head, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
