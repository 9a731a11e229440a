// nbsloc: eigenvalue tables, kernel values, leakage bounds, densities,
// Monte-Carlo cross-checks and the self-verification report.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbsloc/nbsloc.hpp"

namespace {

using nbsloc::cplx;
using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  double B = 1.5;
  double R = 0.6;
  int m = 0;
  long j_max = 20;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  long samples = 100000;
  std::optional<double> s;
  std::string z = "0.5";
  std::string w = "0.3+0.4i";
  std::string format = "csv";
  std::string out;
  bool inject_fault = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& text, const std::string& what) {
  if (text.empty()) throw UsageError("cannot parse " + what + ": empty");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) throw UsageError("cannot parse " + what + " from '" + text + "'");
  return v;
}

// Accepts "a", "bi", "a+bi", "a-bi" or "a,b".
cplx parse_complex(std::string text, const std::string& what) {
  std::erase(text, ' ');
  if (text.empty()) throw UsageError("cannot parse " + what + ": empty");
  if (const auto comma = text.find(','); comma != std::string::npos)
    return {parse_real(text.substr(0, comma), what), parse_real(text.substr(comma + 1), what)};
  if (text.back() != 'i') return {parse_real(text, what), 0.0};
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;)
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, what);
  };
  if (split == std::string::npos) return {0.0, imag_part(text)};
  return {parse_real(text.substr(0, split), what), imag_part(text.substr(split))};
}

nbsloc::DiskPoint disk_point(const std::string& text, const std::string& what) {
  const cplx z = parse_complex(text, what);
  if (!(std::abs(z) < 1.0)) throw nbsloc::DomainError(what + " must lie in the open unit disk (|" + what + "| < 1)");
  return nbsloc::DiskPoint(z);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

json params_json(const RunConfig& c) {
  json p;
  p["command"] = c.command;
  p["B"] = c.B;
  p["R"] = c.R;
  p["m"] = c.m;
  p["j_max"] = c.j_max;
  p["tol"] = c.tol;
  p["seed"] = c.seed;
  p["samples"] = c.samples;
  p["s"] = c.s ? json(*c.s) : json(c.R * c.R);
  if (!c.s) p["s_note"] = "s not given; defaulted to R^2";
  p["z"] = c.z;
  p["w"] = c.w;
  return p;
}

std::string cell(const json& v) {
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

std::string render(const RunConfig& c, const Table& t) {
  const json params = params_json(c);
  if (c.format == "json") {
    json data = json::array();
    for (const auto& row : t.rows) {
      json rec;
      for (std::size_t k = 0; k < t.columns.size(); ++k) rec[t.columns[k]] = row[k];
      data.push_back(rec);
    }
    return json{{"params", params}, {"data", data}}.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& [key, value] : params.items()) os << "# " << key << "=" << cell(value) << "\n";
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell(row[k]);
    os << "\n";
  }
  return os.str();
}

Table cmd_eigvals(const RunConfig& c, const nbsloc::ModelParams& p, nbsloc::LocalizationRadius R) {
  Table t;
  t.columns = {"j", "lambda"};
  if (p.m() > 0) t.columns.push_back("lambda_m");
  const nbsloc::SpectralData base(nbsloc::ModelParams(p.B()), R);
  const nbsloc::SpectralData level(p, R);
  for (long j = 0; j <= c.j_max; ++j) {
    std::vector<json> row{j, base.lambda(j)};
    if (p.m() > 0) row.push_back(level.lambda(j));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_kernel(const RunConfig& c, const nbsloc::ModelParams& p, nbsloc::LocalizationRadius R) {
  const auto z = disk_point(c.z, "z");
  const auto w = disk_point(c.w, "w");
  const double s = c.s.value_or(R.s());
  if (!(s > 0.0 && s < 1.0)) throw nbsloc::DomainError("s must lie in (0, 1)");
  nbsloc::SeriesControl ctl;
  ctl.rel_tol = c.tol;
  const auto series = nbsloc::kernel_series_certified(z, w, p.B(), s, ctl);
  const cplx closed = nbsloc::kernel_closed(z, w, p.B(), s, ctl);
  const cplx limit = nbsloc::kernel_limit(z, w, p.B());
  const double disc = std::abs(series.value - closed) / std::abs(series.value);
  Table t;
  t.columns = {"s",         "series_re", "series_im",   "series_terms", "series_tail_bound", "closed_re",
               "closed_im", "discrepancy", "limit_re", "limit_im"};
  t.rows.push_back({s, series.value.real(), series.value.imag(), series.terms_used, series.tail_bound, closed.real(),
                    closed.imag(), disc, limit.real(), limit.imag()});
  return t;
}

Table cmd_leakage(const RunConfig& c, const nbsloc::ModelParams& p, nbsloc::LocalizationRadius R) {
  const auto z0 = disk_point(c.z, "z");
  const double tail = std::min(c.tol, 1e-14);
  Table t;
  t.columns = {"z0_re", "z0_im", "bound", "tail_tol"};
  t.rows.push_back({z0.z().real(), z0.z().imag(), nbsloc::leakage_bound(z0, p.B(), R, tail), tail});
  return t;
}

Table cmd_density(const RunConfig& c, const nbsloc::ModelParams& p) {
  Table t;
  t.columns = {"j", "rho", "density"};
  for (long j = 0; j <= c.j_max; ++j)
    for (int i = 0; i < 100; ++i) {
      const double rho = (i + 0.5) / 100.0;
      t.rows.push_back({j, rho, nbsloc::higher_density(j, p, rho)});
    }
  return t;
}

Table cmd_mc(const RunConfig& c, const nbsloc::ModelParams& p, nbsloc::LocalizationRadius R) {
  Table t;
  t.columns = {"j", "estimate", "std_error", "exact", "z_score"};
  for (long j = 0; j <= c.j_max; ++j) {
    const auto mc = nbsloc::mc_eigenvalue(j, p, R, c.samples, c.seed + static_cast<std::uint64_t>(j));
    const double exact = nbsloc::disk_eigenvalue(j, p.B(), R);
    const double zs = mc.std_error > 0.0 ? (mc.estimate - exact) / mc.std_error : 0.0;
    t.rows.push_back({j, mc.estimate, mc.std_error, exact, zs});
  }
  return t;
}

std::string render_report(const RunConfig& c, const std::vector<nbsloc::CheckResult>& results) {
  if (c.format == "json") {
    json data = json::array();
    for (const auto& r : results) {
      json rec{{"id", r.id}, {"description", r.description}, {"passed", r.passed},
               {"measured", std::isnan(r.measured) ? json(nullptr) : json(r.measured)}, {"tolerance", r.tolerance}};
      if (!r.error.empty()) rec["error"] = r.error;
      data.push_back(rec);
    }
    return json{{"params", params_json(c)}, {"data", data}, {"passed_all", nbsloc::all_passed(results)}}.dump(2) +
           "\n";
  }
  Table t;
  t.columns = {"id", "passed", "measured", "tolerance"};
  for (const auto& r : results) t.rows.push_back({r.id, r.passed ? "true" : "false", r.measured, r.tolerance});
  return render(c, t);
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + c.out + "'");
  f << text;
  if (!f) throw UsageError("failed writing output file '" + c.out + "'");
}

int run(RunConfig& c) {
  if (c.inject_fault) nbsloc::debug::gamma_ratio_perturbation.store(1e-3);
  if (c.j_max < 0 || c.j_max > 100000) throw UsageError("--j-max must lie in [0, 100000]");
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
  const nbsloc::ModelParams params(c.B, c.m);
  const nbsloc::LocalizationRadius R(c.R);

  if (c.command == "verify") {
    nbsloc::VerifyConfig vc;
    vc.B = params.B();
    vc.R = R.R();
    vc.m = params.m();
    vc.seed = c.seed;
    const auto results = nbsloc::run_verification(vc);
    emit(c, render_report(c, results));
    bool ok = true;
    for (const auto& r : results)
      if (!r.passed) {
        std::cerr << "verification failed: " << r.id << " (measured " << num(r.measured) << ", tolerance "
                  << num(r.tolerance) << (r.error.empty() ? "" : ", " + r.error) << ")\n";
        ok = false;
      }
    return ok ? 0 : 1;
  }

  Table t;
  if (c.command == "eigvals") t = cmd_eigvals(c, params, R);
  else if (c.command == "kernel") t = cmd_kernel(c, params, R);
  else if (c.command == "leakage") t = cmd_leakage(c, params, R);
  else if (c.command == "density") t = cmd_density(c, params);
  else if (c.command == "mc") {
    if (c.samples < 100 || c.samples > 1000000000) throw UsageError("--samples must lie in [100, 1e9]");
    t = cmd_mc(c, params, R);
  }
  emit(c, render(c, t));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization operators for negative binomial states"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  double s_value = 0.0;
  app.add_option("--B", cfg.B, "weight parameter, 2B > 1")->capture_default_str();
  app.add_option("--R", cfg.R, "localization radius, 0 < R < 1")->capture_default_str();
  app.add_option("--m", cfg.m, "Landau level, 0 <= m <= floor(B - 1/2)")->capture_default_str();
  app.add_option("--j-max", cfg.j_max, "largest index j")->capture_default_str();
  auto* s_opt = app.add_option("--s", s_value, "kernel parameter s in (0, 1); defaults to R^2");
  app.add_option("--z", cfg.z, "disk point z (kernel) or z0 (leakage), as a+bi or a,b")->capture_default_str();
  app.add_option("--w", cfg.w, "disk point w (kernel)")->capture_default_str();
  app.add_option("--tol", cfg.tol, "series tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte-Carlo sample count")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_flag("--inject-fault", cfg.inject_fault, "perturb Gamma ratios by 1e-3 (self-test of verify)")->group("");

  for (const char* name : {"eigvals", "kernel", "leakage", "density", "mc", "verify"}) {
    static const std::map<std::string, std::string> help = {
        {"eigvals", "eigenvalue table lambda_j, j = 0..j_max"},
        {"kernel", "transferred kernel: series, closed form, discrepancy, limit"},
        {"leakage", "leakage bound at z0 = --z"},
        {"density", "Beta/Jacobi densities on a rho grid"},
        {"mc", "Monte-Carlo eigenvalue estimates"},
        {"verify", "run every self-check and print a report"}};
    app.add_subcommand(name, help.at(name))->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (s_opt->count() > 0) cfg.s = s_value;

  try {
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
