#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsol/config.hpp"
#include "fsol/errors.hpp"
#include "fsol/verify.hpp"

namespace {

using namespace fsol;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericFailure = 3;

struct CliOptions {
  std::string config_path;
  bool json_out = false;
  int sphere_order = 0;
  double panel_width = 0;
  double tail_tol = 0;
  double error_budget = 0;
  uint64_t seed = 0xF0DD;
  std::string only;
  std::string out_path;
};

RunConfig load(const CliOptions& opt, bool need_config) {
  RunConfig cfg;
  if (!opt.config_path.empty())
    cfg = load_config_file(opt.config_path);
  else if (need_config)
    fail(ErrorCode::InvalidConfig, "--config PATH is required for this subcommand");
  if (opt.sphere_order > 0) cfg.quadrature.sphere_order = opt.sphere_order;
  if (opt.panel_width > 0) cfg.quadrature.panel_width = opt.panel_width;
  if (opt.tail_tol > 0) cfg.quadrature.tail_tol = opt.tail_tol;
  if (opt.error_budget > 0) cfg.quadrature.error_budget = opt.error_budget;
  cfg.quadrature.seed = opt.seed;
  return cfg;
}

json factorization_json(const RadialFactorization& fact) {
  json out;
  out["regular"] = fact.regular();
  out["max_multiplicity"] = fact.max_multiplicity;
  out["q_lower_margin"] = fact.q_lower_margin;
  out["origin_order_warning"] = fact.origin_order_warning;
  json roots = json::array();
  for (const RadialRoot& r : fact.roots) {
    json jr;
    jr["r"] = r.r;
    jr["multiplicity"] = r.multiplicity;
    json pf = json::array();
    for (const cplx& c : r.pf) pf.push_back({c.real(), c.imag()});
    jr["pf"] = pf;
    roots.push_back(jr);
  }
  out["roots"] = roots;
  json q = json::array();
  for (const cplx& c : fact.deflated.coeffs) q.push_back({c.real(), c.imag()});
  out["q_coeffs"] = q;
  return out;
}

void print_factorization(const RadialFactorization& fact) {
  if (fact.regular()) {
    std::printf("no nonnegative real roots (regular case)\n");
  } else {
    for (const RadialRoot& r : fact.roots) {
      std::printf("root r = %s  multiplicity %d\n", format_full(r.r).c_str(), r.multiplicity);
      for (int k = 1; k <= r.multiplicity; ++k)
        std::printf("  C[%d] = %s\n", k, format_full(r.pf[k - 1]).c_str());
    }
  }
  if (fact.origin_order_warning)
    std::printf("warning: origin root multiplicity >= dimension; quadrature error "
                "estimates watch this case\n");
  std::printf("q coefficients:");
  for (const cplx& c : fact.deflated.coeffs) std::printf(" %s", format_full(c).c_str());
  std::printf("\n");
}

int cmd_roots(const CliOptions& opt, bool pf_focus) {
  RunConfig cfg = load(opt, true);
  const SymbolSpec& spec = cfg.require_symbol();
  RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, spec.dim());
  if (opt.json_out) {
    json out = factorization_json(fact);
    if (pf_focus) out["pf_reconstruction_error"] = verify_partial_fractions(fact);
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    print_factorization(fact);
    if (pf_focus)
      std::printf("pf reconstruction error: %s\n",
                  format_full(verify_partial_fractions(fact)).c_str());
  }
  return kExitOk;
}

int cmd_pair(const CliOptions& opt) {
  RunConfig cfg = load(opt, true);
  const SymbolSpec& spec = cfg.require_symbol();
  RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, spec.dim());
  TestFunction psi = cfg.default_testfn();
  PairingResult r = pair_source(spec, fact, cfg.source, psi, cfg.quadrature);
  if (opt.json_out) {
    json out;
    out["value"] = {r.value.real(), r.value.imag()};
    out["error"] = r.error;
    out["sphere_nodes"] = r.sphere_nodes;
    out["panels"] = r.panel_count;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("pairing = %s  (abs error estimate %s; %d sphere nodes, %d panels)\n",
                format_full(r.value).c_str(), format_full(r.error).c_str(), r.sphere_nodes,
                r.panel_count);
  }
  return kExitOk;
}

int cmd_approx(const CliOptions& opt) {
  RunConfig cfg = load(opt, true);
  const SymbolSpec& spec = cfg.require_symbol();
  if (!cfg.grid) fail(ErrorCode::InvalidConfig, "approx needs a grid block");
  RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, spec.dim());
  const GridBlock& g = *cfg.grid;
  VecN axis = g.axis;
  if (axis.norm() == 0) fail(ErrorCode::InvalidConfig, "grid.axis must be nonzero");
  axis = axis * (1.0 / axis.norm());

  std::string base = !opt.out_path.empty() ? opt.out_path
                     : !cfg.output.path.empty() ? cfg.output.path
                                                : std::string("approx");
  for (int k : g.ks) {
    BumpSpec bump{k};
    QuadParams p = cfg.quadrature;
    p.x_extent = std::max(p.x_extent, g.extent + 0.5);
    auto data = [bump](const VecN& xi) { return cplx(bump.fourier_data(xi.norm()), 0.0); };
    P0Evaluator ev(spec, fact, data, 2.0 * bump.k, p);

    std::string path = base + "_k" + std::to_string(k) + ".csv";
    std::ofstream outf(path);
    if (!outf) fail(ErrorCode::InvalidConfig, "cannot write " + path);
    for (int i = 0; i < spec.dim(); ++i) outf << "x" << (i + 1) << ",";
    outf << "re_u,im_u\n";
    double sup = 0;
    for (int i = 0; i < g.resolution; ++i) {
      double t = g.resolution == 1 ? 0.0
                                   : -g.extent + 2.0 * g.extent * i / (g.resolution - 1);
      VecN x = axis * t;
      cplx u = ev.eval(x).value;
      sup = std::max(sup, std::abs(u));
      for (int d = 0; d < spec.dim(); ++d) outf << format_full(x[d]) << ",";
      outf << format_full(u.real()) << "," << format_full(u.imag()) << "\n";
    }
    std::printf("k=%d: wrote %d rows to %s (max |u_k| = %s)\n", k, g.resolution, path.c_str(),
                format_full(sup).c_str());
  }
  return kExitOk;
}

int cmd_trace(const CliOptions& opt) {
  RunConfig cfg = load(opt, true);
  const SymbolSpec& spec = cfg.require_symbol();
  if (!cfg.surface) fail(ErrorCode::InvalidConfig, "trace needs a surface block");
  RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, spec.dim());
  const SurfaceBlock& s = *cfg.surface;
  std::vector<cplx> samples = trace_on_surface(spec, fact, cfg.source, s.surface,
                                               s.num_samples, s.mollifier_width, cfg.quadrature);
  std::string path = !opt.out_path.empty() ? opt.out_path
                     : !cfg.output.path.empty() ? cfg.output.path
                                                : std::string("trace.csv");
  std::ofstream outf(path);
  if (!outf) fail(ErrorCode::InvalidConfig, "cannot write " + path);
  outf << "angle,re_u,im_u,mollifier_width\n";
  for (size_t i = 0; i < samples.size(); ++i) {
    double angle = 2.0 * kPi * double(i) / double(samples.size());
    outf << format_full(angle) << "," << format_full(samples[i].real()) << ","
         << format_full(samples[i].imag()) << "," << format_full(s.mollifier_width) << "\n";
  }
  std::printf("wrote %zu surface samples to %s\n", samples.size(), path.c_str());
  return kExitOk;
}

int cmd_verify(const CliOptions& opt) {
  RunConfig cfg = load(opt, false);
  std::vector<CheckReport> reports = run_all_checks(opt.seed, cfg.quadrature);
  if (!opt.only.empty()) {
    std::vector<CheckReport> filtered;
    for (CheckReport& r : reports)
      if (r.name.rfind(opt.only, 0) == 0) filtered.push_back(std::move(r));
    if (filtered.empty()) fail(ErrorCode::InvalidConfig, "--only matched no check: " + opt.only);
    reports = std::move(filtered);
  }

  bool all_pass = true;
  json jreports = json::array();
  for (const CheckReport& r : reports) {
    all_pass = all_pass && r.pass;
    if (opt.json_out) {
      json jr;
      jr["name"] = r.name;
      jr["residual"] = r.residual;
      jr["tolerance"] = r.tolerance;
      jr["pass"] = r.pass;
      jr["seconds"] = r.seconds;
      jr["seed"] = r.seed;
      jr["details"] = r.details;
      jreports.push_back(jr);
    } else {
      std::printf("%-26s %-4s residual %-12.4g tol %-8.1g (%.2fs)\n", r.name.c_str(),
                  r.pass ? "ok" : "FAIL", r.residual, r.tolerance, r.seconds);
    }
  }
  if (opt.json_out) std::printf("%s\n", jreports.dump(2).c_str());
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit tempered fundamental-solution operators for elliptic multipliers "
               "with ellipsoidal radial symmetry"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--config", opt.config_path, "JSON configuration file");
  app.add_flag("--json", opt.json_out, "machine-readable output");
  app.add_option("--sphere-order", opt.sphere_order, "override sphere rule order");
  app.add_option("--panel-width", opt.panel_width, "override radial panel width");
  app.add_option("--tail-tol", opt.tail_tol, "override tail decay tolerance");
  app.add_option("--error-budget", opt.error_budget, "override pairing error budget");
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--only", opt.only, "run only checks whose name starts with this prefix");
  app.add_option("--out", opt.out_path, "output path for approx/trace");

  CLI::App* roots = app.add_subcommand("roots", "radial roots and factorization");
  CLI::App* pf = app.add_subcommand("pf", "partial fraction table");
  CLI::App* pair = app.add_subcommand("pair", "pair the fundamental solution with a test function");
  CLI::App* approx = app.add_subcommand("approx", "sample Paley-Wiener approximants on a grid");
  CLI::App* trace = app.add_subcommand("trace", "mollified trace of P0 s on a circle");
  CLI::App* verify = app.add_subcommand("verify", "run the identity check suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed()) return cmd_roots(opt, false);
    if (pf->parsed()) return cmd_roots(opt, true);
    if (pair->parsed()) return cmd_pair(opt);
    if (approx->parsed()) return cmd_approx(opt);
    if (trace->parsed()) return cmd_trace(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::InvalidConfig ? kExitConfigError : kExitNumericFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumericFailure;
  }
  return kExitOk;
}
