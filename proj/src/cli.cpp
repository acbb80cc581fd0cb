#include "heatwave/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "heatwave/config.hpp"
#include "heatwave/csv.hpp"
#include "heatwave/dispersion.hpp"
#include "heatwave/error.hpp"
#include "heatwave/hugoniot.hpp"

namespace heatwave::cli {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const StepError& e) {
    err << "numerical failure at t = " << csv::number(e.time()) << ", cell "
        << e.cell() << ": " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

void prepare(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError(fmt::format("output directory '{}' is not usable: {}",
                                  dir.string(), ec.message()));
  }
}

int write_run(const std::string& name, const RunConfig& config,
              const fs::path& dir, std::ostream& out) {
  prepare(dir);
  const auto start = std::chrono::steady_clock::now();
  const RunResult res = run(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const bool fourier = config.scheme == Scheme::hyperbolic &&
                       config.model.relaxation && config.model.kappa > 0.0;
  for (const SolutionFrame& f : res.frames) {
    csv::write_frame(dir / csv::frame_file_name(name, f.t), f);
    if (fourier) {
      csv::write_fourier(dir / csv::frame_file_name(name + "_fourier", f.t), f,
                         config.model);
    }
  }
  csv::write_diagnostics(dir / (name + "_diag.csv"), res.diagnostics);

  const DiagnosticsRow& last = res.diagnostics.rows.back();
  out << fmt::format(
      "{}: {} cells, {} steps to t = {}; mass {:.12g} momentum {:.12g} energy "
      "{:.12g} entropy {:.12g}; {} first-order fallbacks; {} rejected steps; "
      "wall {:.2f} s\n",
      name, config.n_cells, res.diagnostics.steps, last.t, last.mass,
      last.momentum, last.energy, last.entropy, res.diagnostics.fallback_cells,
      res.diagnostics.rejected_steps, wall);
  return kOk;
}

}  // namespace

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HEATWAVE_OUT"); env && *env) return env;
  return ".";
}

int cmd_case(const std::string& name, const CaseOptions& opts,
             const fs::path& dir, std::ostream& out) {
  return write_run(name, case_config(name, opts), dir, out);
}

int cmd_run(const fs::path& config_file, const fs::path& dir,
            std::ostream& out) {
  std::ifstream in(config_file);
  if (!in) {
    throw ConfigError(
        fmt::format("cannot read config file '{}'", config_file.string()));
  }
  const ParsedRun parsed = parse_run_config(in, config_file.stem().string());
  return write_run(parsed.name, parsed.config, dir, out);
}

int cmd_hugoniot(const HugoniotOptions& o, const fs::path& dir,
                 std::ostream& out, std::ostream& err) {
  prepare(dir);
  std::vector<std::string> warnings;
  const auto rows = hugoniot::sample_range(o.kappa_t, o.gamma, o.v_min, o.v_max,
                                           o.samples, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  csv::write_hugoniot(dir / "hugoniot.csv", rows);
  const double kc = hugoniot::critical_kappa();
  out << fmt::format("kappa_c = {:.10f}\n", kc);
  if (std::abs(o.kappa_t - kc) > 1e-8) {
    try {
      out << fmt::format("v_star = {:.10f}\n",
                         hugoniot::v_star(o.kappa_t, o.gamma));
    } catch (const NumericalError& e) {
      err << "warning: " << e.what() << '\n';
    }
  }
  out << fmt::format("wrote {} rows to {}\n", rows.size(),
                     (dir / "hugoniot.csv").string());
  return kOk;
}

int cmd_dispersion(const DispersionOptions& o, const fs::path& dir,
                   std::ostream& out) {
  prepare(dir);
  ModelParams m;
  m.gas.gamma = o.gamma;
  m.gas.c_v = o.c_v;
  m.kappa = o.kappa;
  m.K = o.K;
  m.tau_policy = TauPolicy::asymptotic;
  m.validate();
  const dispersion::RestState rest{o.rho0, o.eta0};
  const auto rows =
      dispersion::sweep(m, rest, dispersion::log_grid(o.k_min, o.k_max, o.samples));
  csv::write_dispersion(dir / "dispersion.csv", rows);
  out << fmt::format(
      "k = {:g}: c_f = {:.6f}, c~ = {:.6f}; k = {:g}: c_f = {:.6f}, c_s = "
      "{:.6f}, c~ = {:.6f}\n",
      rows.front().k, rows.front().c_f, rows.front().c_tilde, rows.back().k,
      rows.back().c_f, rows.back().c_s, rows.back().c_tilde);
  const long unshared =
      std::count_if(rows.begin(), rows.end(),
                    [](const auto& s) { return !s.beta_t1_shared; });
  if (unshared > 0) {
    out << fmt::format(
        "note: travelling Euler-Fourier roots differ in attenuation at {} "
        "wavenumbers\n",
        unshared);
  }
  out << fmt::format("wrote {} rows to {}\n", rows.size(),
                     (dir / "dispersion.csv").string());
  return kOk;
}

int cmd_eigen(const EigenOptions& o, std::ostream& out) {
  ModelParams m;
  m.gas.gamma = o.gamma;
  m.gas.c_v = o.c_v;
  m.kappa = o.kappa;
  m.validate();
  const Primitive v{o.rho, o.u, o.eta, o.j};
  const WaveSpeeds w = wave_speeds_1d(m, v);
  out << fmt::format("lambda1 = {:.10f}\nlambda2 = {:.10f}\nlambda3 = {:.10f}\n"
                     "lambda4 = {:.10f}\n",
                     w.lambda1, w.lambda2, w.lambda3, w.lambda4);
  out << fmt::format("Y1 = {:.10g}\nY2 = {:.10g}\nY3 = {:.10g}\n", w.Y1, w.Y2,
                     w.Y3);
  if (o.three_d) {
    const Primitive3D v3{o.rho, {o.u, o.u2, o.u3}, o.eta, {o.j, o.j2, o.j3}};
    const Eigenvalues3D e = eigenvalues_3d(m, v3);
    for (std::size_t i = 0; i < e.chi.size(); ++i) {
      out << fmt::format("chi{} = {:.10f}\n", i + 1, e.chi[i]);
    }
    if (o.a_c >= 0.0) {
      const auto c = eigenvalues_curl_cleaning(m, v3, o.a_c);
      for (std::size_t i = 0; i < c.size(); ++i) {
        out << fmt::format("chi_c{} = {:.10f}\n", i + 1, c[i]);
      }
    }
  }
  return kOk;
}

int cmd_convergence(const ConvergenceOptions& o, std::ostream& out) {
  CaseOptions co;
  if (o.t_end > 0.0) co.t_end = o.t_end;
  RunConfig base = case_config(o.case_name, co);
  if (o.limiter == "none") {
    base.limiter = Limiter::none;
  } else if (o.limiter == "minmod") {
    base.limiter = Limiter::minmod;
  } else {
    throw ConfigError(fmt::format("unknown limiter '{}'", o.limiter));
  }
  const ConvergenceStudy s = self_convergence(base, o.grids);
  out << "N, L1(rho), L1(mom), L1(E), L1(j)\n";
  for (std::size_t i = 0; i < s.errors.size(); ++i) {
    const Vec4& e = s.errors[i];
    out << fmt::format("{}, {:.6e}, {:.6e}, {:.6e}, {:.6e}\n", s.grids[i], e[0],
                       e[1], e[2], e[3]);
  }
  out << "rates (rho, mom, E, j)\n";
  for (std::size_t i = 0; i < s.rates.size(); ++i) {
    const Vec4& r = s.rates[i];
    out << fmt::format("{}->{}: {:.3f} {:.3f} {:.3f} {:.3f}\n", s.grids[i],
                       s.grids[i + 1], r[0], r[1], r[2], r[3]);
  }
  return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Hyperbolic heat-transfer solver and analysis tools",
               "heatwave"};
  app.require_subcommand(1);
  std::string out_flag;

  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a config file");
  std::string config_file;
  run_cmd->add_option("config", config_file, "key = value run file")->required();

  auto* case_cmd = app.add_subcommand("case", "Run a catalog case");
  std::string case_name;
  int n_cells = 0;
  double kappa = 0, K = 0, cfl = 0, t_end = 0;
  bool full_scale = false;
  case_cmd->add_option("name", case_name, "Case name")->required();
  auto* n_opt = case_cmd->add_option("--n", n_cells, "Number of cells");
  auto* kappa_opt = case_cmd->add_option("--kappa", kappa, "Coupling kappa");
  auto* K_opt = case_cmd->add_option("--K", K, "Heat conductivity K");
  auto* cfl_opt = case_cmd->add_option("--cfl", cfl, "CFL number");
  auto* t_opt = case_cmd->add_option("--t-end", t_end, "Final time");
  case_cmd->add_flag("--full-scale", full_scale,
                     "Use the resolution of the original experiments");

  auto* hug_cmd = app.add_subcommand("hugoniot", "Tabulate Hugoniot branches");
  HugoniotOptions ho;
  hug_cmd->add_option("--kappa-t", ho.kappa_t, "Dimensionless coupling");
  hug_cmd->add_option("--gamma", ho.gamma, "Heat capacity ratio");
  hug_cmd->add_option("--v-min", ho.v_min, "Smallest v~");
  hug_cmd->add_option("--v-max", ho.v_max, "Largest v~");
  hug_cmd->add_option("--samples", ho.samples, "Number of samples");

  auto* disp_cmd = app.add_subcommand("dispersion", "Dispersion sweep");
  DispersionOptions dopt;
  disp_cmd->add_option("--gamma", dopt.gamma);
  disp_cmd->add_option("--c-v", dopt.c_v);
  disp_cmd->add_option("--rho0", dopt.rho0);
  disp_cmd->add_option("--eta0", dopt.eta0);
  disp_cmd->add_option("--kappa", dopt.kappa);
  disp_cmd->add_option("--K", dopt.K);
  disp_cmd->add_option("--k-min", dopt.k_min);
  disp_cmd->add_option("--k-max", dopt.k_max);
  disp_cmd->add_option("--samples", dopt.samples);

  auto* eig_cmd = app.add_subcommand("eigen", "Characteristic speeds at a state");
  EigenOptions eo;
  eig_cmd->add_option("--gamma", eo.gamma);
  eig_cmd->add_option("--c-v", eo.c_v);
  eig_cmd->add_option("--kappa", eo.kappa);
  eig_cmd->add_option("--rho", eo.rho);
  eig_cmd->add_option("--u", eo.u);
  eig_cmd->add_option("--eta", eo.eta);
  eig_cmd->add_option("--j", eo.j);
  eig_cmd->add_flag("--3d", eo.three_d, "Also print the 3D speeds chi");
  eig_cmd->add_option("--u2", eo.u2);
  eig_cmd->add_option("--u3", eo.u3);
  eig_cmd->add_option("--j2", eo.j2);
  eig_cmd->add_option("--j3", eo.j3);
  eig_cmd->add_option("--a-c", eo.a_c, "Curl-cleaning speed");

  auto* conv_cmd = app.add_subcommand("convergence", "Self-convergence study");
  ConvergenceOptions co;
  conv_cmd->add_option("--case", co.case_name);
  conv_cmd->add_option("--grids", co.grids)->delimiter(',');
  conv_cmd->add_option("--limiter", co.limiter);
  conv_cmd->add_option("--t-end", co.t_end);

  for (auto* sub : {run_cmd, case_cmd, hug_cmd, disp_cmd}) {
    sub->add_option("--out", out_flag, "Output directory");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kConfigError;
  }

  return guarded(err, [&]() -> int {
    const fs::path dir = output_dir(out_flag);
    if (*run_cmd) return cmd_run(config_file, dir, out);
    if (*case_cmd) {
      CaseOptions opts;
      if (n_opt->count()) opts.n_cells = n_cells;
      if (kappa_opt->count()) opts.kappa = kappa;
      if (K_opt->count()) opts.K = K;
      if (cfl_opt->count()) opts.cfl = cfl;
      if (t_opt->count()) opts.t_end = t_end;
      opts.full_scale = full_scale;
      return cmd_case(case_name, opts, dir, out);
    }
    if (*hug_cmd) return cmd_hugoniot(ho, dir, out, err);
    if (*disp_cmd) return cmd_dispersion(dopt, dir, out);
    if (*eig_cmd) return cmd_eigen(eo, out);
    return cmd_convergence(co, out);
  });
}

}  // namespace heatwave::cli
