#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "heatwave/cases.hpp"

// Command-line front end. Subcommands: run, case, hugoniot, dispersion,
// eigen, convergence. Exit codes: 0 success, 2 configuration error,
// 3 numerical failure.

namespace heatwave::cli {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

/// Parses `args` (without the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// --out if given, else $HEATWAVE_OUT, else the working directory.
std::filesystem::path output_dir(const std::string& flag);

int cmd_case(const std::string& name, const CaseOptions& opts,
             const std::filesystem::path& dir, std::ostream& out);
int cmd_run(const std::filesystem::path& config_file,
            const std::filesystem::path& dir, std::ostream& out);

struct HugoniotOptions {
  double kappa_t = 0.8;
  double gamma = 2.0;
  double v_min = 0.3;
  double v_max = 3.0;
  int samples = 1000;
};
int cmd_hugoniot(const HugoniotOptions& opts, const std::filesystem::path& dir,
                 std::ostream& out, std::ostream& err);

struct DispersionOptions {
  double gamma = 1.4;
  double c_v = 1.5;
  double rho0 = 1.0;
  double eta0 = 1.0;
  double kappa = 1.0;
  double K = 0.1;
  double k_min = 1e-4;
  double k_max = 1e6;
  int samples = 400;
};
int cmd_dispersion(const DispersionOptions& opts,
                   const std::filesystem::path& dir, std::ostream& out);

struct EigenOptions {
  double gamma = 2.0;
  double c_v = 1.0;
  double kappa = 1.0;
  double rho = 1.0;
  double u = 0.0;
  double eta = 0.0;
  double j = 0.0;
  bool three_d = false;
  double u2 = 0.0, u3 = 0.0, j2 = 0.0, j3 = 0.0;
  /// Cleaning speed; negative means no cleaning speeds are printed.
  double a_c = -1.0;
};
int cmd_eigen(const EigenOptions& opts, std::ostream& out);

struct ConvergenceOptions {
  std::string case_name = "smooth_wave";
  std::vector<int> grids = {100, 200, 400, 800};
  std::string limiter = "none";
  double t_end = -1.0;
};
int cmd_convergence(const ConvergenceOptions& opts, std::ostream& out);

}  // namespace heatwave::cli
