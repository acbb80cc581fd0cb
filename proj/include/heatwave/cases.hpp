#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatwave/hugoniot.hpp"
#include "heatwave/solver.hpp"

namespace heatwave {

/// Overrides applied on top of a catalog entry.
struct CaseOptions {
  std::optional<int> n_cells;
  std::optional<double> kappa;
  std::optional<double> K;
  std::optional<double> cfl;
  std::optional<double> t_end;
  /// Use the resolutions of the original experiments instead of the
  /// desk-scale defaults.
  bool full_scale = false;
};

struct RiemannProblem {
  std::string name;
  double x_split;
  Primitive left;
  Primitive right;
  PressureState left_p;
  PressureState right_p;
  RunConfig config;
  /// Speed used for the self-similar coordinate; NaN when not applicable.
  double wave_speed;
};

/// sod_heat, shocktube_hyp, expansion_shock, compression_fan,
/// shock_splitting, smooth_wave.
std::vector<std::string> case_names();

/// Riemann-problem entries. Throws ConfigError for unknown names.
RiemannProblem catalog(const std::string& name, const CaseOptions& opts = {});

/// Run configuration of any named case, including smooth_wave.
RunConfig case_config(const std::string& name, const CaseOptions& opts = {});

/// Shock from the right state (1, 0, 1, 0) to the state at v_star(kappa~)
/// on the thermal branch (gamma = 2, c_v = 1).
hugoniot::ShockConstruction star_shock(double kappa);

/// x' = (x - x_s - D t) / t for each cell of the frame.
std::vector<double> self_similar_transform(const SolutionFrame& frame,
                                           double x_split, double D);

}  // namespace heatwave
