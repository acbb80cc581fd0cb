#pragma once

#include <string>
#include <variant>
#include <vector>

#include "heatwave/model.hpp"

// Finite-volume IMEX integrator: MUSCL reconstruction, Rusanov fluxes and the
// ARS(2,2,2) Runge-Kutta pair (explicit fluxes, implicit relaxation source).
// The Euler-Fourier reference uses the same state layout with j unused and a
// centered heat flux in the explicit part.

namespace heatwave {

enum class Scheme { hyperbolic, euler_fourier };
enum class Limiter { minmod, none };
enum class Boundary { transmissive, periodic };
enum class ReconstructionVars { conserved, primitive };

const char* to_string(Scheme s);
const char* to_string(Limiter l);
const char* to_string(Boundary b);

/// Piecewise constant data split at x_split.
struct RiemannInitial {
  double x_split;
  PressureState left;
  PressureState right;
};

/// rho = rho0 (1 + amplitude sin(2 pi x / L)), u, p constant,
/// j = j_amplitude cos(2 pi x / L).
struct SmoothWaveInitial {
  double rho0 = 1.0;
  double amplitude = 0.2;
  double u = 0.1;
  double p = 1.0;
  double j_amplitude = 0.05;
};

using InitialCondition = std::variant<RiemannInitial, SmoothWaveInitial>;

struct RunConfig {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 100;
  double cfl = 0.9;
  double t_end = 0.1;
  ModelParams model;
  Scheme scheme = Scheme::hyperbolic;
  Limiter limiter = Limiter::minmod;
  Boundary bc = Boundary::transmissive;
  ReconstructionVars reconstruction = ReconstructionVars::conserved;
  /// Frames are written at these times and at t_end.
  std::vector<double> output_times;
  InitialCondition initial = RiemannInitial{0.5, {1, 0, 1, 0}, {1, 0, 1, 0}};

  double dx() const { return (x_right - x_left) / n_cells; }
  /// Throws ConfigError on invalid settings.
  void validate() const;
};

struct SolutionFrame {
  double t;
  std::vector<double> x;
  std::vector<Conserved> q;
  std::vector<Primitive> prim;
  std::vector<double> theta;
  std::vector<double> p;
};

struct DiagnosticsRow {
  double t;
  double dt;
  double mass;
  double momentum;
  double energy;
  double entropy;
};

struct Diagnostics {
  /// Row 0 is the initial state (dt = 0), then one row per step.
  std::vector<DiagnosticsRow> rows;
  /// Per step: time integral of (left boundary flux - right boundary flux)
  /// for mass, momentum and energy; zero for periodic runs.
  std::vector<Vec4> boundary_inflow;
  /// Cells reconstructed at first order because a limited state was
  /// non-physical, summed over all stages.
  long fallback_cells = 0;
  /// Step attempts discarded and retried with half the step size.
  long rejected_steps = 0;
  long steps = 0;
};

struct RunResult {
  std::vector<SolutionFrame> frames;
  Diagnostics diagnostics;
};

/// Grid and integrator settings shared by the step functions.
struct Discretization {
  ModelParams model;
  double dx;
  Scheme scheme = Scheme::hyperbolic;
  Limiter limiter = Limiter::minmod;
  Boundary bc = Boundary::transmissive;
  ReconstructionVars reconstruction = ReconstructionVars::conserved;
};

Discretization discretization_of(const RunConfig& config);

double minmod_slope(double left_diff, double right_diff);

/// Interface values of the cells of a ghost-padded array `padded`
/// (2 ghosts each side): w_minus[i] is the value at the left face and
/// w_plus[i] at the right face of padded cell i, for i in 1 .. size-2.
/// Entries 0 and size-1 are left equal to the averages.
struct Reconstruction {
  std::vector<Vec4> w_minus;
  std::vector<Vec4> w_plus;
  long fallbacks = 0;
};

Reconstruction muscl_reconstruct(const Discretization& disc,
                                 const std::vector<Vec4>& padded);

/// 1/2 (f(a) + f(b)) - 1/2 s_max (b - a), s_max = max |lambda| over a and b.
Vec4 rusanov_flux(const Discretization& disc, const Conserved& a,
                  const Conserved& b);

/// CFL step, not yet clipped to output times. For euler_fourier the step is
/// also limited to 0.9 / (s_max/dx + 2 D/dx^2) with D = K / min(1, rho c_v).
double timestep(const Discretization& disc, const std::vector<Conserved>& q,
                double cfl);

struct ImplicitSolve {
  Conserved q;
  int iterations;
};

/// Solves j = j_e - a j / tau(rho, p(j)) with rho, mom, E fixed.
ImplicitSolve implicit_source_solve(const ModelParams& params,
                                    const Conserved& explicit_part, double a);

/// -(F_{i+1/2} - F_{i-1/2}) / dx for every cell; if `boundary` is given it
/// receives the left and right boundary fluxes.
std::vector<Vec4> flux_rhs(const Discretization& disc,
                           const std::vector<Conserved>& q, long* fallbacks,
                           std::array<Vec4, 2>* boundary = nullptr);

/// Same as flux_rhs under the Euler-Fourier scheme.
std::vector<Vec4> euler_fourier_rhs(const Discretization& disc,
                                    const std::vector<Conserved>& q);

struct StepInfo {
  /// Time integral of the boundary fluxes (left - right) over the step.
  Vec4 boundary_inflow{};
  long fallbacks = 0;
};

/// One ARS(2,2,2) step of size dt.
std::vector<Conserved> ars222_step(const Discretization& disc,
                                   const std::vector<Conserved>& q, double dt,
                                   StepInfo* info = nullptr);

std::vector<Conserved> initial_state(const RunConfig& config);

SolutionFrame make_frame(const RunConfig& config, double t,
                         const std::vector<Conserved>& q);

/// Totals over the grid: mass, momentum, energy, entropy (int rho eta dx).
DiagnosticsRow totals(const Discretization& disc,
                      const std::vector<Conserved>& q);

RunResult run(const RunConfig& config);

/// Self-convergence on successively doubled grids. errors[i] is the L1
/// distance between grid i and grid i+1 restricted to grid i (pairwise cell
/// averaging), per conserved component; rates[i] = log2(errors[i] /
/// errors[i+1]).
struct ConvergenceStudy {
  std::vector<int> grids;
  std::vector<Vec4> errors;
  std::vector<Vec4> rates;
};

ConvergenceStudy self_convergence(const RunConfig& base,
                                  const std::vector<int>& grids);

}  // namespace heatwave
