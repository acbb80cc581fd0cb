#pragma once

#include <array>
#include <string>
#include <vector>

#include "heatwave/model.hpp"

// Rankine-Hugoniot analysis in dimensionless variables p~ = p/p0, v~ = v/v0
// around a center state (v0, p0), with kappa~ = v0 kappa / ((gamma-1) c_v).
//
// The Hugoniot locus through the center is
//
//   (v~ p~ - 1)/(gamma-1) + (p~+1)(v~-1)/2
//       + kappa~^2/2 ((v~ p~)^2 - 1)(v~-1)/(p~-1) = 0,
//
// a quadratic in p~ whose two roots form the acoustic (p~+) and thermal
// (p~-) branches.

namespace heatwave::hugoniot {

enum class Branch { acoustic, thermal };
enum class Direction { left_moving, right_moving };

const char* to_string(Branch b);

/// a p~^2 + b p~ + c = 0 at fixed v~.
struct Quadratic {
  double a, b, c;
};

Quadratic hugoniot_quadratic(double kappa_t, double gamma, double v_tilde);

/// Left-hand side of the dimensionless Hugoniot relation at (v~, p~).
double hugoniot_residual(double kappa_t, double gamma, double v_tilde,
                         double p_tilde);

/// Branch pressure p~(v~). Throws PoleError at a pole of the branch and
/// DomainError for v~ <= 0.
double branch_pressure(double kappa_t, double gamma, double v_tilde,
                       Branch branch);

/// The explicit gamma = 2 expression
/// (v+1 +- (1-v) sqrt(k^4 v^2 + k^2 (v-1)^2 + 4)) / (v (k^2 (v-1) v + 3) - 1).
double branch_pressure_gamma2(double kappa_t, double v_tilde, Branch branch);

/// Positive v~ where the leading coefficient vanishes, ascending. Each lies on
/// the acoustic branch (v~ < 1); the thermal branch is pole free for v~ > 0.
std::vector<double> branch_poles(double kappa_t, double gamma);

/// Dimensionless squared mass flux -(p~-1)/(v~-1) along a branch.
double mass_flux_sq(double kappa_t, double gamma, double v_tilde,
                    Branch branch);

/// Clausius-Duhem function divided by c_v:
///   log(p~ v~^gamma) - (gamma-1) kappa~^2 (p~ v~ - 1) / M~^2.
/// Zero at v~ = 1. Throws DomainError when M~^2 <= 0.
double psi(double kappa_t, double gamma, double v_tilde, Branch branch);

/// Second derivative quantity at the center for gamma = 2 whose sign decides
/// admissibility near the center (negative below the critical coupling).
double g_second_at_center(double kappa_t);

/// Root of g_second_at_center on [0.5, 2].
double critical_kappa();

/// sqrt(6) / sqrt(2 + cbrt(17 - 12 sqrt 2) + cbrt(17 + 12 sqrt 2)).
double critical_kappa_closed_form();

/// Location of the interior maximum of the thermal-branch psi. The maximum
/// lies on v~ < 1 above the critical coupling and on v~ > 1 below it.
double v_star(double kappa_t, double gamma = 2.0);

/// Tabulated branches. Entries that are undefined (pole, M~^2 <= 0) are NaN.
struct HugoniotSample {
  double v_tilde;
  double p_plus, p_minus;
  double psi_plus, psi_minus;
  double Msq_minus;
};

HugoniotSample sample(double kappa_t, double gamma, double v_tilde);

/// Samples on [v_min, v_max], skipping points within 1e-6 of a pole.
std::vector<HugoniotSample> sample_range(double kappa_t, double gamma,
                                         double v_min, double v_max, int n,
                                         std::vector<std::string>* warnings);

struct ShockConstruction {
  Primitive left;
  Primitive right;
  double D;
  double M;
  Branch branch;
  /// [M eta + kappa^2 j / rho] taken as (ahead) - (behind).
  double entropy_jump;
  bool admissible;
  /// v~ = 1: left equals right and D, M are meaningless.
  bool degenerate;
};

/// Left state connected to `right` by a discontinuity on `branch` with
/// v_L = v_tilde_left * v_R.
ShockConstruction construct_shock_state(const ModelParams& params,
                                        const Primitive& right,
                                        double v_tilde_left, Branch branch,
                                        Direction direction);

/// Residuals of the four jump conditions, in the shock frame:
///   [M], [p + M^2/rho], [M(M^2/(2 rho^2) + eps + p/rho + kappa^2 j^2/(2 rho^2))
///   + kappa^2 theta j / rho], [M j / rho + theta].
std::array<double, 4> rh_residuals(const ModelParams& params,
                                   const Primitive& left,
                                   const Primitive& right, double D);

struct ContactCheck {
  /// Whether a stationary interface (M = 0) between the states satisfies the
  /// jump conditions.
  bool admissible;
  /// kappa = 0: the system is Euler's and only [u] = [p] = 0 is checked.
  bool euler_limit;
};

ContactCheck contact_discontinuity_check(const ModelParams& params,
                                         const Primitive& left,
                                         const Primitive& right);

}  // namespace heatwave::hugoniot
