#pragma once

#include <array>
#include <vector>

#include "heatwave/model.hpp"
#include "heatwave/polynomial.hpp"

// Phase velocities c = omega/k of plane waves exp(i(kx - omega t)) about a
// rest state (u = 0, j = 0). Stable modes have Im(c) <= 0.

namespace heatwave::dispersion {

struct RestState {
  double rho;
  double eta;
};

/// Monic quartic of the hyperbolic model, descending powers:
///   c^4 + (i/k tau) c^3 - (kappa^2 theta_eta/rho^2 + p_rho) c^2
///   - (i/k tau) p_rho c + kappa^2/rho^2 (p_rho theta_eta - p_eta theta_rho).
std::array<cplx, 5> model_polynomial(const ModelParams& params,
                                     const RestState& rest, double k);

/// Monic cubic of the Euler-Fourier system, descending powers:
///   c^3 + (i K k theta_eta/(rho theta)) c^2 - p_rho c
///   - (i K k/(rho theta)) (p_rho theta_eta - p_eta theta_rho).
std::array<cplx, 4> euler_polynomial(const ModelParams& params,
                                     const RestState& rest, double k);

/// Relaxation time entering the quartic.
double rest_relax_time(const ModelParams& params, const RestState& rest);

struct DispersionSample {
  double k;
  /// c_1 = -c_f + ..., c_2 = -c_s + ..., c_3 = c_s + ..., c_4 = c_f + ...
  std::array<cplx, 4> model_roots;
  /// +c~ mode, -c~ mode, damped mode.
  std::array<cplx, 3> euler_roots;
  double c_f, c_s;
  std::array<double, 4> beta;
  double c_tilde;
  double beta_t1, beta_t2;
  /// Whether both travelling Euler-Fourier roots share beta_t1 to 1e-8.
  bool beta_t1_shared;
};

/// Orders and pairs the roots. `previous` (the neighbouring k sample) breaks
/// ties between the two slow roots by continuity; without it the root with
/// the larger imaginary part is taken as c_3. Throws StabilityError when a
/// root has Im > 1e-12.
DispersionSample classify(const std::vector<cplx>& model_roots,
                          const std::vector<cplx>& euler_roots, double k,
                          const DispersionSample* previous = nullptr);

DispersionSample sample(const ModelParams& params, const RestState& rest,
                        double k, const DispersionSample* previous = nullptr);

/// n log-spaced wavenumbers on [k_min, k_max].
std::vector<double> log_grid(double k_min, double k_max, int n);

/// Samples along the grid with path-following between neighbours.
std::vector<DispersionSample> sweep(const ModelParams& params,
                                    const RestState& rest,
                                    const std::vector<double>& ks);

}  // namespace heatwave::dispersion
