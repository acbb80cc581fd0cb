#pragma once

#include <array>

#include "heatwave/eos.hpp"

// One-dimensional hyperbolic heat-transfer model with alpha(rho) = kappa^2/rho:
//
//   d_t rho + d_x(rho u)                           = 0
//   d_t(rho u) + d_x(rho u^2 + p)                  = 0
//   d_t E + d_x(E u + p u + kappa^2/rho theta j)   = 0
//   d_t j + d_x(j u + theta)                       = -j / tau
//
// with E = rho u^2/2 + rho eps + kappa^2 j^2 / (2 rho).

namespace heatwave {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

enum class TauPolicy {
  constant,    ///< tau = tau0
  asymptotic,  ///< tau = K / (alpha(rho) theta), consistent with Fourier's law
};

struct ModelParams {
  GasParams gas;
  double kappa = 1.0;
  double K = 0.0;
  TauPolicy tau_policy = TauPolicy::asymptotic;
  double tau0 = 1.0;
  /// false: homogeneous system, source() is identically zero.
  bool relaxation = true;

  void validate() const;
};

struct Conserved {
  double rho;
  double mom;
  double E;
  double j;

  Vec4 as_vec() const { return {rho, mom, E, j}; }
  static Conserved from_vec(const Vec4& q) { return {q[0], q[1], q[2], q[3]}; }
};

struct Primitive {
  double rho;
  double u;
  double eta;
  double j;
};

/// Primitive state written with pressure instead of entropy, as initial data
/// is usually given.
struct PressureState {
  double rho;
  double u;
  double p;
  double j;
};

struct WaveSpeeds {
  double lambda1, lambda2, lambda3, lambda4;
  double Y1, Y2, Y3;
  double a_p, a_T, a_pT;

  /// Largest |lambda_m|.
  double max_abs() const;
  std::array<double, 4> as_array() const {
    return {lambda1, lambda2, lambda3, lambda4};
  }
};

Primitive to_primitive(const GasParams& gas, const PressureState& s);
PressureState to_pressure_state(const GasParams& gas, const Primitive& v);

Conserved prim_to_cons(const ModelParams& params, const Primitive& v);
Primitive cons_to_prim(const ModelParams& params, const Conserved& q);

/// p = (gamma-1)(E - rho u^2/2 - kappa^2 j^2/(2 rho)).
/// Throws NonPhysicalStateError if it is not positive.
double pressure_of(const ModelParams& params, const Conserved& q);

/// Total energy density of (rho, u, p, j).
double total_energy(const ModelParams& params, const PressureState& s);

Vec4 flux(const ModelParams& params, const Conserved& q);

/// Flux with p already known; no validation.
Vec4 flux_from_pressure(const ModelParams& params, const Conserved& q,
                        double p);

/// Relaxation time. Asymptotic policy: tau = K c_v (gamma-1) rho^2/(kappa^2 p)
/// = K / (alpha theta). Throws ConfigError when kappa = 0 or K = 0.
double relax_time(const ModelParams& params, double rho, double p);

/// (0, 0, 0, -j/tau), or zero in homogeneous mode.
Vec4 source(const ModelParams& params, const Conserved& q);

WaveSpeeds wave_speeds_1d(const ModelParams& params, const Primitive& v);
WaveSpeeds wave_speeds_from_pressure(const ModelParams& params, double rho,
                                     double u, double p, double j);

/// Quasilinear matrix A in d_t V + A d_x V = 0, V = (rho, u, eta, j).
Mat4 quasilinear_matrix_1d(const ModelParams& params, const Primitive& v);

/// Closed-form right eigenvector of A for field m (1..4), first entry rho.
Vec4 right_eigenvector(const ModelParams& params, const Primitive& v, int m);

/// grad_V lambda_m . r_m: zero for linearly degenerate points, sign change
/// where the field loses genuine nonlinearity. Gradient by central
/// differences with relative step 1e-6.
double char_field_indicator(const ModelParams& params, const Primitive& v,
                            int m);

struct Primitive3D {
  double rho;
  std::array<double, 3> u;
  double eta;
  std::array<double, 3> j;
};

struct Eigenvalues3D {
  /// chi_1 .. chi_8 in increasing order; chi_3..chi_6 = u_1.
  std::array<double, 8> chi;
  double Z1, Z2, Z3;
  double a_q;
};

/// Speeds of the three-dimensional system along x. The 3D system is only
/// weakly hyperbolic: u_1 has algebraic multiplicity 4 but only two
/// eigenvectors, so no eigenbasis is returned.
Eigenvalues3D eigenvalues_3d(const ModelParams& params, const Primitive3D& v);

/// Speeds with curl cleaning at cleaning velocity a_c, ascending order of
/// the formulas: u1-a_c (x2), u1-sqrt(Z1+Z2), u1-sqrt(Z1-Z2), u1 (x3),
/// u1+sqrt(Z1-Z2), u1+sqrt(Z1+Z2), u1+a_c (x2).
std::array<double, 11> eigenvalues_curl_cleaning(const ModelParams& params,
                                                 const Primitive3D& v,
                                                 double a_c);

/// 8x8 quasilinear matrix of the 3D system along x,
/// V = (rho, u1, u2, u3, eta, j1, j2, j3).
std::array<std::array<double, 8>, 8> quasilinear_matrix_3d(
    const ModelParams& params, const Primitive3D& v);

struct ConvexityReport {
  bool convex;
  /// eps_eta_eta, alpha(1/v)/v, det of the Hessian.
  std::array<double, 3> sylvester;
  /// Hessian of e(u, v j, eta, v) in that variable order.
  Mat4 hessian;
};

/// Convexity of the specific energy e(u, v j, eta, v) at a state.
ConvexityReport convexity_check(const ModelParams& params, const Primitive& v);

}  // namespace heatwave
