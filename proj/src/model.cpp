#include "heatwave/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave {

namespace {

constexpr double kClampTolerance = 1e-12;

bool finite(double x) { return std::isfinite(x); }

struct Speeds1D {
  double ap2, aT2, apT4;
};

Speeds1D auxiliary_speeds(const ModelParams& params, double rho,
                          const ThermoDerivatives& d) {
  const double k2r2 = params.kappa * params.kappa / (rho * rho);
  return {d.p_rho, k2r2 * d.theta_eta, k2r2 * d.p_eta * d.theta_rho};
}

// sqrt(Y1 -/+ Y2) from the auxiliary speeds; the difference is formed as
// (ap2 aT2 - apT4)/(Y1+Y2) to avoid cancellation.
void fill_speeds(WaveSpeeds& w, double u, const Speeds1D& a) {
  w.Y1 = 0.5 * (a.ap2 + a.aT2);
  w.Y3 = 0.5 * (a.ap2 - a.aT2);
  w.Y2 = std::sqrt(a.apT4 + w.Y3 * w.Y3);
  double det = a.ap2 * a.aT2 - a.apT4;
  const double scale = std::max(a.ap2 * a.aT2, a.apT4);
  if (det < 0.0) {
    if (det >= -kClampTolerance * std::max(scale, 1.0)) {
      det = 0.0;
    } else {
      throw DomainError(fmt::format(
          "Y1 - Y2 = {} is negative: energy is not convex at this state", det));
    }
  }
  const double slow = std::sqrt(det / (w.Y1 + w.Y2));
  const double fast = std::sqrt(w.Y1 + w.Y2);
  w.lambda1 = u - fast;
  w.lambda2 = u - slow;
  w.lambda3 = u + slow;
  w.lambda4 = u + fast;
  w.a_p = std::sqrt(a.ap2);
  w.a_T = std::sqrt(a.aT2);
  w.a_pT = std::sqrt(std::sqrt(a.apT4));
}

}  // namespace

void ModelParams::validate() const {
  gas.validate();
  if (!(kappa >= 0.0)) {
    throw ConfigError(fmt::format("kappa must be >= 0 (got {})", kappa));
  }
  if (!(K >= 0.0)) {
    throw ConfigError(fmt::format("K must be >= 0 (got {})", K));
  }
  if (tau_policy == TauPolicy::constant && !(tau0 > 0.0)) {
    throw ConfigError(fmt::format("constant tau must be > 0 (got {})", tau0));
  }
}

double WaveSpeeds::max_abs() const {
  return std::max(std::max(std::abs(lambda1), std::abs(lambda2)),
                  std::max(std::abs(lambda3), std::abs(lambda4)));
}

Primitive to_primitive(const GasParams& gas, const PressureState& s) {
  return {s.rho, s.u, entropy_from_pressure(gas, s.rho, s.p), s.j};
}

PressureState to_pressure_state(const GasParams& gas, const Primitive& v) {
  return {v.rho, v.u, pressure(gas, v.rho, v.eta), v.j};
}

double total_energy(const ModelParams& params, const PressureState& s) {
  const double k2 = params.kappa * params.kappa;
  return 0.5 * s.rho * s.u * s.u + s.p / (params.gas.gamma - 1.0) +
         0.5 * k2 * s.j * s.j / s.rho;
}

Conserved prim_to_cons(const ModelParams& params, const Primitive& v) {
  const double eps = specific_internal_energy(params.gas, v.rho, v.eta);
  const double k2 = params.kappa * params.kappa;
  return {v.rho, v.rho * v.u,
          0.5 * v.rho * v.u * v.u + v.rho * eps + 0.5 * k2 * v.j * v.j / v.rho,
          v.j};
}

double pressure_of(const ModelParams& params, const Conserved& q) {
  check_density(params.gas, q.rho);
  const double k2 = params.kappa * params.kappa;
  const double internal =
      q.E - 0.5 * q.mom * q.mom / q.rho - 0.5 * k2 * q.j * q.j / q.rho;
  if (!(internal > 0.0)) {
    throw NonPhysicalStateError(fmt::format(
        "non-physical state (rho={}, mom={}, E={}, j={}): internal energy {}",
        q.rho, q.mom, q.E, q.j, internal));
  }
  return (params.gas.gamma - 1.0) * internal;
}

Primitive cons_to_prim(const ModelParams& params, const Conserved& q) {
  const double p = pressure_of(params, q);
  return {q.rho, q.mom / q.rho, entropy_from_pressure(params.gas, q.rho, p),
          q.j};
}

Vec4 flux_from_pressure(const ModelParams& params, const Conserved& q,
                        double p) {
  const double u = q.mom / q.rho;
  const double theta = temperature_from_pressure(params.gas, q.rho, p);
  const double k2 = params.kappa * params.kappa;
  return {q.mom, q.mom * u + p, (q.E + p) * u + k2 / q.rho * theta * q.j,
          q.j * u + theta};
}

Vec4 flux(const ModelParams& params, const Conserved& q) {
  return flux_from_pressure(params, q, pressure_of(params, q));
}

double relax_time(const ModelParams& params, double rho, double p) {
  if (params.tau_policy == TauPolicy::constant) {
    return params.tau0;
  }
  if (!(params.kappa > 0.0)) {
    throw ConfigError("asymptotic relaxation time requires kappa > 0");
  }
  if (!(params.K > 0.0)) {
    throw ConfigError("asymptotic relaxation time requires K > 0");
  }
  const GasParams& g = params.gas;
  return params.K * g.c_v * (g.gamma - 1.0) * rho * rho /
         (params.kappa * params.kappa * p);
}

Vec4 source(const ModelParams& params, const Conserved& q) {
  if (!params.relaxation || q.j == 0.0) {
    return {0.0, 0.0, 0.0, 0.0};
  }
  const double tau = relax_time(params, q.rho, pressure_of(params, q));
  return {0.0, 0.0, 0.0, -q.j / tau};
}

WaveSpeeds wave_speeds_from_pressure(const ModelParams& params, double rho,
                                     double u, double p, double j) {
  (void)j;  // the 1D speeds do not depend on j
  const ThermoDerivatives d =
      thermo_derivatives_from_pressure(params.gas, rho, p);
  WaveSpeeds w{};
  fill_speeds(w, u, auxiliary_speeds(params, rho, d));
  return w;
}

WaveSpeeds wave_speeds_1d(const ModelParams& params, const Primitive& v) {
  if (!finite(v.rho) || !finite(v.u) || !finite(v.eta) || !finite(v.j) ||
      !finite(params.kappa)) {
    throw DomainError("NaN or infinite input to wave_speeds_1d");
  }
  const ThermoDerivatives d = thermo_derivatives(params.gas, v.rho, v.eta);
  WaveSpeeds w{};
  fill_speeds(w, v.u, auxiliary_speeds(params, v.rho, d));
  return w;
}

Mat4 quasilinear_matrix_1d(const ModelParams& params, const Primitive& v) {
  const ThermoDerivatives d = thermo_derivatives(params.gas, v.rho, v.eta);
  const double k2 = params.kappa * params.kappa;
  const double r = v.rho;
  Mat4 a{};
  a[0] = {v.u, r, 0.0, 0.0};
  a[1] = {d.p_rho / r, v.u, d.p_eta / r, 0.0};
  a[2] = {-k2 * v.j / (r * r * r), 0.0, v.u, k2 / (r * r)};
  a[3] = {d.theta_rho, v.j, d.theta_eta, v.u};
  return a;
}

Vec4 right_eigenvector(const ModelParams& params, const Primitive& v, int m) {
  if (m < 1 || m > 4) {
    throw DomainError(fmt::format("field index {} outside 1..4", m));
  }
  const WaveSpeeds w = wave_speeds_1d(params, v);
  const double k = params.kappa;
  const double y12m = w.Y1 - w.Y2;
  const double y23m = w.Y2 - w.Y3;
  const double y23p = w.Y2 + w.Y3;
  if (!(k > 0.0) || !(y12m > 0.0) || !(y23m > 0.0) || !(y23p > 0.0)) {
    throw DegenerateFieldError(
        "coincident eigenvalues: closed-form eigenvectors undefined");
  }
  const double r = v.rho;
  const double u12p = std::sqrt(w.Y1 + w.Y2);
  const double u12m = std::sqrt(y12m);
  const double ratio = std::sqrt(y23m) / std::sqrt(y23p);  // v23^- / v23^+
  switch (m) {
    case 1:
      return {r, -u12p, k / r * ratio, v.j - r / k * u12p * ratio};
    case 2:
      return {r, -u12m, -k / r / ratio, v.j + r / k * u12m / ratio};
    case 3:
      return {r, u12m, -k / r / ratio, v.j - r / k * u12m / ratio};
    default:
      return {r, u12p, k / r * ratio, v.j + r / k * u12p * ratio};
  }
}

double char_field_indicator(const ModelParams& params, const Primitive& v,
                            int m) {
  const Vec4 r = right_eigenvector(params, v, m);
  const Vec4 base = {v.rho, v.u, v.eta, v.j};
  auto lambda_at = [&](const Vec4& s) {
    return wave_speeds_1d(params, Primitive{s[0], s[1], s[2], s[3]})
        .as_array()[static_cast<std::size_t>(m - 1)];
  };
  double dot = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(base[i]));
    Vec4 plus = base;
    Vec4 minus = base;
    plus[i] += h;
    minus[i] -= h;
    dot += (lambda_at(plus) - lambda_at(minus)) / (2.0 * h) * r[i];
  }
  return dot;
}

Eigenvalues3D eigenvalues_3d(const ModelParams& params, const Primitive3D& v) {
  const ThermoDerivatives d = thermo_derivatives(params.gas, v.rho, v.eta);
  const Speeds1D a = auxiliary_speeds(params, v.rho, d);
  const double k2 = params.kappa * params.kappa;
  const double aq2 =
      2.0 * k2 / (v.rho * v.rho) * (v.j[1] * v.j[1] + v.j[2] * v.j[2]);
  Eigenvalues3D e{};
  e.Z1 = 0.5 * (a.ap2 + a.aT2 + aq2);
  e.Z3 = 0.5 * (a.ap2 - a.aT2);
  e.Z2 = std::sqrt(a.apT4 + e.Z3 * e.Z3);
  e.a_q = std::sqrt(aq2);
  // Z1^2 - Z2^2 = ap2 aT2 - apT4 + aq2 (ap2 + aT2)/2 + aq2^2/4 >= 0
  double diff = a.ap2 * a.aT2 - a.apT4 + 0.5 * aq2 * (a.ap2 + a.aT2) +
                0.25 * aq2 * aq2;
  diff = std::max(diff, 0.0);
  const double slow = std::sqrt(diff / (e.Z1 + e.Z2));
  const double fast = std::sqrt(e.Z1 + e.Z2);
  const double u1 = v.u[0];
  e.chi = {u1 - fast, u1 - slow, u1, u1, u1, u1, u1 + slow, u1 + fast};
  return e;
}

std::array<double, 11> eigenvalues_curl_cleaning(const ModelParams& params,
                                                 const Primitive3D& v,
                                                 double a_c) {
  const Eigenvalues3D e = eigenvalues_3d(params, v);
  const double u1 = v.u[0];
  return {u1 - a_c, u1 - a_c, e.chi[0], e.chi[1], u1,      u1,
          u1,       e.chi[6], e.chi[7], u1 + a_c, u1 + a_c};
}

std::array<std::array<double, 8>, 8> quasilinear_matrix_3d(
    const ModelParams& params, const Primitive3D& v) {
  const ThermoDerivatives d = thermo_derivatives(params.gas, v.rho, v.eta);
  const double k2 = params.kappa * params.kappa;
  const double r = v.rho;
  const double r2 = r * r;
  const double r3 = r2 * r;
  const auto& j = v.j;
  const double u1 = v.u[0];
  std::array<std::array<double, 8>, 8> a{};
  a[0] = {u1, r, 0, 0, 0, 0, 0, 0};
  a[1] = {d.p_rho / r + k2 * (j[1] * j[1] + j[2] * j[2]) / r3,
          u1,
          0,
          0,
          d.p_eta / r,
          0,
          -2.0 * k2 * j[1] / r2,
          -2.0 * k2 * j[2] / r2};
  a[2] = {-k2 * j[0] * j[1] / r3, 0, u1, 0, 0, k2 * j[1] / r2,
          k2 * j[0] / r2,         0};
  a[3] = {-k2 * j[0] * j[2] / r3, 0, 0, u1, 0, k2 * j[2] / r2, 0,
          k2 * j[0] / r2};
  a[4] = {-k2 * j[0] / r3, 0, 0, 0, u1, k2 / r2, 0, 0};
  a[5] = {d.theta_rho, j[0], j[1], j[2], d.theta_eta, u1, 0, 0};
  a[6] = {0, 0, 0, 0, 0, 0, u1, 0};
  a[7] = {0, 0, 0, 0, 0, 0, 0, u1};
  return a;
}

ConvexityReport convexity_check(const ModelParams& params, const Primitive& v) {
  const GasParams& g = params.gas;
  const double eps = specific_internal_energy(g, v.rho, v.eta);
  const double vol = 1.0 / v.rho;
  // eps(v, eta) = v^(1-gamma)/(gamma-1) exp(eta/c_v)
  const double e_vv = g.gamma * eps * (g.gamma - 1.0) / (vol * vol);
  const double e_hh = eps / (g.c_v * g.c_v);
  const double e_vh = -(g.gamma - 1.0) * eps / (vol * g.c_v);
  // alpha(1/v)/v = kappa^2 for alpha(rho) = kappa^2/rho: the (v j)^2 term has
  // a constant coefficient, so the Hessian is block diagonal.
  const double a_over_v = params.kappa * params.kappa;
  const double det_eps = e_hh * e_vv - e_vh * e_vh;

  ConvexityReport rep{};
  rep.hessian = Mat4{};
  rep.hessian[0][0] = 1.0;
  rep.hessian[1][1] = a_over_v;
  rep.hessian[2][2] = e_hh;
  rep.hessian[2][3] = e_vh;
  rep.hessian[3][2] = e_vh;
  rep.hessian[3][3] = e_vv;
  rep.sylvester = {e_hh, a_over_v, a_over_v * det_eps};
  if (params.kappa > 0.0) {
    rep.convex = e_hh > 0.0 && a_over_v > 0.0 && rep.sylvester[2] > 0.0;
  } else {
    // Euler limit: j decouples and only eps(v, eta) matters.
    rep.convex = e_hh > 0.0 && det_eps > 0.0;
  }
  return rep;
}

}  // namespace heatwave
