#include "heatwave/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave::dispersion {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr double kStabilityTolerance = 1e-12;
constexpr cplx kI(0.0, 1.0);

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError(fmt::format("wavenumber must be positive (got {})", k));
  }
}

void check_stable(const std::vector<cplx>& roots, const char* which, double k) {
  for (const cplx& r : roots) {
    if (r.imag() > kStabilityTolerance) {
      throw StabilityError(fmt::format(
          "{} root {}{:+}i at k = {} lies in the unstable half plane", which,
          r.real(), r.imag(), k));
    }
  }
}

}  // namespace

double rest_relax_time(const ModelParams& params, const RestState& rest) {
  const double p = pressure(params.gas, rest.rho, rest.eta);
  const double tau = relax_time(params, rest.rho, p);
  if (!(tau > 0.0)) {
    throw DomainError(fmt::format("relaxation time must be positive (got {})", tau));
  }
  return tau;
}

std::array<cplx, 5> model_polynomial(const ModelParams& params,
                                     const RestState& rest, double k) {
  check_k(k);
  if (!(params.kappa > 0.0)) {
    throw DomainError("model dispersion requires kappa > 0");
  }
  const double tau = rest_relax_time(params, rest);
  const ThermoDerivatives d = thermo_derivatives(params.gas, rest.rho, rest.eta);
  const double k2r2 = params.kappa * params.kappa / (rest.rho * rest.rho);
  const cplx damp = kI / (k * tau);
  return {1.0, damp, -(k2r2 * d.theta_eta + d.p_rho), -damp * d.p_rho,
          k2r2 * (d.p_rho * d.theta_eta - d.p_eta * d.theta_rho)};
}

std::array<cplx, 4> euler_polynomial(const ModelParams& params,
                                     const RestState& rest, double k) {
  check_k(k);
  if (!(params.K >= 0.0)) {
    throw DomainError(fmt::format("conductivity must be >= 0 (got {})", params.K));
  }
  const double theta = temperature(params.gas, rest.rho, rest.eta);
  const ThermoDerivatives d = thermo_derivatives(params.gas, rest.rho, rest.eta);
  const cplx g = kI * params.K * k / (rest.rho * theta);
  return {1.0, g * d.theta_eta, -d.p_rho,
          -g * (d.p_rho * d.theta_eta - d.p_eta * d.theta_rho)};
}

DispersionSample classify(const std::vector<cplx>& model_roots,
                          const std::vector<cplx>& euler_roots, double k,
                          const DispersionSample* previous) {
  if (model_roots.size() != 4 || euler_roots.size() != 3) {
    throw DomainError("classify expects 4 model roots and 3 Euler-Fourier roots");
  }
  check_stable(model_roots, "model", k);
  check_stable(euler_roots, "Euler-Fourier", k);

  DispersionSample s{};
  s.k = k;

  std::vector<cplx> m = model_roots;
  std::sort(m.begin(), m.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
  const double scale = std::max({1.0, std::abs(m[1]), std::abs(m[2])});
  if (std::abs(m[1].real() - m[2].real()) <= kTieTolerance * scale) {
    bool swap;
    if (previous) {
      const double same = std::abs(m[1] - previous->model_roots[1]) +
                          std::abs(m[2] - previous->model_roots[2]);
      const double crossed = std::abs(m[1] - previous->model_roots[2]) +
                             std::abs(m[2] - previous->model_roots[1]);
      swap = crossed < same;
    } else {
      swap = m[1].imag() > m[2].imag();
    }
    if (swap) std::swap(m[1], m[2]);
  }
  std::copy(m.begin(), m.end(), s.model_roots.begin());
  s.c_f = 0.5 * std::abs(m[3].real() - m[0].real());
  s.c_s = 0.5 * std::abs(m[2].real() - m[1].real());
  for (std::size_t i = 0; i < 4; ++i) {
    s.beta[i] = -k * m[i].imag();
  }

  std::vector<cplx> e = euler_roots;
  const auto damped = std::min_element(
      e.begin(), e.end(), [](const cplx& a, const cplx& b) {
        return std::abs(a.real()) < std::abs(b.real());
      });
  const cplx mode = *damped;
  e.erase(damped);
  if (e[0].real() < e[1].real()) std::swap(e[0], e[1]);
  s.euler_roots = {e[0], e[1], mode};
  s.c_tilde = 0.5 * (e[0].real() - e[1].real());
  s.beta_t1 = -k * e[0].imag();
  const double other = -k * e[1].imag();
  s.beta_t1_shared = std::abs(s.beta_t1 - other) <=
                     1e-8 * std::max({std::abs(s.beta_t1), std::abs(other), 1e-300});
  s.beta_t2 = -k * mode.imag();
  return s;
}

DispersionSample sample(const ModelParams& params, const RestState& rest,
                        double k, const DispersionSample* previous) {
  const auto fm = model_polynomial(params, rest, k);
  const auto fe = euler_polynomial(params, rest, k);
  return classify(solve_roots(fm), solve_roots(fe), k, previous);
}

std::vector<double> log_grid(double k_min, double k_max, int n) {
  if (!(k_min > 0.0) || !(k_max > k_min) || n < 2) {
    throw DomainError(fmt::format("invalid wavenumber grid [{}, {}] x {}", k_min,
                                  k_max, n));
  }
  std::vector<double> ks(static_cast<std::size_t>(n));
  const double a = std::log10(k_min);
  const double b = std::log10(k_max);
  for (int i = 0; i < n; ++i) {
    ks[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (n - 1));
  }
  ks.front() = k_min;
  ks.back() = k_max;
  return ks;
}

std::vector<DispersionSample> sweep(const ModelParams& params,
                                    const RestState& rest,
                                    const std::vector<double>& ks) {
  std::vector<DispersionSample> out;
  out.reserve(ks.size());
  for (double k : ks) {
    out.push_back(sample(params, rest, k, out.empty() ? nullptr : &out.back()));
  }
  return out;
}

}  // namespace heatwave::dispersion
