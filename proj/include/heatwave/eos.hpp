#pragma once

// Polytropic gas:  eps(rho, eta) = rho^(gamma-1) / (gamma-1) * exp(eta / c_v).

namespace heatwave {

struct GasParams {
  double gamma = 1.4;
  double c_v = 1.5;
  /// Densities below this are treated as vacuum and rejected.
  double rho_floor = 1e-12;

  /// Throws ConfigError unless gamma > 1, c_v > 0.
  void validate() const;
};

/// Partial derivatives of p(rho, eta) and theta(rho, eta).
struct ThermoDerivatives {
  double p_rho;
  double p_eta;
  double theta_rho;
  double theta_eta;
};

double specific_internal_energy(const GasParams& gas, double rho, double eta);
double pressure(const GasParams& gas, double rho, double eta);
double temperature(const GasParams& gas, double rho, double eta);
ThermoDerivatives thermo_derivatives(const GasParams& gas, double rho,
                                     double eta);

/// Inverse of pressure() in eta.
double entropy_from_pressure(const GasParams& gas, double rho, double p);

/// theta from (rho, p); avoids the exponential.
inline double temperature_from_pressure(const GasParams& gas, double rho,
                                        double p) {
  return p / (gas.c_v * (gas.gamma - 1.0) * rho);
}

/// Same derivatives evaluated from (rho, p), used in flux loops.
inline ThermoDerivatives thermo_derivatives_from_pressure(
    const GasParams& gas, double rho, double p) {
  const double theta = temperature_from_pressure(gas, rho, p);
  return {gas.gamma * p / rho, p / gas.c_v, (gas.gamma - 1.0) * theta / rho,
          theta / gas.c_v};
}

/// Throws DomainError when rho is not above the vacuum floor (or NaN).
void check_density(const GasParams& gas, double rho);

}  // namespace heatwave
