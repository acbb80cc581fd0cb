#include "heatwave/eos.hpp"

#include <cmath>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave {

void GasParams::validate() const {
  if (!(gamma > 1.0)) {
    throw ConfigError(fmt::format("gamma must exceed 1 (got {})", gamma));
  }
  if (!(c_v > 0.0)) {
    throw ConfigError(fmt::format("c_v must be positive (got {})", c_v));
  }
}

void check_density(const GasParams& gas, double rho) {
  if (!(rho > gas.rho_floor)) {
    throw DomainError(
        fmt::format("density {} is not above the vacuum floor {}", rho,
                    gas.rho_floor));
  }
}

double specific_internal_energy(const GasParams& gas, double rho, double eta) {
  check_density(gas, rho);
  return std::pow(rho, gas.gamma - 1.0) / (gas.gamma - 1.0) *
         std::exp(eta / gas.c_v);
}

double pressure(const GasParams& gas, double rho, double eta) {
  check_density(gas, rho);
  return std::pow(rho, gas.gamma) * std::exp(eta / gas.c_v);
}

double temperature(const GasParams& gas, double rho, double eta) {
  check_density(gas, rho);
  return std::pow(rho, gas.gamma - 1.0) * std::exp(eta / gas.c_v) /
         ((gas.gamma - 1.0) * gas.c_v);
}

ThermoDerivatives thermo_derivatives(const GasParams& gas, double rho,
                                     double eta) {
  return thermo_derivatives_from_pressure(gas, rho, pressure(gas, rho, eta));
}

double entropy_from_pressure(const GasParams& gas, double rho, double p) {
  check_density(gas, rho);
  if (!(p > 0.0)) {
    throw DomainError(fmt::format("pressure {} is not positive", p));
  }
  return gas.c_v * (std::log(p) - gas.gamma * std::log(rho));
}

}  // namespace heatwave
