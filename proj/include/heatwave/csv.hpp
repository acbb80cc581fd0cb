#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "heatwave/dispersion.hpp"
#include "heatwave/hugoniot.hpp"
#include "heatwave/solver.hpp"

// CSV writers. Numbers use 17 significant digits; every file has a header.

namespace heatwave::csv {

std::string number(double v);

/// `<name>_t<time>.csv` for a frame time.
std::string frame_file_name(const std::string& name, double t);

/// x,rho,u,p,eta,theta,j,E
void write_frame(const std::filesystem::path& path, const SolutionFrame& frame);

/// t,dt,mass,momentum,energy,entropy
void write_diagnostics(const std::filesystem::path& path, const Diagnostics& d);

/// x,jdivtau,dtheta_dx: j/tau and the centered temperature gradient.
void write_fourier(const std::filesystem::path& path, const SolutionFrame& frame,
                   const ModelParams& params);

/// v,p_plus,p_minus,psi_plus,psi_minus,Msq_minus
void write_hugoniot(const std::filesystem::path& path,
                    const std::vector<hugoniot::HugoniotSample>& rows);

/// k,c_f,c_s,beta1,beta2,beta3,beta4,c_tilde,beta_t1,beta_t2
void write_dispersion(const std::filesystem::path& path,
                      const std::vector<dispersion::DispersionSample>& rows);

/// Centered differences of theta (one-sided at the ends).
std::vector<double> temperature_gradient(const SolutionFrame& frame);

}  // namespace heatwave::csv
