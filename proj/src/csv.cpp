#include "heatwave/csv.hpp"

#include <cstdio>
#include <memory>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave::csv {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open(const std::filesystem::path& path) {
  File f(std::fopen(path.c_str(), "w"));
  if (!f) {
    throw ConfigError(fmt::format("cannot open '{}' for writing", path.string()));
  }
  return f;
}

void row(std::FILE* f, std::initializer_list<double> values) {
  std::string line;
  bool first = true;
  for (double v : values) {
    if (!first) line += ',';
    line += number(v);
    first = false;
  }
  line += '\n';
  std::fputs(line.c_str(), f);
}

}  // namespace

std::string number(double v) { return fmt::format("{:.17g}", v); }

std::string frame_file_name(const std::string& name, double t) {
  return fmt::format("{}_t{:g}.csv", name, t);
}

void write_frame(const std::filesystem::path& path, const SolutionFrame& fr) {
  File f = open(path);
  std::fputs("x,rho,u,p,eta,theta,j,E\n", f.get());
  for (std::size_t i = 0; i < fr.x.size(); ++i) {
    const Primitive& v = fr.prim[i];
    row(f.get(), {fr.x[i], v.rho, v.u, fr.p[i], v.eta, fr.theta[i], v.j,
                  fr.q[i].E});
  }
}

void write_diagnostics(const std::filesystem::path& path, const Diagnostics& d) {
  File f = open(path);
  std::fputs("t,dt,mass,momentum,energy,entropy\n", f.get());
  for (const DiagnosticsRow& r : d.rows) {
    row(f.get(), {r.t, r.dt, r.mass, r.momentum, r.energy, r.entropy});
  }
}

std::vector<double> temperature_gradient(const SolutionFrame& fr) {
  const std::size_t n = fr.x.size();
  std::vector<double> g(n, 0.0);
  if (n < 2) return g;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = i == 0 ? 0 : i - 1;
    const std::size_t r = i + 1 == n ? n - 1 : i + 1;
    g[i] = (fr.theta[r] - fr.theta[l]) / (fr.x[r] - fr.x[l]);
  }
  return g;
}

void write_fourier(const std::filesystem::path& path, const SolutionFrame& fr,
                   const ModelParams& params) {
  const std::vector<double> grad = temperature_gradient(fr);
  File f = open(path);
  std::fputs("x,jdivtau,dtheta_dx\n", f.get());
  for (std::size_t i = 0; i < fr.x.size(); ++i) {
    const double tau = relax_time(params, fr.prim[i].rho, fr.p[i]);
    row(f.get(), {fr.x[i], fr.prim[i].j / tau, grad[i]});
  }
}

void write_hugoniot(const std::filesystem::path& path,
                    const std::vector<hugoniot::HugoniotSample>& rows) {
  File f = open(path);
  std::fputs("v,p_plus,p_minus,psi_plus,psi_minus,Msq_minus\n", f.get());
  for (const auto& s : rows) {
    row(f.get(),
        {s.v_tilde, s.p_plus, s.p_minus, s.psi_plus, s.psi_minus, s.Msq_minus});
  }
}

void write_dispersion(const std::filesystem::path& path,
                      const std::vector<dispersion::DispersionSample>& rows) {
  File f = open(path);
  std::fputs("k,c_f,c_s,beta1,beta2,beta3,beta4,c_tilde,beta_t1,beta_t2\n",
             f.get());
  for (const auto& s : rows) {
    row(f.get(), {s.k, s.c_f, s.c_s, s.beta[0], s.beta[1], s.beta[2], s.beta[3],
                  s.c_tilde, s.beta_t1, s.beta_t2});
  }
}

}  // namespace heatwave::csv
