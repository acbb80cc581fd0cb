#include "heatwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave {

namespace {

const double kDelta1 = 1.0 - 1.0 / std::sqrt(2.0);
const double kDelta2 = 1.0 - 1.0 / (2.0 * kDelta1);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kGhosts = 2;

struct Kernel {
  double gamma;
  double c_v;
  double rho_floor;
  double k2;
  bool euler;

  explicit Kernel(const Discretization& d)
      : gamma(d.model.gas.gamma),
        c_v(d.model.gas.c_v),
        rho_floor(d.model.gas.rho_floor),
        k2(d.model.kappa * d.model.kappa),
        euler(d.scheme == Scheme::euler_fourier) {}

  // Pressure of a conserved vector; false if the state is not physical.
  bool pressure(const Vec4& q, double& p) const {
    if (!(q[0] > rho_floor)) return false;
    const double internal =
        q[2] - 0.5 * (q[1] * q[1] + k2 * q[3] * q[3]) / q[0];
    p = (gamma - 1.0) * internal;
    return p > 0.0 && std::isfinite(p);
  }

  double theta(double rho, double p) const {
    return p / (c_v * (gamma - 1.0) * rho);
  }

  // max |lambda_m| = |u| + sqrt(Y1 + Y2)
  double signal_speed(const Vec4& q, double p) const {
    const double rho = q[0];
    const double u = q[1] / rho;
    const double ap2 = gamma * p / rho;
    if (k2 == 0.0) return std::abs(u) + std::sqrt(ap2);
    const double th = theta(rho, p);
    const double kr = k2 / (rho * rho);
    const double aT2 = kr * th / c_v;
    const double apT4 = kr * (p / c_v) * (gamma - 1.0) * th / rho;
    const double y3 = 0.5 * (ap2 - aT2);
    return std::abs(u) + std::sqrt(0.5 * (ap2 + aT2) +
                                   std::sqrt(apT4 + y3 * y3));
  }

  // Flux and signal speed together, sharing 1/rho.
  double flux_and_speed(const Vec4& q, double p, Vec4& f) const {
    const double ir = 1.0 / q[0];
    const double u = q[1] * ir;
    const double ap2 = gamma * p * ir;
    if (euler || k2 == 0.0) {
      f = {q[1], q[1] * u + p, (q[2] + p) * u, 0.0};
      if (euler) return std::abs(u) + std::sqrt(ap2);
    }
    const double th = p * ir / (c_v * (gamma - 1.0));
    if (!euler) {
      f = {q[1], q[1] * u + p, (q[2] + p) * u + k2 * ir * th * q[3],
           q[3] * u + th};
    }
    if (k2 == 0.0) return std::abs(u) + std::sqrt(ap2);
    const double kr = k2 * ir * ir;
    const double aT2 = kr * th / c_v;
    const double apT4 = kr * (p / c_v) * (gamma - 1.0) * th * ir;
    const double y3 = 0.5 * (ap2 - aT2);
    return std::abs(u) + std::sqrt(0.5 * (ap2 + aT2) +
                                   std::sqrt(apT4 + y3 * y3));
  }

  Vec4 flux(const Vec4& q, double p) const {
    const double rho = q[0];
    const double u = q[1] / rho;
    if (euler) {
      return {q[1], q[1] * u + p, (q[2] + p) * u, 0.0};
    }
    const double th = theta(rho, p);
    return {q[1], q[1] * u + p, (q[2] + p) * u + k2 / rho * th * q[3],
            q[3] * u + th};
  }
};

long real_index(long padded, long n) {
  return std::clamp(padded - kGhosts, 0L, n - 1);
}

[[noreturn]] void throw_cell(const std::string& what, long cell) {
  throw StepError(what, kNaN, cell);
}

void pad_into(const Discretization& disc, const std::vector<Conserved>& q,
              std::vector<Vec4>& out) {
  const std::size_t n = q.size();
  out.resize(n + 2 * kGhosts);
  for (std::size_t i = 0; i < n; ++i) out[i + kGhosts] = q[i].as_vec();
  if (disc.bc == Boundary::periodic) {
    out[0] = q[n - 2].as_vec();
    out[1] = q[n - 1].as_vec();
    out[n + 2] = q[0].as_vec();
    out[n + 3] = q[1].as_vec();
  } else {
    out[0] = out[1] = q[0].as_vec();
    out[n + 2] = out[n + 3] = q[n - 1].as_vec();
  }
}

Vec4 slopes(const Vec4& l, const Vec4& c, const Vec4& r, Limiter lim) {
  Vec4 s;
  for (std::size_t m = 0; m < 4; ++m) {
    const double dl = c[m] - l[m];
    const double dr = r[m] - c[m];
    s[m] = lim == Limiter::minmod ? minmod_slope(dl, dr) : 0.5 * (dl + dr);
  }
  return s;
}

// (rho, u, p, j) <-> conserved, for primitive-variable reconstruction.
Vec4 to_rupj(const Kernel& k, const Vec4& q, double p) {
  (void)k;
  return {q[0], q[1] / q[0], p, q[3]};
}

Vec4 from_rupj(const Kernel& k, const Vec4& w) {
  return {w[0], w[0] * w[1],
          0.5 * w[0] * w[1] * w[1] + w[2] / (k.gamma - 1.0) +
              0.5 * k.k2 * w[3] * w[3] / w[0],
          w[3]};
}

// Face values and their pressures for every padded cell.
struct Faces {
  std::vector<Vec4> wm, wp;
  std::vector<Vec4> w;
  std::vector<double> pm, pp;
  long fallbacks = 0;
};

// Buffers reused across calls so that large grids do not reallocate per stage.
struct Workspace {
  std::vector<Vec4> u;
  std::vector<double> pc;
  Faces faces;
  std::vector<Vec4> F;
  std::vector<Vec4> r0, r1;
  std::vector<Conserved> stage;
  std::vector<double> s_star;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

void reconstruct(const Discretization& disc, const Kernel& k,
                 const std::vector<Vec4>& u, const std::vector<double>& pc,
                 Faces& f) {
  const std::size_t size = u.size();
  f.wm = u;
  f.wp = u;
  f.pm = pc;
  f.pp = pc;
  f.fallbacks = 0;
  const bool prim = disc.reconstruction == ReconstructionVars::primitive;
  std::vector<Vec4>& w = f.w;
  if (prim) {
    w.resize(size);
    for (std::size_t i = 0; i < size; ++i) w[i] = to_rupj(k, u[i], pc[i]);
  }
  const std::vector<Vec4>& src = prim ? w : u;
  for (std::size_t i = 1; i + 1 < size; ++i) {
    const Vec4 s = slopes(src[i - 1], src[i], src[i + 1], disc.limiter);
    Vec4 a, b;
    for (std::size_t m = 0; m < 4; ++m) {
      a[m] = src[i][m] - 0.5 * s[m];
      b[m] = src[i][m] + 0.5 * s[m];
    }
    if (prim) {
      a = from_rupj(k, a);
      b = from_rupj(k, b);
    }
    if (k.euler) a[3] = b[3] = 0.0;
    double pa, pb;
    if (k.pressure(a, pa) && k.pressure(b, pb)) {
      f.wm[i] = a;
      f.wp[i] = b;
      f.pm[i] = pa;
      f.pp[i] = pb;
    } else if (i >= static_cast<std::size_t>(kGhosts) &&
               i < size - kGhosts) {
      ++f.fallbacks;
    }
  }
}

// Interface fluxes F_{1/2} .. F_{n+1/2} (n+1 entries) into ws.F.
void interface_fluxes(const Discretization& disc,
                      const std::vector<Conserved>& q, long* fallbacks,
                      Workspace& ws) {
  const Kernel k(disc);
  const long n = static_cast<long>(q.size());
  pad_into(disc, q, ws.u);
  const std::vector<Vec4>& u = ws.u;
  std::vector<double>& pc = ws.pc;
  pc.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!k.pressure(u[i], pc[i])) {
      const long cell = real_index(static_cast<long>(i), n);
      throw_cell(fmt::format("non-physical state in cell {} (rho={}, mom={}, "
                             "E={}, j={})",
                             cell, u[i][0], u[i][1], u[i][2], u[i][3]),
                 cell);
    }
  }
  Faces& f = ws.faces;
  reconstruct(disc, k, u, pc, f);
  if (fallbacks) *fallbacks += f.fallbacks;

  const bool heat = k.euler && disc.model.K > 0.0;
  std::vector<Vec4>& F = ws.F;
  F.resize(static_cast<std::size_t>(n + 1));
  for (long e = 0; e <= n; ++e) {
    const std::size_t l = static_cast<std::size_t>(e + kGhosts - 1);
    const std::size_t r = l + 1;
    const Vec4& a = f.wp[l];
    const Vec4& b = f.wm[r];
    Vec4 fa, fb;
    const double s = std::max(k.flux_and_speed(a, f.pp[l], fa),
                              k.flux_and_speed(b, f.pm[r], fb));
    Vec4& out = F[static_cast<std::size_t>(e)];
    for (std::size_t m = 0; m < 4; ++m) {
      out[m] = 0.5 * (fa[m] + fb[m]) - 0.5 * s * (b[m] - a[m]);
    }
    if (k.euler) out[3] = 0.0;
    if (heat) {
      const double tl = k.theta(u[l][0], pc[l]);
      const double tr = k.theta(u[r][0], pc[r]);
      out[2] -= disc.model.K * (tr - tl) / disc.dx;
    }
  }
}

// -(F_{i+1/2} - F_{i-1/2}) / dx into rhs.
void divergence(const Discretization& disc, const std::vector<Conserved>& q,
                long* fallbacks, std::array<Vec4, 2>* boundary, Workspace& ws,
                std::vector<Vec4>& rhs) {
  interface_fluxes(disc, q, fallbacks, ws);
  const std::vector<Vec4>& F = ws.F;
  const std::size_t n = q.size();
  rhs.resize(n);
  const double inv = 1.0 / disc.dx;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < 4; ++m) {
      rhs[i][m] = -(F[i + 1][m] - F[i][m]) * inv;
    }
  }
  if (boundary) {
    (*boundary)[0] = F.front();
    (*boundary)[1] = F.back();
  }
}

void check_cells(const Discretization& disc, const std::vector<Conserved>& q) {
  const Kernel k(disc);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double p;
    if (!k.pressure(q[i].as_vec(), p)) {
      throw_cell(
          fmt::format("non-physical state in cell {} (rho={}, mom={}, E={}, "
                      "j={})",
                      i, q[i].rho, q[i].mom, q[i].E, q[i].j),
          static_cast<long>(i));
    }
  }
}

bool has_source(const Discretization& disc) {
  return disc.scheme == Scheme::hyperbolic && disc.model.relaxation;
}

}  // namespace

const char* to_string(Scheme s) {
  return s == Scheme::hyperbolic ? "hyperbolic" : "euler_fourier";
}
const char* to_string(Limiter l) {
  return l == Limiter::minmod ? "minmod" : "none";
}
const char* to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "transmissive";
}

void RunConfig::validate() const {
  model.validate();
  if (n_cells < 4) {
    throw ConfigError(fmt::format("n_cells must be >= 4 (got {})", n_cells));
  }
  if (!(x_right > x_left)) {
    throw ConfigError(
        fmt::format("empty domain [{}, {}]", x_left, x_right));
  }
  if (!(cfl > 0.0 && cfl < 1.0)) {
    throw ConfigError(fmt::format("cfl must lie in (0, 1) (got {})", cfl));
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw ConfigError(fmt::format("t_end must be >= 0 (got {})", t_end));
  }
  for (double t : output_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      throw ConfigError(
          fmt::format("output time {} outside [0, t_end = {}]", t, t_end));
    }
  }
  if (scheme == Scheme::hyperbolic && model.relaxation &&
      model.tau_policy == TauPolicy::asymptotic &&
      !(model.kappa > 0.0 && model.K > 0.0)) {
    throw ConfigError(
        "asymptotic relaxation time needs kappa > 0 and K > 0; use tau = "
        "<number> or relaxation = off");
  }
  if (const auto* r = std::get_if<RiemannInitial>(&initial)) {
    for (const PressureState* s : {&r->left, &r->right}) {
      if (!(s->rho > model.gas.rho_floor) || !(s->p > 0.0)) {
        throw ConfigError(fmt::format(
            "initial state (rho={}, p={}) must have positive density and "
            "pressure",
            s->rho, s->p));
      }
    }
  } else {
    const auto& w = std::get<SmoothWaveInitial>(initial);
    if (!(w.rho0 > 0.0) || !(std::abs(w.amplitude) < 1.0) || !(w.p > 0.0)) {
      throw ConfigError("smooth wave must keep density and pressure positive");
    }
  }
}

Discretization discretization_of(const RunConfig& config) {
  Discretization d{config.model, config.dx(), config.scheme, config.limiter,
                   config.bc, config.reconstruction};
  if (config.scheme == Scheme::euler_fourier) {
    d.model.kappa = 0.0;
    d.model.relaxation = false;
  }
  return d;
}

double minmod_slope(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

Reconstruction muscl_reconstruct(const Discretization& disc,
                                 const std::vector<Vec4>& padded) {
  if (padded.size() < 2 * kGhosts + 1) {
    throw DomainError("muscl_reconstruct needs two ghost cells per side");
  }
  const Kernel k(disc);
  std::vector<double> pc(padded.size());
  for (std::size_t i = 0; i < padded.size(); ++i) {
    if (!k.pressure(padded[i], pc[i])) {
      throw NonPhysicalStateError(
          fmt::format("non-physical average in padded cell {}", i));
    }
  }
  Faces f;
  reconstruct(disc, k, padded, pc, f);
  return {std::move(f.wm), std::move(f.wp), f.fallbacks};
}

Vec4 rusanov_flux(const Discretization& disc, const Conserved& a,
                  const Conserved& b) {
  const Kernel k(disc);
  const Vec4 va = a.as_vec();
  const Vec4 vb = b.as_vec();
  const double pa = pressure_of(disc.model, a);
  const double pb = pressure_of(disc.model, b);
  const Vec4 fa = k.flux(va, pa);
  const Vec4 fb = k.flux(vb, pb);
  const double s = std::max(k.signal_speed(va, pa), k.signal_speed(vb, pb));
  Vec4 out;
  for (std::size_t m = 0; m < 4; ++m) {
    out[m] = 0.5 * (fa[m] + fb[m]) - 0.5 * s * (vb[m] - va[m]);
  }
  if (k.euler) out[3] = 0.0;
  return out;
}

double timestep(const Discretization& disc, const std::vector<Conserved>& q,
                double cfl) {
  if (!(cfl > 0.0 && cfl < 1.0)) {
    throw ConfigError(fmt::format("cfl must lie in (0, 1) (got {})", cfl));
  }
  const Kernel k(disc);
  double lmax = 0.0;
  double min_heat_capacity = 1.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec4 v = q[i].as_vec();
    double p;
    if (!k.pressure(v, p)) {
      throw_cell(fmt::format("non-physical state in cell {}", i),
                 static_cast<long>(i));
    }
    lmax = std::max(lmax, k.signal_speed(v, p));
    min_heat_capacity = std::min(min_heat_capacity, v[0] * k.c_v);
  }
  if (!(lmax > 0.0) || !std::isfinite(lmax)) {
    throw NumericalError(fmt::format("maximum signal speed is {}", lmax));
  }
  double dt = cfl * disc.dx / lmax;
  if (k.euler && disc.model.K > 0.0) {
    // The Rusanov dissipation and the heat flux damp the same odd-even mode.
    const double diffusivity = disc.model.K / min_heat_capacity;
    dt = std::min(dt, 0.9 / (lmax / disc.dx +
                             2.0 * diffusivity / (disc.dx * disc.dx)));
  }
  return dt;
}

ImplicitSolve implicit_source_solve(const ModelParams& params,
                                    const Conserved& qe, double a) {
  if (!params.relaxation || a == 0.0 || qe.j == 0.0) {
    return {qe, 0};
  }
  const GasParams& g = params.gas;
  const double k2 = params.kappa * params.kappa;
  const double rest = qe.E - 0.5 * qe.mom * qe.mom / qe.rho;
  auto tau_of = [&](double j) {
    const double p = (g.gamma - 1.0) * (rest - 0.5 * k2 * j * j / qe.rho);
    if (!(p > 0.0)) {
      throw NonPhysicalStateError(fmt::format(
          "non-physical state in implicit solve (rho={}, E={}, j={})", qe.rho,
          qe.E, j));
    }
    return relax_time(params, qe.rho, p);
  };
  auto G = [&](double j) { return qe.j / (1.0 + a / tau_of(j)); };

  if (params.tau_policy == TauPolicy::constant) {
    return {{qe.rho, qe.mom, qe.E, G(qe.j)}, 1};
  }
  auto converged = [](double next, double cur) {
    return std::abs(next - cur) < 1e-12 * (1.0 + std::abs(next));
  };
  double j = qe.j;
  int it = 0;
  for (; it < 50; ++it) {
    const double next = G(j);
    const bool done = converged(next, j);
    j = next;
    if (done) return {{qe.rho, qe.mom, qe.E, j}, it + 1};
  }
  for (int d = 0; d < 200; ++d, ++it) {
    const double next = 0.5 * j + 0.5 * G(j);
    const bool done = converged(next, j);
    j = next;
    if (done) return {{qe.rho, qe.mom, qe.E, j}, it + 1};
  }
  throw NumericalError(fmt::format(
      "implicit source iteration did not converge: residual {}", G(j) - j));
}

std::vector<Vec4> flux_rhs(const Discretization& disc,
                           const std::vector<Conserved>& q, long* fallbacks,
                           std::array<Vec4, 2>* boundary) {
  std::vector<Vec4> rhs;
  divergence(disc, q, fallbacks, boundary, workspace(), rhs);
  return rhs;
}

std::vector<Vec4> euler_fourier_rhs(const Discretization& disc,
                                    const std::vector<Conserved>& q) {
  Discretization d = disc;
  d.scheme = Scheme::euler_fourier;
  d.model.kappa = 0.0;
  d.model.relaxation = false;
  return flux_rhs(d, q, nullptr);
}

std::vector<Conserved> ars222_step(const Discretization& disc,
                                   const std::vector<Conserved>& q, double dt,
                                   StepInfo* info) {
  const std::size_t n = q.size();
  const bool src = has_source(disc);
  const double a = kDelta1 * dt;
  long fb = 0;
  std::array<Vec4, 2> b0{}, b1{};

  Workspace& ws = workspace();
  std::vector<Vec4>& r0 = ws.r0;
  std::vector<Vec4>& r1 = ws.r1;
  divergence(disc, q, &fb, &b0, ws, r0);
  std::vector<Conserved>& stage = ws.stage;
  std::vector<double>& s_star = ws.s_star;
  stage.resize(n);
  s_star.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vec4 v = q[i].as_vec();
    for (std::size_t m = 0; m < 4; ++m) v[m] += a * r0[i][m];
    const Conserved e = Conserved::from_vec(v);
    if (src) {
      try {
        stage[i] = implicit_source_solve(disc.model, e, a).q;
      } catch (const Error& err) {
        throw_cell(fmt::format("stage 1, cell {}: {}", i, err.what()),
                   static_cast<long>(i));
      }
      s_star[i] = (stage[i].j - e.j) / a;
    } else {
      stage[i] = e;
    }
  }
  check_cells(disc, stage);

  divergence(disc, stage, &fb, &b1, ws, r1);
  std::vector<Conserved> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec4 v = q[i].as_vec();
    for (std::size_t m = 0; m < 4; ++m) {
      v[m] += dt * (kDelta2 * r0[i][m] + (1.0 - kDelta2) * r1[i][m]);
    }
    v[3] += dt * (1.0 - kDelta1) * s_star[i];
    const Conserved e = Conserved::from_vec(v);
    if (src) {
      try {
        next[i] = implicit_source_solve(disc.model, e, a).q;
      } catch (const Error& err) {
        throw_cell(fmt::format("stage 2, cell {}: {}", i, err.what()),
                   static_cast<long>(i));
      }
    } else {
      next[i] = e;
    }
  }
  check_cells(disc, next);

  if (info) {
    info->fallbacks = fb;
    if (disc.bc == Boundary::periodic) {
      info->boundary_inflow = {};
    } else {
      for (std::size_t m = 0; m < 4; ++m) {
        info->boundary_inflow[m] =
            dt * (kDelta2 * (b0[0][m] - b0[1][m]) +
                  (1.0 - kDelta2) * (b1[0][m] - b1[1][m]));
      }
    }
  }
  return next;
}

std::vector<Conserved> initial_state(const RunConfig& config) {
  const Discretization disc = discretization_of(config);
  const ModelParams& m = disc.model;
  const bool euler = config.scheme == Scheme::euler_fourier;
  const int n = config.n_cells;
  const double dx = config.dx();
  std::vector<Conserved> q(static_cast<std::size_t>(n));

  auto cons = [&](PressureState s) {
    if (euler) s.j = 0.0;
    return Conserved{s.rho, s.rho * s.u, total_energy(m, s), s.j};
  };

  if (const auto* r = std::get_if<RiemannInitial>(&config.initial)) {
    for (int i = 0; i < n; ++i) {
      const double x = config.x_left + (i + 0.5) * dx;
      q[static_cast<std::size_t>(i)] = cons(x < r->x_split ? r->left : r->right);
    }
    return q;
  }

  const auto& w = std::get<SmoothWaveInitial>(config.initial);
  const double L = config.x_right - config.x_left;
  const double kw = 2.0 * std::numbers::pi / L;
  // Three-point Gauss average of the conserved variables over each cell.
  const double g = std::sqrt(0.6);
  const std::array<double, 3> nodes = {-g, 0.0, g};
  const std::array<double, 3> weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  for (int i = 0; i < n; ++i) {
    const double xc = config.x_left + (i + 0.5) * dx;
    Vec4 avg{};
    for (std::size_t k = 0; k < 3; ++k) {
      const double x = xc + 0.5 * dx * nodes[k];
      const double phase = kw * (x - config.x_left);
      const PressureState s{w.rho0 * (1.0 + w.amplitude * std::sin(phase)), w.u,
                            w.p, w.j_amplitude * std::cos(phase)};
      const Vec4 v = cons(s).as_vec();
      for (std::size_t c = 0; c < 4; ++c) avg[c] += weights[k] * v[c];
    }
    q[static_cast<std::size_t>(i)] = Conserved::from_vec(avg);
  }
  return q;
}

SolutionFrame make_frame(const RunConfig& config, double t,
                         const std::vector<Conserved>& q) {
  const Discretization disc = discretization_of(config);
  SolutionFrame f;
  f.t = t;
  const std::size_t n = q.size();
  f.x.resize(n);
  f.q = q;
  f.prim.resize(n);
  f.theta.resize(n);
  f.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.x[i] = config.x_left + (static_cast<double>(i) + 0.5) * disc.dx;
    f.p[i] = pressure_of(disc.model, q[i]);
    f.prim[i] = {q[i].rho, q[i].mom / q[i].rho,
                 entropy_from_pressure(disc.model.gas, q[i].rho, f.p[i]),
                 q[i].j};
    f.theta[i] = temperature_from_pressure(disc.model.gas, q[i].rho, f.p[i]);
  }
  return f;
}

DiagnosticsRow totals(const Discretization& disc,
                      const std::vector<Conserved>& q) {
  DiagnosticsRow r{};
  const GasParams& g = disc.model.gas;
  const Kernel k(disc);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Conserved& c = q[i];
    r.mass += c.rho;
    r.momentum += c.mom;
    r.energy += c.E;
    double p;
    if (!k.pressure(c.as_vec(), p)) {
      throw_cell(fmt::format("non-physical state in cell {}", i),
                 static_cast<long>(i));
    }
    r.entropy += c.rho * g.c_v * std::log(p / std::pow(c.rho, g.gamma));
  }
  r.mass *= disc.dx;
  r.momentum *= disc.dx;
  r.energy *= disc.dx;
  r.entropy *= disc.dx;
  return r;
}

// A step that produces a non-physical state is retried with half the step
// size, at most this many times.
constexpr int kMaxHalvings = 8;

RunResult run(const RunConfig& config) {
  config.validate();
  const Discretization disc = discretization_of(config);
  std::vector<Conserved> q = initial_state(config);

  std::vector<double> targets = config.output_times;
  targets.push_back(config.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  RunResult res;
  DiagnosticsRow row0 = totals(disc, q);
  row0.t = 0.0;
  row0.dt = 0.0;
  res.diagnostics.rows.push_back(row0);

  std::size_t next = 0;
  while (next < targets.size() && targets[next] <= 0.0) {
    res.frames.push_back(make_frame(config, 0.0, q));
    ++next;
  }

  double t = 0.0;
  while (next < targets.size()) {
    const double target = targets[next];
    StepInfo info;
    double dt = 0.0;
    try {
      dt = timestep(disc, q, config.cfl);
      bool land = false;
      if (t + dt >= target - 1e-12 * dt) {
        dt = target - t;
        land = true;
      }
      for (int halvings = 0;; ++halvings) {
        try {
          q = ars222_step(disc, q, dt, &info);
          break;
        } catch (const StepError&) {
          if (halvings == kMaxHalvings) throw;
          dt *= 0.5;
          land = false;
          ++res.diagnostics.rejected_steps;
        }
      }
      t = land ? target : t + dt;
    } catch (const StepError& e) {
      throw StepError(fmt::format("step failed at t = {}: {}", t, e.what()), t,
                      e.cell());
    } catch (const Error& e) {
      throw StepError(fmt::format("step failed at t = {}: {}", t, e.what()), t,
                      -1);
    }
    DiagnosticsRow row = totals(disc, q);
    row.t = t;
    row.dt = dt;
    res.diagnostics.rows.push_back(row);
    res.diagnostics.boundary_inflow.push_back(info.boundary_inflow);
    res.diagnostics.fallback_cells += info.fallbacks;
    ++res.diagnostics.steps;
    while (next < targets.size() && targets[next] <= t) {
      res.frames.push_back(make_frame(config, t, q));
      ++next;
    }
  }
  return res;
}

ConvergenceStudy self_convergence(const RunConfig& base,
                                  const std::vector<int>& grids) {
  if (grids.size() < 3) {
    throw ConfigError("self-convergence needs at least three grids");
  }
  for (std::size_t i = 1; i < grids.size(); ++i) {
    if (grids[i] != 2 * grids[i - 1]) {
      throw ConfigError(fmt::format(
          "grids must double successively ({} follows {})", grids[i],
          grids[i - 1]));
    }
  }
  std::vector<std::vector<Conserved>> finals;
  for (int n : grids) {
    RunConfig c = base;
    c.n_cells = n;
    c.output_times.clear();
    finals.push_back(run(c).frames.back().q);
  }
  ConvergenceStudy s;
  s.grids = grids;
  for (std::size_t g = 0; g + 1 < grids.size(); ++g) {
    const auto& coarse = finals[g];
    const auto& fine = finals[g + 1];
    const double dx = (base.x_right - base.x_left) / grids[g];
    Vec4 e{};
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      const Vec4 a = coarse[i].as_vec();
      const Vec4 f0 = fine[2 * i].as_vec();
      const Vec4 f1 = fine[2 * i + 1].as_vec();
      for (std::size_t m = 0; m < 4; ++m) {
        e[m] += std::abs(a[m] - 0.5 * (f0[m] + f1[m])) * dx;
      }
    }
    s.errors.push_back(e);
  }
  for (std::size_t g = 0; g + 1 < s.errors.size(); ++g) {
    Vec4 r{};
    for (std::size_t m = 0; m < 4; ++m) {
      r[m] = std::log2(s.errors[g][m] / s.errors[g + 1][m]);
    }
    s.rates.push_back(r);
  }
  return s;
}

}  // namespace heatwave
