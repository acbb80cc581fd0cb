#include "heatwave/cases.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolution(const CaseOptions& o, int desk, int full) {
  if (o.n_cells) return *o.n_cells;
  return o.full_scale ? full : desk;
}

void apply_common(RunConfig& c, const CaseOptions& o) {
  if (o.cfl) c.cfl = *o.cfl;
  if (o.t_end) {
    c.t_end = *o.t_end;
    c.output_times.clear();
  }
}

ModelParams unit_gas_model(double kappa) {
  ModelParams m;
  m.gas.gamma = 2.0;
  m.gas.c_v = 1.0;
  m.kappa = kappa;
  m.K = 0.0;
  m.relaxation = false;
  return m;
}

const Primitive kReferenceRight{1.0, 0.0, 0.0, 0.0};

RiemannProblem make_problem(std::string name, RunConfig config,
                            const ModelParams& m, const Primitive& left,
                            const Primitive& right, double x_split,
                            double wave_speed) {
  RiemannProblem rp;
  rp.name = std::move(name);
  rp.x_split = x_split;
  rp.left = left;
  rp.right = right;
  rp.left_p = to_pressure_state(m.gas, left);
  rp.right_p = to_pressure_state(m.gas, right);
  rp.wave_speed = wave_speed;
  config.model = m;
  config.initial = RiemannInitial{x_split, rp.left_p, rp.right_p};
  rp.config = std::move(config);
  return rp;
}

RiemannProblem shock_tube(const std::string& name, const CaseOptions& o) {
  const bool hyp = name == "shocktube_hyp";
  ModelParams m;
  m.gas.gamma = 1.4;
  m.gas.c_v = 1.5;
  m.kappa = hyp ? o.kappa.value_or(1.0) : 0.0;
  m.K = o.K.value_or(1e-3);
  m.tau_policy = TauPolicy::asymptotic;
  m.relaxation = hyp;

  RunConfig c;
  c.x_left = 0.0;
  c.x_right = 1.0;
  c.n_cells = resolution(o, 2000, 10000);
  c.scheme = hyp ? Scheme::hyperbolic : Scheme::euler_fourier;
  c.t_end = hyp ? 0.5 : 0.2;
  c.cfl = hyp && m.kappa >= 0.5 ? 0.5 : 0.9;
  apply_common(c, o);
  const PressureState l{1.0, 0.0, 1.0, 0.0};
  const PressureState r{0.1, 0.0, 0.1, 0.0};
  return make_problem(name, c, m, to_primitive(m.gas, l),
                      to_primitive(m.gas, r), 0.5, kNaN);
}

RiemannProblem expansion_or_fan(const std::string& name, const CaseOptions& o) {
  const ModelParams m = unit_gas_model(o.kappa.value_or(0.8));
  const auto sc = hugoniot::construct_shock_state(
      m, kReferenceRight, 1.25, hugoniot::Branch::thermal,
      hugoniot::Direction::right_moving);
  RunConfig c;
  c.x_left = 0.0;
  c.x_right = 1.0;
  c.cfl = 0.9;
  if (name == "expansion_shock") {
    c.n_cells = resolution(o, 2000, 10000);
    c.t_end = 0.5;
    apply_common(c, o);
    return make_problem(name, c, m, sc.left, sc.right, 0.5, sc.D);
  }
  c.n_cells = resolution(o, 20000, 100000);
  c.t_end = 1.0;
  c.output_times = {0.5, 1.0};
  apply_common(c, o);
  return make_problem(name, c, m, sc.right, sc.left, 0.2, sc.D);
}

RiemannProblem splitting(const CaseOptions& o) {
  const double kappa = o.kappa.value_or(1.3);
  const ModelParams m = unit_gas_model(kappa);
  const auto sc = hugoniot::construct_shock_state(
      m, kReferenceRight, 0.635, hugoniot::Branch::thermal,
      hugoniot::Direction::right_moving);
  RunConfig c;
  c.x_left = 0.0;
  c.x_right = 2.0;
  c.n_cells = resolution(o, 20000, 100000);
  c.cfl = 0.5;
  c.t_end = 0.2;
  c.output_times = {0.1, 0.2};
  apply_common(c, o);
  return make_problem("shock_splitting", c, m, sc.left, sc.right, 1.0,
                      star_shock(kappa).D);
}

RunConfig smooth_wave(const CaseOptions& o) {
  RunConfig c;
  c.x_left = 0.0;
  c.x_right = 1.0;
  c.n_cells = resolution(o, 200, 800);
  c.cfl = o.cfl.value_or(0.45);
  c.t_end = o.t_end.value_or(0.2);
  c.bc = Boundary::periodic;
  c.limiter = Limiter::none;
  c.model.gas.gamma = 1.4;
  c.model.gas.c_v = 1.5;
  c.model.kappa = o.kappa.value_or(1.0);
  c.model.K = o.K.value_or(0.0);
  c.model.tau_policy = TauPolicy::constant;
  c.model.tau0 = 0.5;
  c.model.relaxation = true;
  c.initial = SmoothWaveInitial{};
  return c;
}

}  // namespace

std::vector<std::string> case_names() {
  return {"sod_heat",        "shocktube_hyp",   "expansion_shock",
          "compression_fan", "shock_splitting", "smooth_wave"};
}

RiemannProblem catalog(const std::string& name, const CaseOptions& opts) {
  if (name == "sod_heat" || name == "shocktube_hyp") {
    return shock_tube(name, opts);
  }
  if (name == "expansion_shock" || name == "compression_fan") {
    return expansion_or_fan(name, opts);
  }
  if (name == "shock_splitting") {
    return splitting(opts);
  }
  throw ConfigError(fmt::format("unknown case '{}'", name));
}

RunConfig case_config(const std::string& name, const CaseOptions& opts) {
  if (name == "smooth_wave") return smooth_wave(opts);
  return catalog(name, opts).config;
}

hugoniot::ShockConstruction star_shock(double kappa) {
  const ModelParams m = unit_gas_model(kappa);
  // right state has v = 1, so kappa~ = kappa / ((gamma-1) c_v) = kappa
  const double vs = hugoniot::v_star(kappa, 2.0);
  return hugoniot::construct_shock_state(m, kReferenceRight, vs,
                                         hugoniot::Branch::thermal,
                                         hugoniot::Direction::right_moving);
}

std::vector<double> self_similar_transform(const SolutionFrame& frame,
                                           double x_split, double D) {
  if (!(frame.t > 0.0)) {
    throw DomainError(
        fmt::format("self-similar coordinate needs t > 0 (got {})", frame.t));
  }
  std::vector<double> out(frame.x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (frame.x[i] - x_split - D * frame.t) / frame.t;
  }
  return out;
}

}  // namespace heatwave
