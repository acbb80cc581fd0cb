#include "heatwave/hugoniot.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <fmt/format.h>

#include "heatwave/error.hpp"
#include "heatwave/polynomial.hpp"

namespace heatwave::hugoniot {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPoleTolerance = 1e-12;
constexpr double kPoleSkip = 1e-6;

void check_volume(double v_tilde) {
  if (!(v_tilde > 0.0) || !std::isfinite(v_tilde)) {
    throw DomainError(
        fmt::format("dimensionless volume must be positive (got {})", v_tilde));
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 1.0)) {
    throw DomainError(fmt::format("gamma must exceed 1 (got {})", gamma));
  }
}

double nearest_pole(double kappa_t, double gamma, double v_tilde) {
  double best = v_tilde;
  double dist = std::numeric_limits<double>::infinity();
  for (double p : branch_poles(kappa_t, gamma)) {
    if (std::abs(p - v_tilde) < dist) {
      dist = std::abs(p - v_tilde);
      best = p;
    }
  }
  return best;
}

double eval_or_nan(auto&& f) {
  try {
    return f();
  } catch (const Error&) {
    return kNaN;
  }
}

}  // namespace

const char* to_string(Branch b) {
  return b == Branch::acoustic ? "acoustic" : "thermal";
}

Quadratic hugoniot_quadratic(double kappa_t, double gamma, double v) {
  const double g1 = 1.0 / (gamma - 1.0);
  const double k2 = kappa_t * kappa_t;
  return {g1 * v + 0.5 * (v - 1.0) + 0.5 * k2 * v * v * (v - 1.0),
          -g1 * (v + 1.0), g1 - 0.5 * (v - 1.0) - 0.5 * k2 * (v - 1.0)};
}

double hugoniot_residual(double kappa_t, double gamma, double v, double p) {
  const double k2 = kappa_t * kappa_t;
  const double vp = v * p;
  return (vp - 1.0) / (gamma - 1.0) + 0.5 * (p + 1.0) * (v - 1.0) +
         0.5 * k2 * (vp * vp - 1.0) * (v - 1.0) / (p - 1.0);
}

double branch_pressure(double kappa_t, double gamma, double v, Branch branch) {
  check_gamma(gamma);
  check_volume(v);
  if (v == 1.0) return 1.0;
  const double g1 = 1.0 / (gamma - 1.0);
  const double k2 = kappa_t * kappa_t;
  const Quadratic q = hugoniot_quadratic(kappa_t, gamma, v);
  // b^2 - 4ac = (v-1)^2 * disc
  const double disc =
      g1 * g1 - 2.0 * g1 * (k2 * v - 1.0) + (1.0 + k2 * v * v) * (1.0 + k2);
  const double s = (1.0 - v) * std::sqrt(std::max(disc, 0.0));
  // Take the cancellation-free numerator; the companion root comes from
  // the product of the roots, c/a.
  const bool below = v < 1.0;
  const double num = below ? -q.b + s : -q.b - s;
  const bool direct = below ? branch == Branch::acoustic
                            : branch == Branch::thermal;
  double p;
  if (direct) {
    const double den = 2.0 * q.a;
    if (std::abs(den) <= kPoleTolerance * std::abs(num)) {
      const double pole = nearest_pole(kappa_t, gamma, v);
      throw PoleError(fmt::format("{} branch has a pole at v~ = {}",
                                  to_string(branch), pole),
                      pole);
    }
    p = num / den;
  } else {
    p = 2.0 * q.c / num;
  }
  if (!std::isfinite(p)) {
    const double pole = nearest_pole(kappa_t, gamma, v);
    throw PoleError(
        fmt::format("{} branch is not finite at v~ = {}", to_string(branch), v),
        pole);
  }
  return p;
}

double branch_pressure_gamma2(double kappa_t, double v, Branch branch) {
  check_volume(v);
  const double k2 = kappa_t * kappa_t;
  const double root =
      std::sqrt(k2 * k2 * v * v + k2 * (v - 1.0) * (v - 1.0) + 4.0);
  const double sign = branch == Branch::acoustic ? 1.0 : -1.0;
  const double den = v * (k2 * (v - 1.0) * v + 3.0) - 1.0;
  if (den == 0.0) {
    throw PoleError(fmt::format("gamma = 2 {} branch denominator vanishes",
                                to_string(branch)),
                    v);
  }
  return (v + 1.0 + sign * (1.0 - v) * root) / den;
}

std::vector<double> branch_poles(double kappa_t, double gamma) {
  check_gamma(gamma);
  const double g1 = 1.0 / (gamma - 1.0);
  const double k2 = kappa_t * kappa_t;
  // 2a = k2 v^3 - k2 v^2 + (1 + 2 g1) v - 1
  if (k2 == 0.0) {
    return {1.0 / (1.0 + 2.0 * g1)};
  }
  const std::array<cplx, 4> coeffs = {1.0, -1.0, (1.0 + 2.0 * g1) / k2,
                                      -1.0 / k2};
  std::vector<double> poles;
  for (const cplx& r : solve_roots(coeffs)) {
    if (std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r)) &&
        r.real() > 0.0) {
      // Polish the real root with Newton on the real cubic.
      double x = r.real();
      for (int i = 0; i < 3; ++i) {
        const double f = ((k2 * x - k2) * x + (1.0 + 2.0 * g1)) * x - 1.0;
        const double df = (3.0 * k2 * x - 2.0 * k2) * x + (1.0 + 2.0 * g1);
        if (df == 0.0) break;
        x -= f / df;
      }
      poles.push_back(x);
    }
  }
  std::sort(poles.begin(), poles.end());
  return poles;
}

double mass_flux_sq(double kappa_t, double gamma, double v, Branch branch) {
  if (v == 1.0) {
    throw DomainError("mass flux is undefined at the Hugoniot center");
  }
  const double p = branch_pressure(kappa_t, gamma, v, branch);
  return -(p - 1.0) / (v - 1.0);
}

double psi(double kappa_t, double gamma, double v, Branch branch) {
  check_volume(v);
  if (v == 1.0) return 0.0;
  const double p = branch_pressure(kappa_t, gamma, v, branch);
  if (!(p > 0.0)) {
    throw DomainError(
        fmt::format("{} branch pressure {} at v~ = {} is not positive",
                    to_string(branch), p, v));
  }
  const double msq = -(p - 1.0) / (v - 1.0);
  if (!(msq > 0.0)) {
    throw DomainError(fmt::format(
        "M~^2 = {} <= 0 at v~ = {}: not a shock candidate", msq, v));
  }
  return std::log(p * std::pow(v, gamma)) -
         (gamma - 1.0) * kappa_t * kappa_t * (p * v - 1.0) / msq;
}

double g_second_at_center(double kappa_t) {
  const double k2 = kappa_t * kappa_t;
  const double k4 = k2 * k2;
  const double root = std::sqrt(k4 + 4.0);
  return 2.0 * k4 / root - 4.0 * k2 + (k2 + 3.0) * (k2 + 3.0) -
         (k2 + 3.0) * (root + 1.0);
}

double critical_kappa() {
  double lo = 0.5;
  double hi = 2.0;
  double flo = g_second_at_center(lo);
  const double fhi = g_second_at_center(hi);
  if (!(flo < 0.0 && fhi > 0.0)) {
    throw NumericalError("critical_kappa: root is not bracketed on [0.5, 2]");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = g_second_at_center(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double critical_kappa_closed_form() {
  const double s2 = std::sqrt(2.0);
  return std::sqrt(6.0) /
         std::sqrt(2.0 + std::cbrt(17.0 - 12.0 * s2) + std::cbrt(17.0 + 12.0 * s2));
}

double v_star(double kappa_t, double gamma) {
  auto f = [&](double v) { return psi(kappa_t, gamma, v, Branch::thermal); };
  auto f_or_nan = [&](double v) { return eval_or_nan([&] { return f(v); }); };

  constexpr double probe = 1e-2;
  double dir;
  if (f_or_nan(1.0 + probe) > 0.0) {
    dir = 1.0;
  } else if (f_or_nan(1.0 - probe) > 0.0) {
    dir = -1.0;
  } else {
    throw NumericalError(fmt::format(
        "v_star: thermal psi is not positive on either side of the center "
        "(kappa~ = {})",
        kappa_t));
  }

  // March away from the center until psi starts decreasing.
  constexpr double step = 2e-3;
  double prev_v = 1.0 + dir * probe;
  double prev = f(prev_v);
  double a = 1.0;
  bool found = false;
  double cur_v = prev_v;
  for (int i = 0; i < 100000; ++i) {
    cur_v = prev_v + dir * step;
    if (cur_v <= step) break;
    const double cur = f_or_nan(cur_v);
    if (!std::isfinite(cur)) break;
    if (cur < prev) {
      found = true;
      break;
    }
    a = prev_v;
    prev_v = cur_v;
    prev = cur;
  }
  if (!found) {
    throw NumericalError(
        fmt::format("v_star: no interior maximum of psi (kappa~ = {})", kappa_t));
  }
  if (a == 1.0) a = 1.0 + dir * 0.5 * probe;
  double lo = std::min(a, cur_v);
  double hi = std::max(a, cur_v);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

HugoniotSample sample(double kappa_t, double gamma, double v) {
  HugoniotSample s{};
  s.v_tilde = v;
  s.p_plus = eval_or_nan(
      [&] { return branch_pressure(kappa_t, gamma, v, Branch::acoustic); });
  s.p_minus = eval_or_nan(
      [&] { return branch_pressure(kappa_t, gamma, v, Branch::thermal); });
  s.psi_plus =
      eval_or_nan([&] { return psi(kappa_t, gamma, v, Branch::acoustic); });
  s.psi_minus =
      eval_or_nan([&] { return psi(kappa_t, gamma, v, Branch::thermal); });
  s.Msq_minus = eval_or_nan(
      [&] { return mass_flux_sq(kappa_t, gamma, v, Branch::thermal); });
  return s;
}

std::vector<HugoniotSample> sample_range(double kappa_t, double gamma,
                                         double v_min, double v_max, int n,
                                         std::vector<std::string>* warnings) {
  check_volume(v_min);
  if (!(v_max > v_min) || n < 2) {
    throw DomainError(fmt::format(
        "invalid sampling range [{}, {}] with {} points", v_min, v_max, n));
  }
  const std::vector<double> poles = branch_poles(kappa_t, gamma);
  std::vector<HugoniotSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v = v_min + (v_max - v_min) * i / (n - 1);
    const auto near = std::find_if(poles.begin(), poles.end(), [&](double p) {
      return std::abs(v - p) < kPoleSkip;
    });
    if (near != poles.end()) {
      if (warnings) {
        warnings->push_back(
            fmt::format("skipped v~ = {} within {} of pole {}", v, kPoleSkip,
                        *near));
      }
      continue;
    }
    out.push_back(sample(kappa_t, gamma, v));
  }
  return out;
}

ShockConstruction construct_shock_state(const ModelParams& params,
                                        const Primitive& right,
                                        double v_tilde_left, Branch branch,
                                        Direction direction) {
  params.validate();
  const GasParams& gas = params.gas;
  check_volume(v_tilde_left);
  const double pR = pressure(gas, right.rho, right.eta);
  const double vR = 1.0 / right.rho;
  const double k2 = params.kappa * params.kappa;

  ShockConstruction sc{};
  sc.right = right;
  sc.branch = branch;
  if (v_tilde_left == 1.0) {
    sc.left = right;
    sc.D = kNaN;
    sc.M = 0.0;
    sc.entropy_jump = 0.0;
    sc.admissible = true;
    sc.degenerate = true;
    return sc;
  }

  const double kappa_t = vR * params.kappa / ((gas.gamma - 1.0) * gas.c_v);
  const double p_t = branch_pressure(kappa_t, gas.gamma, v_tilde_left, branch);
  const double pL = p_t * pR;
  const double vL = v_tilde_left * vR;
  if (!(pL > 0.0)) {
    throw DomainError(
        fmt::format("{} branch gives non-positive pressure {} at v~ = {}",
                    to_string(branch), pL, v_tilde_left));
  }
  const double msq = -(pL - pR) / (vL - vR);
  if (!(msq > 0.0)) {
    throw DomainError(fmt::format(
        "no shock: M^2 = {} <= 0 at v~ = {}", msq, v_tilde_left));
  }
  const double M =
      direction == Direction::right_moving ? -std::sqrt(msq) : std::sqrt(msq);
  const double uL = right.u + M * (vL - vR);
  const double D = right.u - M * vR;
  const double thL = temperature_from_pressure(gas, 1.0 / vL, pL);
  const double thR = temperature_from_pressure(gas, right.rho, pR);
  const double jL = (right.j * vR - (thL - thR) / M) / vL;
  const double rhoL = 1.0 / vL;

  sc.left = {rhoL, uL, entropy_from_pressure(gas, rhoL, pL), jL};
  sc.D = D;
  sc.M = M;
  const double ahead = M * right.eta + k2 * right.j / right.rho;
  const double behind = M * sc.left.eta + k2 * jL / rhoL;
  sc.entropy_jump = ahead - behind;
  const double scale = std::abs(ahead) + std::abs(behind);
  sc.admissible = sc.entropy_jump >= -1e-13 * scale;
  sc.degenerate = false;
  return sc;
}

std::array<double, 4> rh_residuals(const ModelParams& params,
                                   const Primitive& left,
                                   const Primitive& right, double D) {
  const GasParams& gas = params.gas;
  const double k2 = params.kappa * params.kappa;
  struct Side {
    double mass, mom, energy, impulse;
  };
  auto side = [&](const Primitive& s) {
    const double p = pressure(gas, s.rho, s.eta);
    const double eps = specific_internal_energy(gas, s.rho, s.eta);
    const double th = temperature_from_pressure(gas, s.rho, p);
    const double M = s.rho * (s.u - D);
    const double r2 = s.rho * s.rho;
    return Side{M, p + M * M / s.rho,
                M * (0.5 * M * M / r2 + eps + p / s.rho +
                     0.5 * k2 * s.j * s.j / r2) +
                    k2 * th * s.j / s.rho,
                M * s.j / s.rho + th};
  };
  const Side l = side(left);
  const Side r = side(right);
  return {r.mass - l.mass, r.mom - l.mom, r.energy - l.energy,
          r.impulse - l.impulse};
}

ContactCheck contact_discontinuity_check(const ModelParams& params,
                                         const Primitive& left,
                                         const Primitive& right) {
  const GasParams& gas = params.gas;
  const double pL = pressure(gas, left.rho, left.eta);
  const double pR = pressure(gas, right.rho, right.eta);
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const bool still = close(left.u, right.u);
  if (!(params.kappa > 0.0)) {
    return {still && close(pL, pR), true};
  }
  // With M = 0 the jump conditions reduce to [u] = [p] = [theta] = 0 and
  // [kappa^2 theta j / rho] = 0, which leave no jump in any variable.
  const double k2 = params.kappa * params.kappa;
  const double thL = temperature_from_pressure(gas, left.rho, pL);
  const double thR = temperature_from_pressure(gas, right.rho, pR);
  const bool jumps_hold = still && close(pL, pR) && close(thL, thR) &&
                          close(k2 * thL * left.j / left.rho,
                                k2 * thR * right.j / right.rho);
  const bool equal = close(left.rho, right.rho) && close(left.eta, right.eta) &&
                     close(left.j, right.j);
  return {jumps_hold && equal, false};
}

}  // namespace heatwave::hugoniot
