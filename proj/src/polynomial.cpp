#include "heatwave/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "heatwave/error.hpp"

namespace heatwave {

namespace {

constexpr int kMaxIterations = 500;
constexpr int kPolishSteps = 3;
constexpr double kBackwardTolerance = 1e-10;

// sum |a_i| |z|^i, the natural scale of p(z) rounding error.
double eval_scale(std::span<const cplx> coeffs, cplx z) {
  const double r = std::abs(z);
  double s = 0.0;
  for (const cplx& a : coeffs) {
    s = s * r + std::abs(a);
  }
  return s;
}

cplx derivative_eval(std::span<const cplx> coeffs, cplx z) {
  const std::size_t n = coeffs.size() - 1;
  cplx d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d = d * z + coeffs[i] * static_cast<double>(n - i);
  }
  return d;
}

}  // namespace

cplx poly_eval(std::span<const cplx> coeffs, cplx z) {
  cplx v = 0.0;
  for (const cplx& a : coeffs) {
    v = v * z + a;
  }
  return v;
}

std::vector<cplx> solve_roots(std::span<const cplx> coeffs) {
  if (coeffs.size() < 2 || coeffs.size() > 5) {
    throw DomainError(fmt::format("solve_roots: degree {} outside 1..4",
                                  static_cast<int>(coeffs.size()) - 1));
  }
  if (coeffs[0] != cplx(1.0, 0.0)) {
    throw DomainError("solve_roots: polynomial is not monic");
  }
  for (const cplx& a : coeffs) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DomainError("solve_roots: non-finite coefficient");
    }
  }
  const std::size_t n = coeffs.size() - 1;
  if (n == 1) {
    return {-coeffs[1]};
  }

  // Fujiwara bound on root magnitudes.
  double bound = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double a = std::abs(coeffs[i]);
    if (i == n) a *= 0.5;
    bound = std::max(bound, std::pow(a, 1.0 / static_cast<double>(i)));
  }
  bound = 2.0 * std::max(bound, 1e-3);

  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(n) +
                         0.4;
    z[i] = bound * std::polar(1.0, phase) * (1.0 + 0.05 * static_cast<double>(i));
  }

  for (int it = 0; it < kMaxIterations; ++it) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx denom = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) denom *= z[i] - z[k];
      }
      if (denom == cplx(0.0, 0.0)) {
        denom = cplx(1e-300, 0.0);
      }
      const cplx step = poly_eval(coeffs, z[i]) / denom;
      z[i] -= step;
      max_step =
          std::max(max_step, std::abs(step) / std::max(std::abs(z[i]), 1e-300));
    }
    if (max_step < 1e-15) break;
  }

  for (cplx& r : z) {
    for (int s = 0; s < kPolishSteps; ++s) {
      const cplx d = derivative_eval(coeffs, r);
      if (d == cplx(0.0, 0.0)) break;
      const cplx next = r - poly_eval(coeffs, r) / d;
      // Newton can wander near multiple roots; keep only improvements.
      if (std::abs(poly_eval(coeffs, next)) < std::abs(poly_eval(coeffs, r))) {
        r = next;
      } else {
        break;
      }
    }
  }

  std::string bad;
  for (const cplx& r : z) {
    const double res = std::abs(poly_eval(coeffs, r));
    if (!(res <= kBackwardTolerance * eval_scale(coeffs, r))) {
      bad += fmt::format(" ({}{:+}i: |p|={})", r.real(), r.imag(), res);
    }
  }
  if (!bad.empty()) {
    throw NumericalError("solve_roots did not converge:" + bad);
  }
  return z;
}

}  // namespace heatwave
