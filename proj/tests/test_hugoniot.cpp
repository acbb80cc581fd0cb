#include <doctest.h>

#include <cmath>
#include <random>

#include "heatwave/error.hpp"
#include "heatwave/hugoniot.hpp"

using namespace heatwave;
using namespace heatwave::hugoniot;

namespace {

const double kS13 = std::sqrt(13.0);

ModelParams unit_model(double kappa) {
  ModelParams m;
  m.gas = {2.0, 1.0};
  m.kappa = kappa;
  m.relaxation = false;
  return m;
}

const Primitive kRight{1.0, 0.0, 0.0, 0.0};

}  // namespace

TEST_CASE("branch pressure reference values") {
  for (double k : {0.0, 0.5, 0.8, 1.3}) {
    CHECK(branch_pressure(k, 2.0, 1.0, Branch::acoustic) == 1.0);
    CHECK(branch_pressure(k, 2.0, 1.0, Branch::thermal) == 1.0);
  }
  CHECK(branch_pressure(0.0, 2.0, 2.0, Branch::acoustic) ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK(branch_pressure(0.8, 2.0, 1.25, Branch::thermal) ==
        doctest::Approx(0.75 + kS13 / 20.0).epsilon(1e-14));

  // Euler branch (3 - v)/(3 v - 1)
  for (double v : {0.5, 0.8, 1.5, 2.5}) {
    CHECK(branch_pressure(0.0, 2.0, v, Branch::acoustic) ==
          doctest::Approx((3.0 - v) / (3.0 * v - 1.0)).epsilon(1e-13));
    CHECK(branch_pressure(0.0, 2.0, v, Branch::thermal) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(branch_pressure(0.8, 2.0, 0.0, Branch::thermal), DomainError);
  CHECK_THROWS_AS(branch_pressure(0.8, 2.0, -1.0, Branch::acoustic), DomainError);
}

TEST_CASE("general quadratic agrees with the gamma = 2 closed form") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> v_d(0.45, 4.0), k_d(0.0, 2.0);
  for (int n = 0; n < 500; ++n) {
    const double k = k_d(rng), v = v_d(rng);
    for (Branch b : {Branch::acoustic, Branch::thermal}) {
      double general;
      try {
        general = branch_pressure(k, 2.0, v, b);
      } catch (const PoleError&) {
        continue;
      }
      const double closed = branch_pressure_gamma2(k, v, b);
      CHECK(std::abs(general - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("Hugoniot residual vanishes along both branches") {
  for (double gamma : {2.0, 1.4, 5.0 / 3.0}) {
    for (double k : {0.3, 0.8, critical_kappa(), 1.3}) {
      for (double v = 0.2; v < 5.0; v += 0.0137) {
        if (std::abs(v - 1.0) < 1e-3) continue;
        for (Branch b : {Branch::acoustic, Branch::thermal}) {
          double p;
          try {
            p = branch_pressure(k, gamma, v, b);
          } catch (const PoleError&) {
            continue;
          }
          if (!std::isfinite(p) || std::abs(p) > 1e6) continue;
          const double scale = std::max(1.0, std::abs(p) * v);
          CHECK(std::abs(hugoniot_residual(k, gamma, v, p)) < 1e-10 * scale * scale);
        }
      }
    }
  }
}

TEST_CASE("poles lie on the acoustic branch below v = 1") {
  for (double k : {0.5, 0.8, 1.3, 2.0}) {
    const std::vector<double> poles = branch_poles(k, 2.0);
    REQUIRE_FALSE(poles.empty());
    for (double p : poles) {
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      const Quadratic q = hugoniot_quadratic(k, 2.0, p);
      CHECK(std::abs(q.a) < 1e-12);
      CHECK_THROWS_AS(branch_pressure(k, 2.0, p, Branch::acoustic), PoleError);
      CHECK_NOTHROW(branch_pressure(k, 2.0, p, Branch::thermal));
    }
  }
  // Euler pole at v = 1/3
  const std::vector<double> euler = branch_poles(0.0, 2.0);
  REQUIRE(euler.size() == 1);
  CHECK(euler[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  try {
    branch_pressure(0.0, 2.0, 1.0 / 3.0, Branch::acoustic);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.pole() == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("critical coupling") {
  const double kc = critical_kappa();
  CHECK(kc == doctest::Approx(1.0399).epsilon(1e-4));
  const double radical =
      std::sqrt(6.0) / std::sqrt(2.0 + std::cbrt(17.0 - 12.0 * std::sqrt(2.0)) +
                                 std::cbrt(17.0 + 12.0 * std::sqrt(2.0)));
  CHECK(std::abs(kc - radical) < 1e-8);
  CHECK(std::abs(critical_kappa_closed_form() - radical) < 1e-15);
  CHECK(std::abs(g_second_at_center(kc)) < 1e-10);
  CHECK(g_second_at_center(0.8) < 0.0);
  CHECK(g_second_at_center(1.3) > 0.0);
  CHECK(std::abs(g_second_at_center(0.0)) < 1e-14);
}

TEST_CASE("center curvature is twice the thermal branch second derivative") {
  for (double k : {0.3, 0.8, 1.3}) {
    const double h = 1e-4;
    const double d2 = (branch_pressure(k, 2.0, 1.0 + h, Branch::thermal) - 2.0 +
                       branch_pressure(k, 2.0, 1.0 - h, Branch::thermal)) /
                      (h * h);
    CHECK(g_second_at_center(k) == doctest::Approx(2.0 * d2).epsilon(1e-5));
  }
}

TEST_CASE("admissibility function") {
  for (double k : {0.8, 1.3}) {
    CHECK(psi(k, 2.0, 1.0, Branch::thermal) == 0.0);
  }
  CHECK(psi(0.8, 2.0, 1.1, Branch::thermal) > 0.0);

  // third-order contact with zero at the center
  for (double k : {0.8, 1.3}) {
    for (double side : {1.0, -1.0}) {
      const double a = std::abs(psi(k, 2.0, 1.0 + side * 1e-2, Branch::thermal));
      const double b = std::abs(psi(k, 2.0, 1.0 + side * 1e-3, Branch::thermal));
      CHECK(std::log10(a / b) >= 2.7);
    }
  }
  // below the critical coupling Psi''' > 0 on the thermal branch
  const double h = 1e-2;
  CHECK(psi(0.8, 2.0, 1.0 + h, Branch::thermal) > 0.0);
  CHECK(psi(0.8, 2.0, 1.0 - h, Branch::thermal) < 0.0);

  CHECK_THROWS_AS(psi(0.8, 2.0, 0.0, Branch::thermal), DomainError);
}

TEST_CASE("splitting point") {
  const double vs = v_star(1.3);
  CHECK(std::abs(vs - 0.7098) < 5e-4);
  // maximum of Psi
  CHECK(psi(1.3, 2.0, vs, Branch::thermal) > psi(1.3, 2.0, vs - 1e-3, Branch::thermal));
  CHECK(psi(1.3, 2.0, vs, Branch::thermal) > psi(1.3, 2.0, vs + 1e-3, Branch::thermal));
  // M~^2 is stationary there as well
  const double h = 1e-5;
  const double dm = (mass_flux_sq(1.3, 2.0, vs + h, Branch::thermal) -
                     mass_flux_sq(1.3, 2.0, vs - h, Branch::thermal)) /
                    (2 * h);
  CHECK(std::abs(dm) < 1e-4);

  const double vs_low = v_star(0.8);
  CHECK(vs_low > 1.0);

  // |u - D| equals the thermal sound speed of the star state
  const ModelParams m = unit_model(1.3);
  const ShockConstruction sc =
      construct_shock_state(m, kRight, vs, Branch::thermal, Direction::right_moving);
  const WaveSpeeds w = wave_speeds_1d(m, sc.left);
  CHECK(std::abs(std::abs(sc.left.u - sc.D) - std::sqrt(w.Y1 - w.Y2)) < 1e-6);
}

TEST_CASE("expansion shock state") {
  const ModelParams m = unit_model(0.8);
  const ShockConstruction sc = construct_shock_state(
      m, kRight, 1.25, Branch::thermal, Direction::right_moving);
  const PressureState l = to_pressure_state(m.gas, sc.left);
  CHECK(std::abs(l.rho - 0.8) < 1e-10);
  CHECK(std::abs(l.u + 0.25 * std::sqrt(1.0 - kS13 / 5.0)) < 1e-10);
  CHECK(std::abs(l.p - (0.75 + kS13 / 20.0)) < 1e-10);
  CHECK(std::abs(l.j - 0.25 * std::sqrt((11.0 + kS13) / 15.0)) < 1e-10);
  CHECK(std::abs(total_energy(m, l) - 7.0 / 150.0 * (17.0 + kS13)) < 1e-10);
  CHECK(std::abs(sc.D - std::sqrt(1.0 - kS13 / 5.0)) < 1e-10);
  CHECK(sc.admissible);
  CHECK(sc.entropy_jump > 0.0);
  CHECK_FALSE(sc.degenerate);
  for (double r : rh_residuals(m, sc.left, sc.right, sc.D)) CHECK(std::abs(r) < 1e-10);
  // rarefying jump: lower pressure behind
  CHECK(l.p < 1.0);
}

TEST_CASE("splitting left state") {
  const ModelParams m = unit_model(1.3);
  const ShockConstruction sc = construct_shock_state(
      m, kRight, 0.635, Branch::thermal, Direction::right_moving);
  const PressureState l = to_pressure_state(m.gas, sc.left);
  CHECK(std::abs(l.rho - 1.575) < 1e-3);
  CHECK(std::abs(l.u - 0.271) < 1e-3);
  CHECK(std::abs(l.p - 1.202) < 1e-3);
  CHECK(std::abs(l.j + 0.502) < 1e-3);
  CHECK(std::abs(total_energy(m, l) - 1.395) < 1e-3);
  for (double r : rh_residuals(m, sc.left, sc.right, sc.D)) CHECK(std::abs(r) < 1e-10);
  // beyond the splitting point: not admissible as a single shock
  CHECK(sc.D > 0.0);
}

TEST_CASE("shock construction properties") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> v_d(0.5, 2.0), k_d(0.2, 1.8),
      rho_d(0.5, 2.0), u_d(-1.0, 1.0), j_d(-0.5, 0.5);
  for (int n = 0; n < 200; ++n) {
    const ModelParams m = unit_model(k_d(rng));
    const Primitive right{rho_d(rng), u_d(rng), u_d(rng), j_d(rng)};
    const double v = v_d(rng);
    for (Branch b : {Branch::acoustic, Branch::thermal}) {
      for (Direction d : {Direction::left_moving, Direction::right_moving}) {
        ShockConstruction sc;
        try {
          sc = construct_shock_state(m, right, v, b, d);
        } catch (const Error&) {
          continue;  // pole or M^2 <= 0
        }
        const auto r = rh_residuals(m, sc.left, sc.right, sc.D);
        double scale = 1.0;
        for (double x : {sc.left.rho, std::abs(sc.left.u), std::abs(sc.left.j),
                         std::abs(sc.D)}) {
          scale = std::max(scale, x);
        }
        for (double x : r) CHECK(std::abs(x) < 1e-10 * scale * scale * scale);
        CHECK(sc.left.rho == doctest::Approx(right.rho / v).epsilon(1e-14));
        if (d == Direction::right_moving) CHECK(sc.D > right.u);
        if (d == Direction::left_moving) CHECK(sc.D < right.u);
        CHECK(sc.admissible == (sc.entropy_jump >= 0.0));
      }
    }
  }
  const ShockConstruction same = construct_shock_state(
      unit_model(0.8), kRight, 1.0, Branch::thermal, Direction::right_moving);
  CHECK(same.degenerate);
  CHECK(same.left.rho == kRight.rho);
  CHECK(same.left.u == kRight.u);
  CHECK(same.left.eta == kRight.eta);
  CHECK(same.left.j == kRight.j);
  CHECK(std::isnan(same.D));
}

TEST_CASE("no contact discontinuities when kappa > 0") {
  const ModelParams m = unit_model(0.8);
  CHECK(contact_discontinuity_check(m, kRight, kRight).admissible);

  // equal p and theta forces equal density for a polytropic gas; probe
  // unequal densities with equal pressure, and unequal j
  const Primitive a = to_primitive(m.gas, {1.0, 0.0, 1.0, 0.0});
  const Primitive b = to_primitive(m.gas, {2.0, 0.0, 1.0, 0.0});
  CHECK_FALSE(contact_discontinuity_check(m, a, b).admissible);
  const Primitive c = to_primitive(m.gas, {1.0, 0.0, 1.0, 0.3});
  CHECK_FALSE(contact_discontinuity_check(m, a, c).admissible);

  std::mt19937 rng(21);
  std::uniform_real_distribution<double> d(0.5, 2.0), s(-0.5, 0.5);
  for (int n = 0; n < 200; ++n) {
    const double p = d(rng);
    const Primitive l = to_primitive(m.gas, {d(rng), 0.0, p, s(rng)});
    const Primitive r = to_primitive(m.gas, {d(rng), 0.0, p, s(rng)});
    CHECK_FALSE(contact_discontinuity_check(m, l, r).admissible);
  }

  const ContactCheck euler = contact_discontinuity_check(unit_model(0.0), a, b);
  CHECK(euler.euler_limit);
  CHECK(euler.admissible);
}

TEST_CASE("tabulation") {
  const HugoniotSample s = sample(0.8, 2.0, 1.25);
  CHECK(s.p_minus == doctest::Approx(0.75 + kS13 / 20.0));
  CHECK(s.psi_minus > 0.0);
  CHECK(s.Msq_minus > 0.0);

  const double pole = branch_poles(1.3, 2.0).front();
  std::vector<std::string> warnings;
  const auto rows = sample_range(1.3, 2.0, pole - 0.1, pole + 0.1, 3, &warnings);
  CHECK(rows.size() == 2);
  CHECK(warnings.size() == 1);

  const auto full = sample_range(0.8, 2.0, 0.3, 3.0, 1000, nullptr);
  CHECK(full.size() == 1000);
  CHECK_THROWS_AS(sample_range(0.8, 2.0, 1.0, 0.5, 10, nullptr), DomainError);
}
