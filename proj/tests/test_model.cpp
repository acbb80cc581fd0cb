#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "heatwave/error.hpp"
#include "heatwave/model.hpp"

using namespace heatwave;

namespace {

ModelParams unit_model(double kappa = 1.0) {
  ModelParams m;
  m.gas = {2.0, 1.0};
  m.kappa = kappa;
  m.K = 1e-3;
  return m;
}

ModelParams air_model(double kappa = 1.0) {
  ModelParams m;
  m.gas = {1.4, 1.5};
  m.kappa = kappa;
  m.K = 1e-3;
  return m;
}

std::vector<double> dense_eigenvalues(const Mat4& a) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = a[i][j];
  const Eigen::Vector4cd ev = m.eigenvalues();
  std::vector<double> out;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(ev[i].imag()) < 1e-9);
    out.push_back(ev[i].real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Primitive random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> rho(0.1, 3.0), u(-2.0, 2.0),
      eta(-1.5, 1.5), j(-1.0, 1.0);
  return {rho(rng), u(rng), eta(rng), j(rng)};
}

}  // namespace

TEST_CASE("conversions between primitive and conserved states") {
  const ModelParams m = unit_model();
  const Conserved q = prim_to_cons(m, {1.0, 0.0, 0.0, 0.0});
  CHECK(q.rho == 1.0);
  CHECK(q.mom == 0.0);
  CHECK(q.E == doctest::Approx(1.0));
  CHECK(q.j == 0.0);

  CHECK(total_energy(air_model(), {1.0, 0.0, 1.0, 0.0}) == doctest::Approx(2.5));

  const double s13 = std::sqrt(13.0);
  const PressureState left{0.8, -0.25 * std::sqrt(1.0 - s13 / 5.0),
                           0.75 + s13 / 20.0,
                           0.25 * std::sqrt((11.0 + s13) / 15.0)};
  CHECK(total_energy(unit_model(0.8), left) ==
        doctest::Approx(7.0 / 150.0 * (17.0 + s13)).epsilon(1e-14));

  std::mt19937 rng(1);
  for (const ModelParams& p : {unit_model(), air_model(0.3), air_model(0.0)}) {
    for (int n = 0; n < 200; ++n) {
      const Primitive v = random_state(rng);
      const Primitive w = cons_to_prim(p, prim_to_cons(p, v));
      CHECK(w.rho == doctest::Approx(v.rho).epsilon(1e-13));
      CHECK(w.u == doctest::Approx(v.u).epsilon(1e-13));
      CHECK(w.eta == doctest::Approx(v.eta).epsilon(1e-12).scale(1.0));
      CHECK(w.j == doctest::Approx(v.j).epsilon(1e-13));
      const PressureState s = to_pressure_state(p.gas, v);
      CHECK(to_primitive(p.gas, s).eta ==
            doctest::Approx(v.eta).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("non-physical conserved states are rejected") {
  const ModelParams m = unit_model();
  CHECK_THROWS_AS(pressure_of(m, {1.0, 0.0, 0.1, 1.0}), NonPhysicalStateError);
  CHECK_THROWS_AS(pressure_of(m, {1.0, 2.0, 1.0, 0.0}), NonPhysicalStateError);
  CHECK_THROWS_AS(cons_to_prim(m, {0.0, 0.0, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(flux(m, {1.0, 0.0, -1.0, 0.0}), NonPhysicalStateError);
}

TEST_CASE("flux") {
  const ModelParams m = unit_model();
  // rest: (0, p, 0, theta)
  const Conserved rest = prim_to_cons(m, to_primitive(m.gas, {1.0, 0.0, 1.0, 0.0}));
  const Vec4 f0 = flux(m, rest);
  CHECK(f0[0] == 0.0);
  CHECK(f0[1] == doctest::Approx(1.0));
  CHECK(f0[2] == 0.0);
  CHECK(f0[3] == doctest::Approx(1.0));

  const Conserved moving =
      prim_to_cons(m, to_primitive(m.gas, {1.0, 1.0, 1.0, 0.0}));
  const Vec4 f1 = flux(m, moving);
  const double E = 0.5 + 1.0;  // rho u^2/2 + rho eps, eps = p v = 1
  CHECK(moving.E == doctest::Approx(E));
  CHECK(f1[0] == doctest::Approx(1.0));
  CHECK(f1[1] == doctest::Approx(2.0));
  CHECK(f1[2] == doctest::Approx(E + 1.0));
  CHECK(f1[3] == doctest::Approx(1.0));  // j u + theta with j = 0, theta = 1

  // E u + p u + kappa^2 theta j / rho with j != 0
  const PressureState s{0.7, 0.3, 0.9, 0.4};
  const Conserved q = prim_to_cons(m, to_primitive(m.gas, s));
  const double theta = temperature_from_pressure(m.gas, s.rho, s.p);
  const Vec4 f2 = flux(m, q);
  CHECK(f2[1] == doctest::Approx(s.rho * s.u * s.u + s.p));
  CHECK(f2[2] ==
        doctest::Approx((q.E + s.p) * s.u + m.kappa * m.kappa * theta * s.j / s.rho));
  CHECK(f2[3] == doctest::Approx(s.j * s.u + theta));

  // continuity under a small perturbation
  Conserved q2 = q;
  q2.E += 1e-9;
  const Vec4 f3 = flux(m, q2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(f3[i] - f2[i]) < 1e-8);
}

TEST_CASE("relaxation time and source") {
  ModelParams m = air_model(1.0);
  CHECK(relax_time(m, 1.0, 1.0) == doctest::Approx(6e-4).epsilon(1e-14));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> rho_d(0.1, 3.0), p_d(0.1, 3.0);
  for (int n = 0; n < 50; ++n) {
    const double rho = rho_d(rng), p = p_d(rng);
    const double theta = temperature_from_pressure(m.gas, rho, p);
    const double alpha = m.kappa * m.kappa / rho;
    CHECK(relax_time(m, rho, p) ==
          doctest::Approx(m.K / (alpha * theta)).epsilon(1e-12));
  }

  ModelParams no_k = m;
  no_k.K = 0.0;
  CHECK_THROWS_AS(relax_time(no_k, 1.0, 1.0), ConfigError);
  ModelParams no_kappa = m;
  no_kappa.kappa = 0.0;
  CHECK_THROWS_AS(relax_time(no_kappa, 1.0, 1.0), ConfigError);

  const Conserved q0 = prim_to_cons(m, to_primitive(m.gas, {1.0, 0.0, 1.0, 0.0}));
  CHECK(source(m, q0) == Vec4{0, 0, 0, 0});

  // j = 0.5 with tau = 6e-4: pressure chosen so that tau(rho, p) = 6e-4
  const double E = 1.0 / 0.4 + 0.5 * 0.25;
  const Conserved q1{1.0, 0.0, E, 0.5};
  CHECK(pressure_of(m, q1) == doctest::Approx(1.0));
  const Vec4 s = source(m, q1);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);
  CHECK(s[3] == doctest::Approx(-0.5 / 6e-4).epsilon(1e-12));

  ModelParams homogeneous = m;
  homogeneous.relaxation = false;
  CHECK(source(homogeneous, q1) == Vec4{0, 0, 0, 0});

  ModelParams constant = m;
  constant.tau_policy = TauPolicy::constant;
  constant.tau0 = 0.25;
  CHECK(source(constant, q1)[3] == doctest::Approx(-2.0));
  constant.tau0 = 0.0;
  CHECK_THROWS_AS(constant.validate(), ConfigError);
}

TEST_CASE("wave speeds at the rest unit state") {
  const ModelParams m = unit_model();
  const WaveSpeeds w = wave_speeds_1d(m, {1.0, 0.0, 0.0, 0.0});
  CHECK(w.Y1 == doctest::Approx(1.5));
  CHECK(w.Y2 == doctest::Approx(std::sqrt(1.25)));
  CHECK(w.lambda4 == doctest::Approx(1.6180339887).epsilon(1e-10));
  CHECK(w.lambda3 == doctest::Approx(0.6180339887).epsilon(1e-10));
  CHECK(w.lambda2 == doctest::Approx(-0.6180339887).epsilon(1e-10));
  CHECK(w.lambda1 == doctest::Approx(-1.6180339887).epsilon(1e-10));
  CHECK(w.max_abs() == doctest::Approx(1.6180339887).epsilon(1e-10));

  const std::vector<double> ev =
      dense_eigenvalues(quasilinear_matrix_1d(m, {1.0, 0.0, 0.0, 0.0}));
  const auto l = w.as_array();
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - l[i]) < 1e-10);
}

TEST_CASE("closed-form speeds match dense eigenvalues on random states") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> kappa_d(0.05, 2.0);
  for (int n = 0; n < 300; ++n) {
    ModelParams m = n % 2 ? unit_model(kappa_d(rng)) : air_model(kappa_d(rng));
    const Primitive v = random_state(rng);
    const WaveSpeeds w = wave_speeds_1d(m, v);
    const auto l = w.as_array();
    const std::vector<double> ev = dense_eigenvalues(quasilinear_matrix_1d(m, v));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(ev[i] - l[i]) < 1e-10 * std::max(1.0, std::abs(l[i])));
    }
    CHECK(w.lambda1 < w.lambda2);
    CHECK(w.lambda2 < w.lambda3);
    CHECK(w.lambda3 < w.lambda4);
    CHECK(w.Y1 >= w.Y2);
    CHECK(w.Y2 >= 0.0);

    // Galilean shift
    Primitive shifted = v;
    shifted.u += 0.37;
    const auto ls = wave_speeds_1d(m, shifted).as_array();
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(ls[i] - l[i] == doctest::Approx(0.37).epsilon(1e-12));
    }

    // reflection: u -> -u, j -> -j negates the spectrum
    const std::vector<double> mirrored = dense_eigenvalues(
        quasilinear_matrix_1d(m, {v.rho, -v.u, v.eta, -v.j}));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(mirrored[i] + ev[3 - i]) < 1e-9 * std::max(1.0, std::abs(ev[i])));
    }
  }
}

TEST_CASE("Euler limit of the wave speeds") {
  const ModelParams m = air_model(0.0);
  const Primitive v{0.6, 0.2, 0.3, 0.0};
  const WaveSpeeds w = wave_speeds_1d(m, v);
  const double ap = std::sqrt(thermo_derivatives(m.gas, v.rho, v.eta).p_rho);
  CHECK(w.lambda2 == doctest::Approx(v.u));
  CHECK(w.lambda3 == doctest::Approx(v.u));
  CHECK(w.lambda4 - v.u == doctest::Approx(ap).epsilon(1e-13));
  const std::vector<double> ev = dense_eigenvalues(quasilinear_matrix_1d(m, v));
  CHECK(ev[0] == doctest::Approx(v.u - ap));
  CHECK(ev[1] == doctest::Approx(v.u));
  CHECK(ev[2] == doctest::Approx(v.u));
  CHECK(ev[3] == doctest::Approx(v.u + ap));
  CHECK_THROWS_AS(wave_speeds_1d(m, {std::nan(""), 0, 0, 0}), DomainError);
}

TEST_CASE("closed-form right eigenvectors") {
  std::mt19937 rng(9);
  for (int n = 0; n < 100; ++n) {
    const ModelParams m = air_model(0.8);
    const Primitive v = random_state(rng);
    const Mat4 a = quasilinear_matrix_1d(m, v);
    const auto l = wave_speeds_1d(m, v).as_array();
    for (int f = 1; f <= 4; ++f) {
      const Vec4 r = right_eigenvector(m, v, f);
      double norm = 0.0;
      for (double x : r) norm = std::max(norm, std::abs(x));
      for (std::size_t i = 0; i < 4; ++i) {
        double ar = 0.0;
        for (std::size_t k = 0; k < 4; ++k) ar += a[i][k] * r[k];
        CHECK(std::abs(ar - l[static_cast<std::size_t>(f - 1)] * r[i]) <
              1e-9 * norm * std::max(1.0, std::abs(l[f - 1])));
      }
    }
  }
  CHECK_THROWS_AS(right_eigenvector(air_model(0.0), {1, 0, 0, 0}, 3),
                  DegenerateFieldError);
  CHECK_THROWS_AS(right_eigenvector(air_model(), {1, 0, 0, 0}, 5), DomainError);
}

TEST_CASE("thermal field loses genuine nonlinearity at kappa v = 1.0399") {
  const ModelParams m = unit_model(1.0399899330);
  // kappa v = 1.0399899 at rho = 1
  const Primitive at{1.0, 0.0, 0.0, 0.0};
  CHECK(std::abs(char_field_indicator(m, at, 3)) < 1e-4);
  CHECK(std::abs(char_field_indicator(m, at, 4)) > 1e-2);

  const double below = char_field_indicator(m, {1.1, 0.0, 0.0, 0.0}, 3);
  const double above = char_field_indicator(m, {0.9, 0.0, 0.0, 0.0}, 3);
  CHECK(below * above < 0.0);
  CHECK(std::abs(char_field_indicator(m, {0.9, 0.0, 0.0, 0.0}, 4)) > 1e-2);
  CHECK(std::abs(char_field_indicator(m, {1.1, 0.0, 0.0, 0.0}, 4)) > 1e-2);
}

TEST_CASE("three-dimensional speeds") {
  const ModelParams m = unit_model(0.9);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(-1.0, 1.0), pos(0.2, 2.0);
  for (int n = 0; n < 100; ++n) {
    const Primitive3D v{pos(rng), {d(rng), d(rng), d(rng)}, d(rng),
                        {d(rng), d(rng), d(rng)}};
    const Eigenvalues3D e = eigenvalues_3d(m, v);
    for (int i = 2; i < 6; ++i) CHECK(e.chi[static_cast<std::size_t>(i)] == doctest::Approx(v.u[0]));
    CHECK(e.Z1 >= e.Z2);
    for (int i = 0; i < 7; ++i) CHECK(e.chi[static_cast<std::size_t>(i)] <= e.chi[static_cast<std::size_t>(i + 1)]);

    // dense 8x8 spectrum
    const auto a = quasilinear_matrix_3d(m, v);
    Eigen::Matrix<double, 8, 8> mat;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) mat(i, j) = a[i][j];
    Eigen::VectorXcd ev = mat.eigenvalues();
    std::vector<double> re;
    for (int i = 0; i < 8; ++i) re.push_back(ev[i].real());
    std::sort(re.begin(), re.end());
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(re[i] - e.chi[i]) < 1e-6);

    // only two eigenvectors for the fourfold u1
    Eigen::Matrix<double, 8, 8> shifted =
        mat - v.u[0] * Eigen::Matrix<double, 8, 8>::Identity();
    Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(shifted);
    lu.setThreshold(1e-10);
    CHECK(lu.rank() == 6);

    // shift invariance
    Primitive3D s = v;
    s.u[0] += 0.5;
    const Eigenvalues3D es = eigenvalues_3d(m, s);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(es.chi[i] - e.chi[i] == doctest::Approx(0.5).epsilon(1e-12));
    }

    // planar state reduces to the 1D speeds
    const Primitive3D planar{v.rho, {v.u[0], v.u[1], v.u[2]}, v.eta, {v.j[0], 0, 0}};
    const Eigenvalues3D ep = eigenvalues_3d(m, planar);
    const WaveSpeeds w = wave_speeds_1d(m, {v.rho, v.u[0], v.eta, v.j[0]});
    CHECK(ep.a_q == 0.0);
    CHECK(ep.chi[0] == doctest::Approx(w.lambda1));
    CHECK(ep.chi[1] == doctest::Approx(w.lambda2));
    CHECK(ep.chi[6] == doctest::Approx(w.lambda3));
    CHECK(ep.chi[7] == doctest::Approx(w.lambda4));
  }
}

TEST_CASE("curl cleaning speeds") {
  const ModelParams m = unit_model();
  const Primitive3D rest{1.0, {0, 0, 0}, 0.0, {0, 0, 0}};
  auto c = eigenvalues_curl_cleaning(m, rest, 3.0);
  std::sort(c.begin(), c.end());
  const std::array<double, 11> expected = {-3, -3, -1.6180339887, -0.6180339887, 0, 0, 0,
                                           0.6180339887, 1.6180339887, 3, 3};
  for (std::size_t i = 0; i < 11; ++i) CHECK(c[i] == doctest::Approx(expected[i]).epsilon(1e-9));
  for (std::size_t i = 0; i < 11; ++i) CHECK(c[i] == doctest::Approx(-c[10 - i]));

  const Primitive3D moving{1.0, {0.4, 0, 0}, 0.0, {0, 0, 0}};
  const auto z = eigenvalues_curl_cleaning(m, moving, 0.0);
  CHECK(std::count_if(z.begin(), z.end(), [](double x) { return std::abs(x - 0.4) < 1e-14; }) == 7);
}

TEST_CASE("convexity of the total specific energy") {
  std::mt19937 rng(6);
  for (int n = 0; n < 50; ++n) {
    const Primitive v = random_state(rng);
    for (const ModelParams& m : {air_model(0.7), unit_model(1.3), air_model(0.0)}) {
      const ConvexityReport r = convexity_check(m, v);
      CHECK(r.convex);

      // finite-difference Hessian of e(u, w = v j, eta, v)
      const double k2 = m.kappa * m.kappa;
      auto e = [&](const std::array<double, 4>& x) {
        return 0.5 * x[0] * x[0] + specific_internal_energy(m.gas, 1.0 / x[3], x[2]) +
               0.5 * k2 * x[1] * x[1];
      };
      const std::array<double, 4> x0 = {v.u, v.j / v.rho, v.eta, 1.0 / v.rho};
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          const double hi = 1e-4 * std::max(1.0, std::abs(x0[i]));
          const double hj = 1e-4 * std::max(1.0, std::abs(x0[j]));
          auto at = [&](double si, double sj) {
            std::array<double, 4> x = x0;
            x[i] += si * hi;
            x[j] += sj * hj;
            return e(x);
          };
          const double fd = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hi * hj);
          const double scale = std::max(1.0, std::abs(r.hessian[i][j]));
          CHECK(std::abs(fd - r.hessian[i][j]) < 1e-5 * scale);
        }
      }
    }
  }
}
