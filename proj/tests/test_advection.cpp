#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hermvp/advection.hpp"
#include "hermvp/error.hpp"
#include "oracles.hpp"

using namespace hermvp;

namespace {

std::vector<double> vec(const CoefficientVector& c) { return {c.values().begin(), c.values().end()}; }

oracle::Rhs rhs_of(const AdvectionSystem& sys) {
  return [&sys](const std::vector<double>& y, std::vector<double>& dy) {
    dy = vec(sys.rhs(CoefficientVector(sys.basis(), y)));
  };
}

}  // namespace

TEST_SUITE("advection") {
  TEST_CASE("SW right-hand side") {
    const HermiteBasis b(BasisKind::SW, 2);
    CHECK(vec(rhs_sw(CoefficientVector(b, {0, 1, 0}))) == std::vector<double>{1, 0, -0.5});
    CHECK(vec(rhs_sw(CoefficientVector(b, {1, 0, 0}))) == std::vector<double>{0, -0.5, 0});
    CHECK(vec(rhs_sw(CoefficientVector(b))) == std::vector<double>{0, 0, 0});
  }

  TEST_CASE("AW right-hand side") {
    const HermiteBasis b(BasisKind::AW, 1);
    CHECK(vec(rhs_aw(CoefficientVector(b, {1, 0}))) == std::vector<double>{0, -1});
    CHECK(vec(rhs_aw(CoefficientVector(b, {0, 1}), LBOperator(BasisKind::AW, 1, 2.0, 1))) ==
          std::vector<double>{0, -2});
    CHECK(vec(rhs_aw(CoefficientVector(b))) == std::vector<double>{0, 0});
  }

  TEST_CASE("rows match the projected velocity derivative") {
    std::mt19937_64 rng(3);
    for (auto kind : {BasisKind::AW, BasisKind::SW}) {
      const int N = 9;
      const auto A = oracle::advection_matrix(kind, N);
      for (int trial = 0; trial < 5; ++trial) {
        const auto c = oracle::random_vector(rng, N + 1);
        const auto want = oracle::apply(A, c);
        const CoefficientVector cv(HermiteBasis(kind, N), c);
        const auto got = vec(kind == BasisKind::AW ? rhs_aw(cv) : rhs_sw(cv));
        for (int n = 0; n <= N; ++n) {
          CHECK(got[static_cast<std::size_t>(n)] == doctest::Approx(want[static_cast<std::size_t>(n)]).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("system checks basis and LB consistency") {
    const CoefficientVector c(HermiteBasis(BasisKind::AW, 4));
    CHECK_THROWS_AS(AdvectionSystem(c, LBOperator(BasisKind::SW, 1, 1, 4)), Error);
    CHECK_THROWS_AS(AdvectionSystem(c, LBOperator(BasisKind::AW, 1, 1, 3)), Error);
    CHECK_NOTHROW(AdvectionSystem(c, LBOperator(BasisKind::AW, 1, 1, 4)));
  }

  TEST_CASE("closed form limits") {
    const CoefficientVector c(HermiteBasis(BasisKind::AW, 1), {1, 0});
    CHECK(closed_form_aw(c, 1.0, 1, 0.0)[1] == doctest::Approx(0.0));
    CHECK(closed_form_aw(c, 1.0, 1, 50.0)[1] == doctest::Approx(-1.0).epsilon(1e-12));
    const CoefficientVector g(HermiteBasis(BasisKind::AW, 1), {0.7, -0.3});
    for (double nu : {0.5, 2.0})
      for (double t : {0.1, 1.0, 3.0})
        CHECK(closed_form_aw(g, nu, 1, t)[1] ==
              doctest::Approx((-0.3 + 0.7 / nu) * std::exp(-nu * t) - 0.7 / nu).epsilon(1e-13));
    try {
      closed_form_aw(c, 1.0, 2, 1.0);
      FAIL("expected unsupported order");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedOrder);
    }
  }

  TEST_CASE("closed form against reference integration") {
    std::mt19937_64 rng(17);
    for (double nu : {0.5, 1.0, 2.0}) {
      const int N = 10;
      const CoefficientVector c0(HermiteBasis(BasisKind::AW, N), oracle::random_vector(rng, N + 1));
      const AdvectionSystem sys(c0, LBOperator(BasisKind::AW, 1, nu, N));
      std::vector<double> y = vec(c0);
      double t = 0.0;
      for (double t1 : {0.5, 2.0, 5.0, 10.0}) {
        y = oracle::integrate_reference(rhs_of(sys), y, t, t1);
        t = t1;
        const auto cf = closed_form_aw(c0, nu, 1, t);
        for (int n = 0; n <= N; ++n)
          CHECK(std::abs(cf[static_cast<std::size_t>(n)] - y[static_cast<std::size_t>(n)]) < 1e-8);
      }
    }
  }

  TEST_CASE("pure AW advection gives polynomial growth") {
    const int N = 6;
    const AdvectionSystem sys(CoefficientVector(HermiteBasis(BasisKind::AW, N), {1, 0, 0, 0, 0, 0, 0}));
    for (double t : {0.5, 1.0, 3.0}) {
      const auto y = oracle::integrate_reference(rhs_of(sys), vec(sys.initial()), 0.0, t);
      CHECK(std::abs(y[1] + t) < 1e-10);
      CHECK(std::abs(y[2] - t * t / 2) < 1e-10);
      CHECK(std::abs(y[3] + t * t * t / 6) < 1e-10);
    }
  }

  TEST_CASE("SW weighted norm is conserved with an inactive tail") {
    const int N = 40;
    std::vector<double> c(N + 1, 0.0);
    c[0] = 1.0;
    c[1] = 0.3;
    c[2] = -0.1;
    const CoefficientVector c0(HermiteBasis(BasisKind::SW, N), c);
    const AdvectionSystem sys(c0);
    const double n0 = weighted_norm_sq(c0);
    for (double t : {1.0, 2.5, 5.0}) {
      const auto y = oracle::integrate_reference(rhs_of(sys), c, 0.0, t);
      CHECK(std::abs(weighted_norm_sq(CoefficientVector(sys.basis(), y)) - n0) / n0 < 1e-8);
    }
  }

  TEST_CASE("dissipation for k = 1, nu > 3/2") {
    std::mt19937_64 rng(23);
    for (double nu : {1.6, 2.0, 3.0}) {
      const int N = 8;
      const CoefficientVector c0(HermiteBasis(BasisKind::AW, N), oracle::random_vector(rng, N + 1));
      for (double t : {0.25, 1.0, 4.0})
        CHECK(weighted_norm_sq(closed_form_aw(c0, nu, 1, t)) <= weighted_norm_sq(c0) * (1 + 1e-12));
    }
  }

  TEST_CASE("exact coefficient values") {
    CHECK(exact_coeffs_sw(0.0, 0) == doctest::Approx(std::pow(std::numbers::pi, 0.25)).epsilon(1e-15));
    CHECK(exact_coeffs_sw(0.0, 3) == 0.0);
    const HermiteBasis sw(BasisKind::SW, 2), aw(BasisKind::AW, 2);
    CHECK(exact_coeffs_sw(1.0, 1) ==
          doctest::Approx(oracle::kSqrtPi * 2 * sw.gamma(1) * -0.5 * std::exp(-0.25)).epsilon(1e-14));
    CHECK(exact_coeffs_aw(0.0, 0) == doctest::Approx(oracle::kSqrtPi).epsilon(1e-15));
    CHECK(exact_coeffs_aw(0.0, 5) == 0.0);
    CHECK(exact_coeffs_aw(2.0, 2) == doctest::Approx(oracle::kSqrtPi * 16 / std::sqrt(8.0)).epsilon(1e-14));
  }

  TEST_CASE("exact coefficients match projection") {
    for (double t : {0.0, 0.5, 1.0}) {
      const int N = 12;
      const auto rule = gauss_hermite(60);
      const auto sw = project([t](double v) { return std::exp(-(v + t) * (v + t) / 2); }, HermiteBasis(BasisKind::SW, N), rule)
                          .to_normalized();
      const HermiteBasis aw(BasisKind::AW, N);
      const auto awc = project([t](double v) { return std::exp(-(v + t) * (v + t)); }, aw, rule);
      for (int n = 0; n <= N; ++n) {
        CHECK(std::abs(sw[static_cast<std::size_t>(n)] - exact_coeffs_sw(t, n)) < 1e-8);
        // <f, psi^n> = gamma~_n sqrt(pi) 2^n n! C_n
        const double pairing = aw.dual_gamma(n) * hermite_norm_sq(n) * awc[static_cast<std::size_t>(n)];
        CHECK(std::abs(pairing - exact_coeffs_aw(t, n)) < 1e-8);
      }
    }
  }

  TEST_CASE("exact coefficient trends") {
    for (int n = 0; n <= 6; ++n) CHECK(std::abs(exact_coeffs_sw(40.0, n)) < 1e-100);
    for (int n = 1; n <= 6; ++n) {
      double prev = 0.0;
      for (double t = 0.0; t <= 5.0; t += 0.25) {
        CHECK(std::abs(exact_coeffs_aw(t, n)) >= prev);
        prev = std::abs(exact_coeffs_aw(t, n));
      }
    }
  }
}
