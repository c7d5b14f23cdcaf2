#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hermvp/diagnostics.hpp"
#include "hermvp/error.hpp"
#include "hermvp/quadrature.hpp"
#include "oracles.hpp"

using namespace hermvp;

namespace {

constexpr double kLx = 4 * std::numbers::pi;

double grid_h(const CoefficientField& s) {
  const int G = 4 * s.Mx() + 3;
  const auto rule = gauss_hermite(s.N() + 4);
  std::vector<std::vector<double>> cols;
  for (int n = 0; n <= s.N(); ++n) cols.push_back(oracle::naive_to_physical(s.column(n), G));
  double total = 0.0;
  for (int j = 0; j < G; ++j)
    for (int q = 0; q < rule.Q(); ++q) {
      const double v = rule.nodes[static_cast<std::size_t>(q)];
      double h = 0.0;
      for (int n = 0; n <= s.N(); ++n) h += cols[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] * hermite_eval(n, v);
      total += rule.weights[static_cast<std::size_t>(q)] * h * h;
    }
  return total * s.Lx() / G;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("moment overlaps") {
    const auto I2 = moment_overlaps(2, 4);
    CHECK(I2[0] == doctest::Approx(oracle::kSqrtPi / 2));
    CHECK(I2[1] == 0.0);
    CHECK(I2[2] == doctest::Approx(2 * oracle::kSqrtPi));
    CHECK(I2[3] == 0.0);
    const auto rule = gauss_hermite(20);
    for (int m = 0; m <= 8; ++m) {
      const auto I = moment_overlaps(m, 10);
      for (int n = 0; n <= 10; ++n) {
        double q = 0.0;
        for (int i = 0; i < rule.Q(); ++i)
          q += rule.weights[static_cast<std::size_t>(i)] * std::pow(rule.nodes[static_cast<std::size_t>(i)], m) *
               hermite_eval(n, rule.nodes[static_cast<std::size_t>(i)]);
        // Cauchy-Schwarz scale of the integral
        const double scale = std::sqrt(hermite_norm_sq(n) * std::tgamma(m + 0.5));
        CHECK(std::abs(I[static_cast<std::size_t>(n)] - q) < 1e-13 * scale);
      }
    }
  }

  TEST_CASE("moment examples") {
    const HermiteBasis b(BasisKind::AW, 3);
    CHECK(moment(CoefficientVector(b, {1, 0, 0, 0}), 0) == doctest::Approx(oracle::kSqrtPi));
    CHECK(moment(CoefficientVector(b, {1, 0, 0, 0}), 1) == 0.0);
    CHECK(moment(CoefficientVector(b, {0, 1, 0, 0}), 1) == doctest::Approx(oracle::kSqrtPi));
    CHECK(moment(CoefficientVector(b, {0, 1, 0, 0}).to_normalized(), 1) == doctest::Approx(oracle::kSqrtPi));
    try {
      moment(CoefficientVector(HermiteBasis(BasisKind::SW, 3)), 0);
      FAIL("expected unsupported basis");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedBasis);
    }
    CHECK_THROWS_AS(moment(CoefficientVector(b), 4), Error);
  }

  TEST_CASE("moments are linear and match quadrature") {
    std::mt19937_64 rng(6);
    const HermiteBasis b(BasisKind::AW, 7);
    for (int i = 0; i < 10; ++i) {
      const auto x = oracle::random_vector(rng, 8), y = oracle::random_vector(rng, 8);
      std::vector<double> z(8);
      for (std::size_t j = 0; j < 8; ++j) z[j] = 2 * x[j] - 3 * y[j];
      for (int m = 0; m <= 7; ++m) {
        const double mx = moment(CoefficientVector(b, x), m), my = moment(CoefficientVector(b, y), m);
        CHECK(moment(CoefficientVector(b, z), m) == doctest::Approx(2 * mx - 3 * my).epsilon(1e-12));
        CHECK(mx == doctest::Approx(oracle::moment_quadrature(x, m)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("field moments") {
    const auto eq = CoefficientField::equilibrium(4, 2, kLx);
    CHECK(moment(eq, 0) == doctest::Approx(kLx));
    CHECK(moment(eq, 1) == 0.0);
    CHECK(moment(eq, 2) == doctest::Approx(kLx / 2));
  }

  TEST_CASE("weighted H") {
    CHECK(hermite_weighted_h(CoefficientField(4, 2, kLx)) == 0.0);
    CoefficientField a(4, 2, kLx), b(4, 2, kLx);
    a(0, 0) = 0.7;
    CHECK(hermite_weighted_h(a) == doctest::Approx(0.49 * oracle::kSqrtPi * kLx));
    b(1, 3) = cplx(0.2, 0.1);
    b(-1, 3) = std::conj(b(1, 3));
    CoefficientField ab = a;
    ab(1, 3) = b(1, 3);
    ab(-1, 3) = b(-1, 3);
    CHECK(hermite_weighted_h(ab) == doctest::Approx(hermite_weighted_h(a) + hermite_weighted_h(b)));
    std::mt19937_64 rng(15);
    for (int i = 0; i < 10; ++i) {
      const int N = 1 + static_cast<int>(rng() % 10), Mx = static_cast<int>(rng() % 9);
      const auto s = oracle::random_state(rng, N, Mx, kLx, 0.3);
      const double g = grid_h(s);
      CHECK(std::abs(hermite_weighted_h(s) - g) < 1e-8 * g);
    }
  }

  TEST_CASE("field energy") {
    ElectricField E(2);
    E[1] = cplx(0.1, 0.2);
    E[-1] = std::conj(E[1]);
    // E(x) = 2 Re(E_1 e^{i k x}); (1/2) \int E^2 = L |E_1|^2
    CHECK(field_energy(E, kLx) == doctest::Approx(kLx * 0.05));
  }

  TEST_CASE("record and CSV") {
    const auto s = CoefficientField::landau(6, 2, kLx, 0.1);
    const auto E = poisson_solve(s).E;
    auto r = measure(s, E, 3, 0.75);
    CHECK(r.mass == doctest::Approx(kLx));
    CHECK(r.gauss_residual < 1e-15);
    CHECK(r.M_field > 0.0);
    r.picard_iterations = 4;
    DiagnosticsSink sink;
    sink.push(r);
    r.step = 4;
    r.mass += 1e-3;
    sink.push(r);
    std::ostringstream os;
    sink.write_csv(os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# hermvp-diagnostics schema_version=1");
    std::getline(in, line);
    CHECK(line.rfind("step,t,mass,momentum,moment2,field_energy,gauss_residual", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("3,0.75,", 0) == 0);
    const auto j = nlohmann::json::parse(sink.summary_json());
    CHECK(j["records"] == 2);
    CHECK(j["quantities"]["mass"]["drift"].get<double>() == doctest::Approx(1e-3));
  }
}
