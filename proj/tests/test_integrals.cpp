#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyperlab/elliptic.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/integrals.hpp"
#include "hyperlab/quadrature.hpp"
#include "hyperlab/sfcore.hpp"

using namespace hyperlab;

namespace {

constexpr double kG = 0.915965594177219015054603514932;
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// Oracles: the series forms, summed directly at tight tolerance.
double series_A(double s) { return kPi / 2 * s * pfq({{0.5, 0.5, 0.5}, {1, 1.5}, s * s}, 1e-16).value; }
double series_B(double s) { return kPi / 2 * s * pfq({{-0.5, 0.5, 0.5}, {1, 1.5}, s * s}, 1e-16).value; }
double series_C(double s) {
  return kPi / 2 * kLn2 - kPi / 16 * s * s * pfq({{1, 1, 1.5, 1.5}, {2, 2, 2}, s * s}, 1e-16).value;
}

}  // namespace

TEST_CASE("values at the endpoints") {
  CHECK(integral_A(0.0) == 0.0);
  CHECK(integral_B(0.0) == 0.0);
  CHECK(integral_C(0.0) == doctest::Approx(kPi / 2 * kLn2).epsilon(1e-15));
  CHECK(std::abs(integral_A(1.0) - 2 * kG) <= 1e-11);
  CHECK(std::abs(integral_B(1.0) - (0.5 + kG)) <= 1e-11);
  CHECK(std::abs(integral_C(1.0) - (2 * kG - kPi / 2 * kLn2)) <= 1e-11);
  CHECK(std::abs(integral_D(1.0) - (-kPi / 2 * kLn2 - 2 * kG)) <= 1e-11);
  CHECK_THROWS_AS(integral_D(0.0), DomainError);
  CHECK_THROWS_AS(integral_A(1.5), DomainError);
}

TEST_CASE("odd symmetry of A and B, evenness of C") {
  for (double s : {0.2, 0.6, 0.95}) {
    CHECK(integral_A(-s) == doctest::Approx(-integral_A(s)).epsilon(1e-14));
    CHECK(integral_B(-s) == doctest::Approx(-integral_B(s)).epsilon(1e-14));
    CHECK(integral_C(-s) == doctest::Approx(integral_C(s)).epsilon(1e-14));
  }
}

TEST_CASE("parametric sweeps against the series") {
  for (int i = 1; i <= 9; ++i) {
    const double s = i / 10.0;
    CAPTURE(s);
    CHECK(std::abs(integral_A(s) - series_A(s)) <= 1e-12);
    CHECK(std::abs(integral_B(s) - series_B(s)) <= 1e-12);
    CHECK(std::abs(integral_C(s) - series_C(s)) <= 1e-12);
  }
}

TEST_CASE("C + D = pi log(s/2)") {
  for (double s : {0.05, 0.2, 0.5, 0.8, 0.99, 1.0}) {
    CHECK(std::abs(integral_C(s) + integral_D(s) - kPi * std::log(s / 2)) <= 1e-10);
  }
}

TEST_CASE("derivatives under the integral sign") {
  for (double s : {0.3, 0.5, 0.7}) {
    CAPTURE(s);
    const double k = ellipk(Modulus{s});
    CHECK(std::abs(central_diff(integral_A, s) - k) <= 1e-6);
    CHECK(std::abs(central_diff(integral_B, s) - ellipe(Modulus{s})) <= 1e-6);
    CHECK(std::abs(central_diff(integral_C, s) - (kPi / 2 - k) / s) <= 1e-6);
    CHECK(std::abs(central_diff(integral_D, s) - (kPi / 2 + k) / s) <= 1e-6);
  }
}

TEST_CASE("the five routes to G agree pairwise") {
  double v[5];
  for (int i = 0; i < 5; ++i) {
    const EvalResult r = catalan_eval(kCatalanMethods[i]);
    CHECK(r.converged);
    v[i] = r.value;
    CHECK(std::abs(v[i] - 0.915965594177) <= 5e-13);
  }
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) CHECK(std::abs(v[i] - v[j]) <= 1e-11);
  CHECK(catalan_eval(CatalanMethod::beta_series).method == Method::accelerated);
  CHECK(catalan_eval(CatalanMethod::k_integral).method == Method::quadrature);
}

TEST_CASE("method names") {
  for (CatalanMethod m : kCatalanMethods) {
    CHECK(catalan_method_from_string(to_string(m)) == m);
  }
  CHECK_FALSE(catalan_method_from_string("bogus").has_value());
}

TEST_CASE("log(1 + cos t) integral equals C(1)") {
  QuadratureSpec spec;
  spec.hi = kPi / 2;
  // 1 + cos t written through the distance to pi/2 keeps it exact
  const Integrand f = [](const QuadPoint& p) { return std::log1p(std::sin(p.to_hi)); };
  CHECK(std::abs(tanh_sinh(f, spec).value - integral_C(1.0)) <= 1e-11);
}

TEST_CASE("tighter options still converge") {
  IntegralOptions o;
  o.tol = 1e-14;
  o.max_level = 12;
  CHECK(std::abs(integral_A_eval(0.5, o).value - series_A(0.5)) <= 1e-14);
}
