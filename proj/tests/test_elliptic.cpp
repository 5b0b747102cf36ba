#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyperlab/elliptic.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/quadrature.hpp"
#include "hyperlab/sfcore.hpp"

using namespace hyperlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("agm fixed points") {
  CHECK(agm(1.0, 1.0) == 1.0);
  for (double x : {0.25, 2.0, 10.0}) CHECK(agm(x, x) == x);
  CHECK_THROWS_AS(agm(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(agm(1.0, -2.0), DomainError);
}

TEST_CASE("K and E at s = 0 and E at s = 1") {
  CHECK(ellipk(Modulus{0.0}) == doctest::Approx(kPi / 2).epsilon(1e-16));
  CHECK(ellipe(Modulus{0.0}) == doctest::Approx(kPi / 2).epsilon(1e-16));
  CHECK(ellipe(Modulus{1.0}) == 1.0);
  CHECK(ellipe(Modulus{-1.0}) == 1.0);
}

TEST_CASE("K rejects the logarithmic singularity") {
  CHECK_THROWS_AS(ellipk(Modulus{1.0}), DomainError);
  CHECK_THROWS_AS(ellipk(Modulus{1.0 - 1e-13}), DomainError);
  CHECK_NOTHROW(ellipk(Modulus{0.999999}));
  CHECK_THROWS_AS(ellipe(Modulus{1.01}), DomainError);
}

TEST_CASE("K(0.5) against the series and the defining integral") {
  const double k = ellipk(Modulus{0.5});
  CHECK(std::abs(kPi / (2.0 * agm(1.0, std::sqrt(0.75))) - kPi / 2 * pfq({{0.5, 0.5}, {1}, 0.25}, 1e-15).value) <= 1e-13);
  QuadratureSpec spec;
  spec.hi = kPi / 2;
  const double quad =
      tanh_sinh([](double t) { return 1.0 / std::sqrt(1.0 - 0.25 * std::sin(t) * std::sin(t)); }, spec)
          .value;
  CHECK(std::abs(k - quad) <= 1e-11);
}

TEST_CASE("cross-representation with 2F1 on the s-grid") {
  for (int i = 1; i <= 9; ++i) {
    const double s = i / 10.0;
    CAPTURE(s);
    CHECK(std::abs(ellipk(Modulus{s}) - kPi / 2 * pfq({{0.5, 0.5}, {1}, s * s}, 1e-15).value) <= 1e-12);
    CHECK(std::abs(ellipe(Modulus{s}) - kPi / 2 * pfq({{-0.5, 0.5}, {1}, s * s}, 1e-15).value) <= 1e-12);
  }
}

TEST_CASE("Legendre relation") {
  for (double s : {0.2, 0.5, 0.8}) {
    const double sp = std::sqrt(1 - s * s);
    const double k = ellipk(Modulus{s});
    const double kp = ellipk(Modulus{sp});
    const double e = ellipe(Modulus{s});
    const double ep = ellipe(Modulus{sp});
    CHECK(std::abs(e * kp + ep * k - k * kp - kPi / 2) <= 1e-11);
  }
}

TEST_CASE("relative accuracy up to s = 0.999 against the defining integrals") {
  for (double s : {0.9, 0.99, 0.999}) {
    QuadratureSpec spec;
    spec.hi = kPi / 2;
    spec.target_tol = 1e-13;
    spec.max_level = 12;
    const double s2 = s * s;
    const double kq = tanh_sinh([s2](double t) { return 1.0 / std::sqrt(1.0 - s2 * std::sin(t) * std::sin(t)); }, spec).value;
    const double eq = tanh_sinh([s2](double t) { return std::sqrt(1.0 - s2 * std::sin(t) * std::sin(t)); }, spec).value;
    CHECK(std::abs(ellipk(Modulus{s}) - kq) <= 1e-13 * kq);
    CHECK(std::abs(ellipe(Modulus{s}) - eq) <= 1e-13 * eq);
  }
}

TEST_CASE("monotonicity on [0, 0.99]") {
  double prev_k = 0.0;
  double prev_e = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double s = 0.99 * i / 99.0;
    const double k = ellipk(Modulus{s});
    const double e = ellipe(Modulus{s});
    CHECK(k >= prev_k);
    CHECK(e <= prev_e);
    prev_k = k;
    prev_e = e;
  }
}

TEST_CASE("complement forms agree with the modulus forms") {
  for (double s : {0.1, 0.5, 0.9}) {
    const double sp = std::sqrt((1 - s) * (1 + s));
    CHECK(ellipk_complement(sp) == doctest::Approx(ellipk(Modulus{s})).epsilon(1e-15));
    CHECK(ellipe_complement(sp) == doctest::Approx(ellipe(Modulus{s})).epsilon(1e-15));
  }
  CHECK(ellipe_complement(0.0) == 1.0);
  CHECK_THROWS_AS(ellipk_complement(0.0), DomainError);
  // K grows like log(4/s') as s' -> 0
  CHECK(ellipk_complement(1e-100) == doctest::Approx(std::log(4e100)).epsilon(1e-14));
}

TEST_CASE("eval variants carry the agm tag") {
  const EvalResult r = ellipk_eval(Modulus{0.5});
  CHECK(r.method == Method::agm);
  CHECK(r.effort > 0);
  CHECK(r.err_estimate <= 1e-13);
}
