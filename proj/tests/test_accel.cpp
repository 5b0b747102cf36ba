#include <doctest.h>

#include <cmath>
#include <numbers>

#include <quadmath.h>

#include "hyperlab/accel.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/identities.hpp"
#include "hyperlab/sfcore.hpp"

using namespace hyperlab;

namespace {

constexpr double kG = 0.915965594177219015054603514932;
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

TermStream catalan_terms() {
  return indexed_stream(
      [](std::int64_t n) {
        const wide d = 2 * static_cast<wide>(n) + 1;
        return (n % 2 == 0 ? wide{1} : wide{-1}) / (d * d);
      },
      StreamKind::alternating);
}

TermStream pfq_terms(PFQParams p) {
  TermStream ts;
  ts.kind = StreamKind::monotone_positive;
  ts.next = [p, t = wide{1}, k = 0u, started = false]() mutable {
    if (started) {
      wide r = static_cast<wide>(p.argument) / (k + 1);
      for (double a : p.upper) r *= a + static_cast<wide>(k);
      for (double b : p.lower) r /= b + static_cast<wide>(k);
      t *= r;
      ++k;
    }
    started = true;
    return t;
  };
  return ts;
}

struct Known {
  const char* name;
  TermStream (*make)();
  double value;
};

}  // namespace

TEST_CASE("geometric series") {
  auto ts = indexed_stream([](std::int64_t n) { return powq(0.5Q, n); },
                           StreamKind::monotone_positive);
  const EvalResult w = wynn_epsilon(ts, 1e-14);
  CHECK(std::abs(w.value - 2.0) <= 1e-14);
  CHECK(w.effort <= 20);
  const EvalResult l = levin_u(ts, 1e-14);
  CHECK(std::abs(l.value - 2.0) <= 1e-14);
}

TEST_CASE("Catalan's alternating series by epsilon") {
  const EvalResult r = wynn_epsilon(catalan_terms(), 1e-12);
  CHECK(std::abs(r.value - 0.915965594177) <= 5e-13);
  CHECK(std::abs(r.value - kG) <= 1e-12);
  CHECK(r.effort <= 60);
  CHECK(r.converged);
  CHECK(r.method == Method::accelerated);
}

TEST_CASE("alternating log 2 series by Levin u") {
  auto ts = indexed_stream(
      [](std::int64_t n) { return (n % 2 == 0 ? wide{1} : wide{-1}) / (n + 1); },
      StreamKind::alternating);
  const EvalResult r = levin_u(ts, 1e-12);
  CHECK(std::abs(r.value - kLn2) <= 1e-12);
  CHECK(r.effort <= 40);
}

TEST_CASE("Ramanujan 3F2 stream by both accelerators") {
  const PFQParams p{{0.5, 0.5, 0.5}, {1.0, 1.5}, 1.0};
  const double expect = 4.0 * kG / kPi;
  CHECK(std::abs(levin_u(pfq_terms(p), 1e-13).value - expect) <= 1e-12);
  CHECK(std::abs(wynn_epsilon(pfq_terms(p), 1e-10).value - expect) <= 1e-9);
}

TEST_CASE("4F3 and Campbell streams by Levin u") {
  const double adamchik = 16.0 * kLn2 - 32.0 * kG / kPi;
  CHECK(std::abs(levin_u(pfq_terms({{1, 1, 1.5, 1.5}, {2, 2, 2}, 1.0}), 1e-13).value - adamchik) <=
        1e-12);
  const double campbell = 16.0 * kLn2 + 48.0 / kPi - 32.0 * kG / kPi - 16.0;
  CHECK(std::abs(levin_u(pfq_terms({{0.5, 0.5, 1, 1}, {2, 2, 2}, 1.0}), 1e-13).value - campbell) <=
        1e-12);
}

TEST_CASE("closed-form suite of classical series") {
  const Known suite[] = {
      {"geometric 1/3", [] { return indexed_stream([](std::int64_t n) { return powq(1.0Q / 3, n); }, StreamKind::monotone_positive); }, 1.5},
      {"log 2", [] { return indexed_stream([](std::int64_t n) { return (n % 2 == 0 ? wide{1} : wide{-1}) / (n + 1); }, StreamKind::alternating); }, kLn2},
      {"Leibniz pi/4", [] { return indexed_stream([](std::int64_t n) { return (n % 2 == 0 ? wide{1} : wide{-1}) / (2 * n + 1); }, StreamKind::alternating); }, kPi / 4},
      {"Catalan", catalan_terms, kG},
      {"Basel", [] { return indexed_stream([](std::int64_t n) { return 1 / ((n + wide{1}) * (n + 1)); }, StreamKind::monotone_positive); }, kPi * kPi / 6},
      {"alternating squares", [] { return indexed_stream([](std::int64_t n) { return (n % 2 == 0 ? wide{1} : wide{-1}) / ((n + wide{1}) * (n + 1)); }, StreamKind::alternating); }, kPi * kPi / 12},
  };
  for (const Known& k : suite) {
    CAPTURE(k.name);
    const EvalResult r = accelerate(k.make(), 1e-12);
    CHECK(std::abs(r.value - k.value) <= 1e-11);
  }
}

TEST_CASE("alternating bracketing: the limit lies between consecutive partial sums") {
  const EvalResult r = wynn_epsilon(catalan_terms(), 1e-13);
  wide s = 0;
  for (std::int64_t n = 0; n < 50; ++n) {
    const wide d = 2 * static_cast<wide>(n) + 1;
    const wide next = s + (n % 2 == 0 ? wide{1} : wide{-1}) / (d * d);
    if (n > 0) {
      const double lo = static_cast<double>(std::min(s, next));
      const double hi = static_cast<double>(std::max(s, next));
      CHECK(r.value >= lo);
      CHECK(r.value <= hi);
    }
    s = next;
  }
}

TEST_CASE("Wynn and Levin agree on every unit-argument pfq stream in the registry") {
  // Within the 4000-term cap the sampled epsilon table settles to about
  // 3e-10 per step on the slowest stream (terms ~ n^-3/2), hence 1e-9.
  const double tol = 1e-9;
  int streams = 0;
  for (const Identity& idn : registry()) {
    for (const EvaluatorSpec* side : {&idn.lhs, &idn.rhs}) {
      if (side->route != "pfq" || side->args.back() != 1.0) continue;
      const auto p = static_cast<std::size_t>(side->args[0]);
      const auto q = static_cast<std::size_t>(side->args[1]);
      PFQParams params;
      params.upper.assign(side->args.begin() + 2, side->args.begin() + 2 + p);
      params.lower.assign(side->args.begin() + 2 + p, side->args.begin() + 2 + p + q);
      params.argument = 1.0;
      if (params.terminates()) continue;
      CAPTURE(idn.id);
      const EvalResult w = wynn_epsilon(pfq_terms(params), tol);
      const EvalResult l = levin_u(pfq_terms(params), tol);
      CHECK(std::abs(w.value - l.value) <= 10 * tol);
      ++streams;
    }
  }
  CHECK(streams >= 10);
}

TEST_CASE("epsilon does not settle early on a logarithmic stream") {
  // terms ~ n^-3; the unsampled table stabilizes about 1e-6 off here
  const double pow1 = 8 + 32 * kLn2 - 64 * kG / kPi - 32 / kPi;
  const PFQParams p{{1, 1, 1.5, 1.5}, {2, 2, 3}, 1.0};
  const EvalResult r = wynn_epsilon(pfq_terms(p), 1e-9);
  CHECK(std::abs(r.value - pow1) <= 1e-8);
  CHECK(r.effort > 200);
}

TEST_CASE("cap and breakdown errors") {
  auto harmonic = [] {
    return indexed_stream([](std::int64_t n) { return 1 / (n + wide{1}); },
                          StreamKind::monotone_positive);
  };
  CHECK_THROWS_AS(levin_u(harmonic(), 1e-12, 50), ConvergenceError);
  CHECK_THROWS_AS(wynn_epsilon(catalan_terms(), 1e-12, 0), DomainError);
  CHECK_THROWS_AS(wynn_epsilon(catalan_terms(), 1e-12, 4001), DomainError);
  // A stream that is exactly constant after two terms makes every table
  // difference vanish.
  auto flat = indexed_stream([](std::int64_t n) { return n == 0 ? wide{1} : wide{0}; },
                             StreamKind::alternating);
  try {
    const EvalResult r = wynn_epsilon(flat, 1e-12);
    CHECK(r.value == 1.0);
  } catch (const BreakdownError& e) {
    CHECK(e.last_value() == doctest::Approx(1.0));
  }
  auto nan_stream = indexed_stream([](std::int64_t) { return wide{0} / wide{0}; },
                                   StreamKind::alternating);
  CHECK_THROWS_AS(wynn_epsilon(nan_stream, 1e-12), DomainError);
}
