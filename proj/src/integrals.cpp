#include "hyperlab/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hyperlab/accel.hpp"
#include "hyperlab/elliptic.hpp"
#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// Below this sin(theta) the 0/0 quotients in A and B switch to their
// two-term Taylor expansions.
constexpr double kSmallX = 1e-6;

struct Angle {
  double sin;
  double cos;
};

// sin and cos of theta taken from the nearer endpoint of [0, pi/2], so
// both stay accurate where they are small.
Angle angle_of(const QuadPoint& p) {
  if (p.from_lo <= p.to_hi) return {std::sin(p.from_lo), std::cos(p.from_lo)};
  return {std::cos(p.to_hi), std::sin(p.to_hi)};
}

// 1 - s^2 sin^2(theta) without cancellation near s = 1, theta = pi/2.
double radicand(double s, const Angle& a) {
  const double as = std::abs(s);
  return (1.0 - as) * (1.0 + as) + s * s * a.cos * a.cos;
}

void check_param(double s, const char* who) {
  if (!(std::abs(s) <= 1.0)) {
    throw DomainError(std::string(who) + ": requires |s| <= 1, got " + std::to_string(s));
  }
}

EvalResult over_quarter_circle(const Integrand& f, const IntegralOptions& opts) {
  QuadratureSpec spec;
  spec.lo = 0.0;
  spec.hi = kPi / 2.0;
  spec.target_tol = opts.tol;
  spec.max_level = opts.max_level;
  return tanh_sinh(f, spec);
}

EvalResult over_unit_interval(const Integrand& f, const IntegralOptions& opts) {
  QuadratureSpec spec;
  spec.target_tol = opts.tol;
  spec.max_level = opts.max_level;
  return tanh_sinh(f, spec);
}

EvalResult beta_series(const IntegralOptions& opts) {
  auto ts = indexed_stream(
      [](std::int64_t n) {
        const wide d = 2 * static_cast<wide>(n) + 1;
        return (n % 2 == 0 ? wide{1} : wide{-1}) / (d * d);
      },
      StreamKind::alternating);
  return wynn_epsilon(std::move(ts), std::min(opts.tol, 1e-13));
}

}  // namespace

EvalResult integral_A_eval(double s, const IntegralOptions& opts) {
  check_param(s, "integral_A");
  if (s == 0.0) return closed_form(0.0);
  return over_quarter_circle(
      [s](const QuadPoint& p) {
        const Angle a = angle_of(p);
        const double x = a.sin;
        if (x < kSmallX) return s + s * s * s * x * x / 6.0;
        return std::atan2(s * x, std::sqrt(radicand(s, a))) / x;
      },
      opts);
}

EvalResult integral_B_eval(double s, const IntegralOptions& opts) {
  check_param(s, "integral_B");
  if (s == 0.0) return closed_form(0.0);
  return over_quarter_circle(
      [s](const QuadPoint& p) {
        const Angle a = angle_of(p);
        const double x = a.sin;
        if (x < kSmallX) return s - s * s * s * x * x / 6.0;
        const double root = std::sqrt(radicand(s, a));
        return (std::atan2(s * x, root) + s * x * root) / (2.0 * x);
      },
      opts);
}

EvalResult integral_C_eval(double s, const IntegralOptions& opts) {
  check_param(s, "integral_C");
  if (s == 0.0) return closed_form(kPi / 2.0 * kLn2);
  return over_quarter_circle(
      [s](const QuadPoint& p) { return std::log1p(std::sqrt(radicand(s, angle_of(p)))); },
      opts);
}

EvalResult integral_D_eval(double s, const IntegralOptions& opts) {
  check_param(s, "integral_D");
  if (s == 0.0) throw DomainError("integral_D: diverges at s = 0");
  // 1 - sqrt(q) = s^2 sin^2 / (1 + sqrt(q)), so the log never sees the
  // cancellation near theta = 0.
  return over_quarter_circle(
      [s](const QuadPoint& p) {
        const Angle a = angle_of(p);
        return 2.0 * std::log(std::abs(s) * a.sin) - std::log1p(std::sqrt(radicand(s, a)));
      },
      opts);
}

double integral_A(double s) { return integral_A_eval(s).value; }
double integral_B(double s) { return integral_B_eval(s).value; }
double integral_C(double s) { return integral_C_eval(s).value; }
double integral_D(double s) { return integral_D_eval(s).value; }

std::string_view to_string(CatalanMethod m) noexcept {
  switch (m) {
    case CatalanMethod::beta_series: return "beta_series";
    case CatalanMethod::k_integral: return "k_integral";
    case CatalanMethod::e_integral: return "e_integral";
    case CatalanMethod::arctan_integral: return "arctan_integral";
    case CatalanMethod::arcsin_integral: return "arcsin_integral";
  }
  return "unknown";
}

std::optional<CatalanMethod> catalan_method_from_string(std::string_view s) noexcept {
  for (CatalanMethod m : kCatalanMethods) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

EvalResult catalan_eval(CatalanMethod m, const IntegralOptions& opts) {
  switch (m) {
    case CatalanMethod::beta_series:
      return beta_series(opts);
    case CatalanMethod::k_integral:
      // The modulus s' = sqrt((1-s)(1+s)) comes from the distance to s = 1,
      // which keeps the log singularity of K resolved.
      return over_unit_interval(
          [](const QuadPoint& p) {
            return 0.5 * ellipk_complement(std::sqrt(p.to_hi * (1.0 + p.x)));
          },
          opts);
    case CatalanMethod::e_integral: {
      EvalResult r = over_unit_interval(
          [](const QuadPoint& p) { return ellipe_complement(std::sqrt(p.to_hi * (1.0 + p.x))); },
          opts);
      r.value -= 0.5;
      return r;
    }
    case CatalanMethod::arctan_integral:
      return over_unit_interval(
          [](const QuadPoint& p) {
            const double x = p.x;
            if (x < kSmallX) return 1.0 - x * x / 3.0;
            return std::atan(x) / x;
          },
          opts);
    case CatalanMethod::arcsin_integral: {
      EvalResult r = integral_A_eval(1.0, opts);
      r.value *= 0.5;
      r.err_estimate *= 0.5;
      return r;
    }
  }
  throw DomainError("catalan: unknown method");
}

double catalan(CatalanMethod m) { return catalan_eval(m).value; }

}  // namespace hyperlab
