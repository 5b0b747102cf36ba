#pragma once

#include <optional>
#include <string_view>

#include "hyperlab/eval_result.hpp"
#include "hyperlab/quadrature.hpp"

namespace hyperlab {

/// Quadrature knobs shared by the parametric integrals.
struct IntegralOptions {
  double tol = 1e-12;
  int max_level = kDefaultQuadLevel;
};

// The four parametric integrals over x in [0, 1], each evaluated after
// x = sin(theta) on [0, pi/2]. All accept |s| <= 1; C(0) and A(0), B(0)
// come from closed forms.
//
//   A(s) = int arcsin(sx) / (x sqrt(1-x^2))
//   B(s) = int (arcsin(sx) + sx sqrt(1-s^2x^2)) / (2x sqrt(1-x^2))
//   C(s) = int log(1 + sqrt(1-s^2x^2)) / sqrt(1-x^2)
//   D(s) = int log(1 - sqrt(1-s^2x^2)) / sqrt(1-x^2)     (s != 0)

EvalResult integral_A_eval(double s, const IntegralOptions& opts = {});
EvalResult integral_B_eval(double s, const IntegralOptions& opts = {});
EvalResult integral_C_eval(double s, const IntegralOptions& opts = {});
EvalResult integral_D_eval(double s, const IntegralOptions& opts = {});

double integral_A(double s);
double integral_B(double s);
double integral_C(double s);
double integral_D(double s);

enum class CatalanMethod { beta_series, k_integral, e_integral, arctan_integral, arcsin_integral };

inline constexpr CatalanMethod kCatalanMethods[] = {
    CatalanMethod::beta_series, CatalanMethod::k_integral, CatalanMethod::e_integral,
    CatalanMethod::arctan_integral, CatalanMethod::arcsin_integral};

std::string_view to_string(CatalanMethod m) noexcept;
std::optional<CatalanMethod> catalan_method_from_string(std::string_view s) noexcept;

/// Catalan's constant by one of five independent routes:
///   beta_series      sum (-1)^n / (2n+1)^2, epsilon-accelerated
///   k_integral       (1/2) int_0^1 K(s) ds
///   e_integral       int_0^1 E(s) ds - 1/2
///   arctan_integral  int_0^1 arctan(x)/x dx
///   arcsin_integral  A(1) / 2
EvalResult catalan_eval(CatalanMethod m, const IntegralOptions& opts = {});
double catalan(CatalanMethod m = CatalanMethod::beta_series);

}  // namespace hyperlab
