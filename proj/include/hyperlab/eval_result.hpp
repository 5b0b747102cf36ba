#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace hyperlab {

enum class Method { direct_series, accelerated, quadrature, agm, closed_form };

constexpr std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::direct_series: return "direct-series";
    case Method::accelerated: return "accelerated";
    case Method::quadrature: return "quadrature";
    case Method::agm: return "agm";
    case Method::closed_form: return "closed-form";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) noexcept;

/// Outcome of a numerical evaluation.
///
/// `converged` implies `err_estimate` is no larger than the tolerance the
/// caller asked for. `effort` counts series terms or integrand evaluations
/// and is zero only for closed-form results.
struct EvalResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::int64_t effort = 0;
  bool converged = false;
  Method method = Method::closed_form;
};

inline EvalResult closed_form(double v) {
  return EvalResult{v, 0.0, 0, true, Method::closed_form};
}

}  // namespace hyperlab
