#include "hyperlab/eval_result.hpp"

namespace hyperlab {

std::optional<Method> method_from_string(std::string_view s) noexcept {
  for (Method m : {Method::direct_series, Method::accelerated, Method::quadrature, Method::agm,
                   Method::closed_form}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

}  // namespace hyperlab
