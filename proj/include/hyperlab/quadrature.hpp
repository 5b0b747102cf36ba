#pragma once

#include <functional>
#include <vector>

#include "hyperlab/eval_result.hpp"

namespace hyperlab {

inline constexpr double kDefaultQuadTol = 1e-11;
inline constexpr int kDefaultQuadLevel = 10;
inline constexpr int kMaxQuadLevel = 12;
inline constexpr double kDefaultFdStep = 1e-3;

/// An abscissa together with its distances to both ends of the interval.
/// Near an endpoint the distance is accurate even when `x` itself has
/// rounded onto the endpoint's neighbour.
struct QuadPoint {
  double x;
  double from_lo;
  double to_hi;
};

struct QuadratureSpec {
  double lo = 0.0;
  double hi = 1.0;
  double target_tol = kDefaultQuadTol;
  int max_level = kDefaultQuadLevel;
  /// Informational; tanh-sinh never samples the endpoints either way.
  bool singular_lo = false;
  bool singular_hi = false;

  void validate() const;
};

using Integrand = std::function<double(const QuadPoint&)>;
using PlainIntegrand = std::function<double(double)>;

/// Double-exponential quadrature on a finite interval.
///
/// Halves the step each level and stops once two successive levels agree
/// to `target_tol`. Throws ConvergenceError at `max_level` and
/// IntegrandError if the integrand produces NaN/Inf.
EvalResult tanh_sinh(const Integrand& f, const QuadratureSpec& spec);
EvalResult tanh_sinh(const PlainIntegrand& f, const QuadratureSpec& spec);

/// Estimates at levels 0..max_level without early exit.
std::vector<double> tanh_sinh_levels(const Integrand& f, const QuadratureSpec& spec);

/// Five-point central difference, O(h^4).
double central_diff(const std::function<double(double)>& f, double s, double h = kDefaultFdStep);

}  // namespace hyperlab
