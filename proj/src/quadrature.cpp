#include "hyperlab/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Nodes are kept while the distance to the nearer endpoint, as a fraction
// of the half-width, stays above this. The truncated tails are below 1e-70
// for every integrable power or log singularity used here.
constexpr double kMinComplement = 1e-150;

// Convergence is not tested below this level: the first coarse estimates
// can agree by accident.
constexpr int kMinCheckLevel = 3;

double truncation_point() {
  // 1 - tanh(u) = 2 / (1 + e^{2u}) ~ 2 e^{-2u}
  const double u = 0.5 * std::log(2.0 / kMinComplement);
  return std::asinh(u / kHalfPi);
}

class TanhSinhRule {
 public:
  TanhSinhRule(const Integrand& f, const QuadratureSpec& spec)
      : f_(f), lo_(spec.lo), hi_(spec.hi), half_(0.5 * (spec.hi - spec.lo)),
        t_max_(truncation_point()) {}

  // Adds nodes t = k h for odd k (all k at level 0) and returns the
  // trapezoid estimate of the integral.
  double refine(int level) {
    const double h = std::ldexp(1.0, -level);
    const int stride = level == 0 ? 1 : 2;
    if (level == 0) sum_ += eval_pair(0.0);
    for (int k = 1;; k += stride) {
      const double t = k * h;
      if (t > t_max_) break;
      sum_ += eval_pair(t);
    }
    return h * half_ * sum_;
  }

  long long evaluations() const { return evals_; }

 private:
  double eval_pair(double t) {
    const double u = kHalfPi * std::sinh(t);
    const double cu = std::cosh(u);
    const double weight = kHalfPi * std::cosh(t) / (cu * cu);
    // complement 1 - tanh(u), computed without cancellation
    const double comp = 1.0 / (std::exp(u) * cu);
    if (t == 0.0) return weight * sample(lo_ + half_, half_, half_);
    const double near = half_ * comp;
    const double far = 2.0 * half_ - near;
    double right = hi_ - near;
    double left = lo_ + near;
    if (right >= hi_) right = std::nextafter(hi_, lo_);
    if (left <= lo_) left = std::nextafter(lo_, hi_);
    return weight * (sample(right, far, near) + sample(left, near, far));
  }

  double sample(double x, double from_lo, double to_hi) {
    ++evals_;
    const double y = f_(QuadPoint{x, from_lo, to_hi});
    if (!std::isfinite(y)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "tanh_sinh: integrand is not finite at x = %.17g", x);
      throw IntegrandError(buf, x);
    }
    return y;
  }

  const Integrand& f_;
  double lo_;
  double hi_;
  double half_;
  double t_max_;
  double sum_ = 0.0;
  long long evals_ = 0;
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(lo < hi)) throw DomainError("tanh_sinh: requires lo < hi");
  if (!(target_tol > 0.0)) throw DomainError("tanh_sinh: target_tol must be positive");
  if (max_level < 0 || max_level > kMaxQuadLevel) {
    throw DomainError("tanh_sinh: max_level must lie in [0, 12]");
  }
}

EvalResult tanh_sinh(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  TanhSinhRule rule(f, spec);
  double prev = rule.refine(0);
  double diff = std::abs(prev);
  for (int level = 1; level <= spec.max_level; ++level) {
    const double cur = rule.refine(level);
    diff = std::abs(cur - prev);
    prev = cur;
    if (level >= kMinCheckLevel && diff <= spec.target_tol) {
      return EvalResult{cur, diff, rule.evaluations(), true, Method::quadrature};
    }
  }
  throw ConvergenceError("tanh_sinh: level cap " + std::to_string(spec.max_level) +
                             " reached before tolerance",
                         prev, diff);
}

EvalResult tanh_sinh(const PlainIntegrand& f, const QuadratureSpec& spec) {
  return tanh_sinh(Integrand([&f](const QuadPoint& p) { return f(p.x); }), spec);
}

std::vector<double> tanh_sinh_levels(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  TanhSinhRule rule(f, spec);
  std::vector<double> out;
  for (int level = 0; level <= spec.max_level; ++level) out.push_back(rule.refine(level));
  return out;
}

double central_diff(const std::function<double(double)>& f, double s, double h) {
  return (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h);
}

}  // namespace hyperlab
