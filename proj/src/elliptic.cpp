#include "hyperlab/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

constexpr double kAgmRelTol = 1e-15;
constexpr int kAgmMaxIter = 64;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct AgmRun {
  double mean;
  int iterations;
};

AgmRun agm_run(double a, double b) {
  int it = 0;
  while (std::abs(a - b) > kAgmRelTol * a && it < kAgmMaxIter) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    ++it;
  }
  return {a, it};
}

// E = K (1 - sum_{n>=0} 2^{n-1} c_n^2), c_0 = s, c_{n+1} = (a_n - b_n)/2.
// The n = 0 term is folded in as (1 + s'^2)/2 to avoid forming s^2.
EvalResult ellipe_agm(double s_prime) {
  if (s_prime == 0.0) return EvalResult{1.0, 0.0, 1, true, Method::agm};
  double a = 1.0;
  double b = s_prime;
  double bracket = 0.5 * (1.0 + s_prime * s_prime);
  double weight = 1.0;
  int it = 0;
  while (std::abs(a - b) > kAgmRelTol * a && it < kAgmMaxIter) {
    const double c = 0.5 * (a - b);
    bracket -= weight * c * c;
    weight *= 2.0;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    ++it;
  }
  const double k = std::numbers::pi / (2.0 * a);
  const double e = k * bracket;
  return EvalResult{e, 8.0 * kEps * k, it + 1, true, Method::agm};
}

EvalResult ellipk_agm(double s_prime) {
  const AgmRun r = agm_run(1.0, s_prime);
  const double k = std::numbers::pi / (2.0 * r.mean);
  return EvalResult{k, 4.0 * kEps * k, r.iterations + 1, true, Method::agm};
}

double complement_of(double s) {
  const double as = std::abs(s);
  return std::sqrt((1.0 - as) * (1.0 + as));
}

}  // namespace

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("agm: arguments must be positive");
  }
  return agm_run(a, b).mean;
}

EvalResult ellipk_eval(Modulus m) {
  if (!(std::abs(m.s) < 1.0 - kEllipKEdge)) {
    throw DomainError("ellipk: |s| must be below 1 - 1e-12 (K diverges at s = 1), got " +
                      std::to_string(m.s));
  }
  return ellipk_agm(complement_of(m.s));
}

EvalResult ellipe_eval(Modulus m) {
  if (!(std::abs(m.s) <= 1.0)) {
    throw DomainError("ellipe: |s| must not exceed 1");
  }
  if (std::abs(m.s) == 1.0) return EvalResult{1.0, 0.0, 1, true, Method::agm};
  return ellipe_agm(complement_of(m.s));
}

double ellipk(Modulus m) { return ellipk_eval(m).value; }
double ellipe(Modulus m) { return ellipe_eval(m).value; }

double ellipk_complement(double s_prime) {
  if (!(s_prime > 0.0) || s_prime > 1.0) {
    throw DomainError("ellipk_complement: s' must lie in (0, 1]");
  }
  return ellipk_agm(s_prime).value;
}

double ellipe_complement(double s_prime) {
  if (!(s_prime >= 0.0) || s_prime > 1.0) {
    throw DomainError("ellipe_complement: s' must lie in [0, 1]");
  }
  return ellipe_agm(s_prime).value;
}

}  // namespace hyperlab
