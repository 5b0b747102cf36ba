#pragma once

#include <cstdint>
#include <vector>

#include "hyperlab/eval_result.hpp"

namespace hyperlab {

inline constexpr double kDefaultTol = 1e-12;

/// Direct summation is used for |x| <= kDirectSeriesRadius; closer to the
/// unit circle the term ratio tends to 1 and the series is handed to the
/// accelerators.
inline constexpr double kDirectSeriesRadius = 0.95;
inline constexpr std::int64_t kDirectSeriesCap = 100000;

/// Natural log of the gamma function for x > 0.
double lgamma(double x);

/// Rising factorial a(a+1)...(a+k-1); (a)_0 = 1.
double pochhammer(double a, unsigned k);

/// binom(2n, n). Exact integer arithmetic for n <= 30, log-space above.
double central_binomial(unsigned n);

/// Parameters of pFq(a_1..a_p; b_1..b_q; x).
struct PFQParams {
  std::vector<double> upper;
  std::vector<double> lower;
  double argument = 0.0;

  /// Sum of lower minus sum of upper parameters.
  double unit_margin() const;
  /// Throws DomainError if a lower parameter is a non-positive integer or
  /// p > q + 1.
  void validate() const;
  /// True if some upper parameter is a non-positive integer, i.e. the
  /// series is a polynomial.
  bool terminates() const;
};

bool pfq_converges_at_one(const PFQParams& p);

/// Ratio t_{k+1}/t_k of consecutive pFq terms.
double pfq_term_ratio(const PFQParams& p, unsigned k);

struct SeriesOptions {
  double tol = kDefaultTol;
  std::int64_t max_terms = kDirectSeriesCap;
  int accel_cap = 4000;
};

/// Generalized hypergeometric series. Direct summation inside
/// |x| <= 0.95, Levin/Wynn acceleration outside (up to |x| = 1).
EvalResult pfq(const PFQParams& p, double tol = kDefaultTol);
EvalResult pfq(const PFQParams& p, const SeriesOptions& opts);

/// Gauss's theorem: 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)).
double gauss_2f1_at_one(double a, double b, double c);

}  // namespace hyperlab
