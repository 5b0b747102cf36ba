#include "hyperlab/sfcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "hyperlab/accel.hpp"
#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

// Lanczos kernel, g = 7, nine terms (Godfrey). Relative error of Gamma is
// about 1e-15 for x >= 0.5.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::floor(v) == v;
}

double lanczos_lgamma(double x) {
  const double z = x - 1.0;
  double series = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    series += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double lgamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("lgamma: argument must be positive, got " + std::to_string(x));
  }
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) {
    // Gamma(x) = Gamma(x+1) / x keeps the kernel on its accurate range.
    return lanczos_lgamma(x + 1.0) - std::log(x);
  }
  return lanczos_lgamma(x);
}

double pochhammer(double a, unsigned k) {
  double p = 1.0;
  for (unsigned i = 0; i < k; ++i) p *= a + static_cast<double>(i);
  return p;
}

double central_binomial(unsigned n) {
  if (n <= 30) {
    // C(2n, i+1) = C(2n, i) (2n - i) / (i + 1); the largest intermediate,
    // C(60,29) * 31, fits in 64 bits.
    std::uint64_t c = 1;
    const std::uint64_t two_n = 2ULL * n;
    for (std::uint64_t i = 0; i < n; ++i) c = c * (two_n - i) / (i + 1);
    return static_cast<double>(c);
  }
  const double dn = static_cast<double>(n);
  return std::exp(lgamma(2.0 * dn + 1.0) - 2.0 * lgamma(dn + 1.0));
}

double PFQParams::unit_margin() const {
  const double lo = std::accumulate(lower.begin(), lower.end(), 0.0);
  const double up = std::accumulate(upper.begin(), upper.end(), 0.0);
  return lo - up;
}

void PFQParams::validate() const {
  for (double b : lower) {
    if (is_nonpositive_integer(b)) {
      throw DomainError("pfq: lower parameter " + std::to_string(b) +
                        " is a non-positive integer");
    }
  }
  if (upper.size() > lower.size() + 1 && !terminates()) {
    throw DomainError("pfq: p > q + 1 gives zero radius of convergence");
  }
}

bool PFQParams::terminates() const {
  return std::any_of(upper.begin(), upper.end(), is_nonpositive_integer);
}

bool pfq_converges_at_one(const PFQParams& p) { return p.unit_margin() > 0.0; }

double pfq_term_ratio(const PFQParams& p, unsigned k) {
  const double dk = static_cast<double>(k);
  double r = p.argument / (dk + 1.0);
  for (double a : p.upper) r *= a + dk;
  for (double b : p.lower) r /= b + dk;
  return r;
}

EvalResult pfq(const PFQParams& p, double tol) {
  SeriesOptions opts;
  opts.tol = tol;
  return pfq(p, opts);
}

namespace {

EvalResult sum_terminating(const PFQParams& p) {
  double t = 1.0;
  double sum = 1.0;
  std::int64_t n = 1;
  for (unsigned k = 0;; ++k) {
    t *= pfq_term_ratio(p, k);
    if (t == 0.0) break;
    sum += t;
    ++n;
  }
  return EvalResult{sum, 0.0, n, true, Method::direct_series};
}

// Returns nullopt when max_terms is reached before the tail bound drops
// below tol; the sum is carried with Neumaier compensation because near
// |x| = 1 it runs to 1e5 terms.
std::optional<EvalResult> try_sum_direct(const PFQParams& p, const SeriesOptions& opts,
                                         double& last_sum, double& last_tail) {
  const double x = std::abs(p.argument);
  const bool balanced = p.upper.size() == p.lower.size() + 1;
  double t = 1.0;
  double sum = 1.0;
  double carry = 0.0;
  double prev_ratio = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < opts.max_terms; ++k) {
    const double r = std::abs(pfq_term_ratio(p, static_cast<unsigned>(k)));
    if (k > 0) {
      // For p = q + 1 the ratio tends to |x|; for p <= q it tends to 0.
      double rho = std::max(r, prev_ratio);
      if (balanced) rho = std::max(rho, x);
      const bool past_hump = balanced || r <= prev_ratio;
      if (past_hump && rho < 1.0) {
        tail = std::abs(t) * r / (1.0 - rho);
        if (tail <= opts.tol) {
          return EvalResult{sum + carry, tail, k + 1, true, Method::direct_series};
        }
      }
    }
    t *= pfq_term_ratio(p, static_cast<unsigned>(k));
    const double next = sum + t;
    carry += std::abs(sum) >= std::abs(t) ? (sum - next) + t : (t - next) + sum;
    sum = next;
    prev_ratio = r;
  }
  last_sum = sum + carry;
  last_tail = tail;
  return std::nullopt;
}

EvalResult sum_direct(const PFQParams& p, const SeriesOptions& opts) {
  double sum = 0.0;
  double tail = 0.0;
  if (auto r = try_sum_direct(p, opts, sum, tail)) return *r;
  throw ConvergenceError("pfq: direct series did not reach tolerance within " +
                             std::to_string(opts.max_terms) + " terms",
                         sum, tail);
}

// pfq_term_ratio carried out in the accelerators' working precision.
wide wide_term_ratio(const PFQParams& p, unsigned k) {
  const wide dk = k;
  wide r = static_cast<wide>(p.argument) / (dk + 1);
  for (double a : p.upper) r *= a + dk;
  for (double b : p.lower) r /= b + dk;
  return r;
}

}  // namespace

EvalResult pfq(const PFQParams& p, const SeriesOptions& opts) {
  p.validate();
  const double x = p.argument;
  if (x == 0.0) return EvalResult{1.0, 0.0, 1, true, Method::direct_series};
  if (p.terminates()) return sum_terminating(p);
  if (std::abs(x) > 1.0) {
    throw DomainError("pfq: |x| > 1 is outside the domain of the series");
  }
  if (std::abs(x) == 1.0 && p.upper.size() == p.lower.size() + 1 && !pfq_converges_at_one(p)) {
    throw DomainError("pfq: series diverges at |x| = 1 (non-positive parameter margin)");
  }
  if (std::abs(x) <= kDirectSeriesRadius) return sum_direct(p, opts);
  if (x > 0.0 && x < 1.0) {
    // Just below 1 the Levin transform gains little per order and turns
    // unstable near order 60, while the geometric factor still makes
    // direct summation cheap; acceleration is the fallback.
    double sum = 0.0;
    double tail = 0.0;
    if (auto r = try_sum_direct(p, opts, sum, tail)) return *r;
  }

  TermStream ts;
  ts.kind = x < 0.0 ? StreamKind::alternating : StreamKind::monotone_positive;
  ts.next = [params = p, term = wide{1}, k = 0u, started = false]() mutable {
    if (!started) {
      started = true;
      return term;
    }
    term *= wide_term_ratio(params, k++);
    return term;
  };
  return accelerate(std::move(ts), opts.tol, opts.accel_cap);
}

double gauss_2f1_at_one(double a, double b, double c) {
  const double margin = c - a - b;
  if (!(margin > 0.0)) {
    throw DomainError("gauss_2f1_at_one: requires c - a - b > 0");
  }
  if (is_nonpositive_integer(c) || is_nonpositive_integer(c - a) ||
      is_nonpositive_integer(c - b)) {
    throw DomainError("gauss_2f1_at_one: c, c-a, c-b must not be non-positive integers");
  }
  if (c - a <= 0.0 || c - b <= 0.0) {
    // lgamma has no reflection branch; every triple used here keeps the
    // gamma arguments positive.
    throw DomainError("gauss_2f1_at_one: c - a and c - b must be positive");
  }
  return std::exp((lgamma(c) + lgamma(margin)) - (lgamma(c - a) + lgamma(c - b)));
}

}  // namespace hyperlab
