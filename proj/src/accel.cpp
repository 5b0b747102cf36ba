#include "hyperlab/accel.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hyperlab/errors.hpp"

namespace hyperlab {

TermStream indexed_stream(std::function<wide(std::int64_t)> term, StreamKind kind) {
  TermStream ts;
  ts.kind = kind;
  ts.next = [f = std::move(term), n = std::int64_t{0}]() mutable { return f(n++); };
  return ts;
}

namespace {

void check_cap(int cap, const char* who) {
  if (cap < 1 || cap > kAccelCap) {
    throw DomainError(std::string(who) + ": cap must lie in [1, 4000]");
  }
}

wide next_finite(TermStream& ts, const char* who) {
  const wide t = ts.next();
  if (!std::isfinite(static_cast<double>(t))) {
    throw DomainError(std::string(who) + ": non-finite series term");
  }
  return t;
}

wide abs_wide(wide v) { return v < 0 ? -v : v; }

// One ascending diagonal of the epsilon table, updated in place.
// After push(S_n), e[j] holds eps_{n-j}^{(j)}.
class EpsilonDiagonal {
 public:
  enum class Status { ok, ok_before_breakdown, breakdown };

  Status push(wide s) {
    const int n = static_cast<int>(e_.size());
    e_.push_back(s);
    wide aux2 = 0;
    for (int j = n; j >= 1; --j) {
      const wide aux1 = aux2;
      aux2 = e_[static_cast<std::size_t>(j - 1)];
      const wide diff = e_[static_cast<std::size_t>(j)] - aux2;
      if (abs_wide(diff) < kBreakdownThreshold) {
        // For odd n the estimate sits in e[1], which is final once the
        // sweep has reached j = 1.
        return (n % 2 == 1 && j == 1) ? Status::ok_before_breakdown : Status::breakdown;
      }
      e_[static_cast<std::size_t>(j - 1)] = aux1 + 1 / diff;
    }
    return Status::ok;
  }

  /// Latest even-column entry.
  wide estimate() const {
    const std::size_t n = e_.size() - 1;
    return e_[n % 2 == 0 ? 0 : 1];
  }

  std::size_t size() const { return e_.size(); }

 private:
  std::vector<wide> e_;
};

// Feeds one epsilon table and tracks its convergence.
struct EpsilonTrack {
  EpsilonDiagonal table;
  double estimate = 0.0;
  double last_diff = std::numeric_limits<double>::infinity();
  bool broken = false;

  // Returns true once two successive estimates agree to tol.
  bool feed(wide s, double tol) {
    const auto status = table.push(s);
    if (status == EpsilonDiagonal::Status::breakdown) {
      broken = true;
      return last_diff <= tol;
    }
    const double prev = estimate;
    estimate = static_cast<double>(table.estimate());
    if (table.size() >= 3) last_diff = std::abs(estimate - prev);
    if (status == EpsilonDiagonal::Status::ok_before_breakdown) broken = true;
    return last_diff <= tol;
  }
};

// Linearly convergent monotone streams settle within this many partial
// sums on the unsampled table; beyond it only the sampled table runs.
constexpr int kFullTableLimit = 200;

// On a monotone stream whose term ratio exceeds this the full table can
// settle on a wrong value (logarithmic convergence); only the sampled
// table is trusted there.
constexpr double kLinearRatio = 0.9;

constexpr int kMaxVanishedOrders = 3;

}  // namespace

EvalResult wynn_epsilon(TermStream ts, double tol, int cap) {
  check_cap(cap, "wynn_epsilon");
  const bool monotone = ts.kind == StreamKind::monotone_positive;
  EpsilonTrack full;
  EpsilonTrack sampled;
  wide partial = 0;
  wide prev_term = 0;
  double ratio = 0.0;
  std::int64_t next_sample = 1;

  auto done = [&](const EpsilonTrack& t, std::int64_t consumed) {
    return EvalResult{t.estimate, t.last_diff, consumed, true, Method::accelerated};
  };

  for (std::int64_t consumed = 1; consumed <= cap; ++consumed) {
    const wide term = next_finite(ts, "wynn_epsilon");
    if (prev_term != 0) ratio = static_cast<double>(abs_wide(term / prev_term));
    prev_term = term;
    partial += term;
    if (!full.broken && (!monotone || consumed <= kFullTableLimit)) {
      const bool settled = full.feed(partial, tol);
      if (settled && (!monotone || ratio < kLinearRatio)) return done(full, consumed);
    }
    if (monotone && consumed == next_sample) {
      next_sample *= 2;
      if (!sampled.broken && sampled.feed(partial, tol)) return done(sampled, consumed);
    }
    const bool full_alive = !full.broken && (!monotone || consumed < kFullTableLimit);
    const bool sampled_alive = monotone && !sampled.broken;
    if (!full_alive && !sampled_alive) {
      const EpsilonTrack& best = full.last_diff <= sampled.last_diff ? full : sampled;
      throw BreakdownError("wynn_epsilon: table denominator below 1e-300 after " +
                               std::to_string(consumed) + " terms; retry with levin_u",
                           best.estimate, best.last_diff);
    }
  }
  const EpsilonTrack& best = (monotone && sampled.last_diff < full.last_diff) ? sampled : full;
  throw ConvergenceError("wynn_epsilon: no convergence within " + std::to_string(cap) + " terms",
                         best.estimate, best.last_diff);
}

EvalResult levin_u(TermStream ts, double tol, int cap) {
  check_cap(cap, "levin_u");
  // L_k = sum_j (-1)^j C(k,j) ((j+1)/(k+1))^(k-1) S_j / w_j
  //     / sum_j (-1)^j C(k,j) ((j+1)/(k+1))^(k-1) / w_j,   w_j = (j+1) t_{j+1}
  std::vector<wide> sums;
  std::vector<wide> inv_w;
  sums.reserve(static_cast<std::size_t>(cap));
  inv_w.reserve(static_cast<std::size_t>(cap));

  wide partial = next_finite(ts, "levin_u");
  double estimate = static_cast<double>(partial);
  double last_diff = std::numeric_limits<double>::infinity();
  int settled = 0;
  int vanished = 0;

  for (int k = 0; k + 1 < cap; ++k) {
    const wide t_next = next_finite(ts, "levin_u");
    if (t_next == 0) {
      // A terminating series: the partial sum is exact.
      return EvalResult{static_cast<double>(partial), 0.0, k + 2, true, Method::accelerated};
    }
    const wide w = static_cast<wide>(k + 1) * t_next;
    if (abs_wide(w) < kBreakdownThreshold) {
      throw BreakdownError("levin_u: remainder estimate underflowed", estimate, last_diff);
    }
    sums.push_back(partial);
    inv_w.push_back(1 / w);
    partial += t_next;

    wide num = 0;
    wide den = 0;
    wide binom = 1;
    const wide kk = k;
    for (int j = 0; j <= k; ++j) {
      const wide weight = (j % 2 == 0 ? binom : -binom) * powq((j + 1) / (kk + 1), kk - 1);
      num += weight * sums[static_cast<std::size_t>(j)] * inv_w[static_cast<std::size_t>(j)];
      den += weight * inv_w[static_cast<std::size_t>(j)];
      binom = binom * (kk - j) / (j + 1);
    }
    if (abs_wide(den) < kBreakdownThreshold) {
      // An isolated exact cancellation (w_0 = w_1 happens for some 3F2(1)
      // streams) only loses this order; a run of them is a breakdown.
      if (++vanished >= kMaxVanishedOrders) {
        throw BreakdownError("levin_u: denominator underflowed at k = " + std::to_string(k),
                             estimate, last_diff);
      }
      settled = 0;
      continue;
    }
    vanished = 0;
    const double prev = estimate;
    estimate = static_cast<double>(num / den);
    if (!std::isfinite(estimate)) {
      throw BreakdownError("levin_u: non-finite transform at k = " + std::to_string(k), prev,
                           last_diff);
    }
    if (k >= 2) {
      last_diff = std::abs(estimate - prev);
      // Two consecutive small steps guard against a chance near-coincidence.
      settled = last_diff <= tol ? settled + 1 : 0;
      if (settled >= 2) {
        return EvalResult{estimate, last_diff, k + 2, true, Method::accelerated};
      }
    }
  }
  throw ConvergenceError("levin_u: no convergence within " + std::to_string(cap) + " terms",
                         estimate, last_diff);
}

EvalResult accelerate(TermStream ts, double tol, int cap) {
  if (ts.kind == StreamKind::alternating) return wynn_epsilon(std::move(ts), tol, cap);
  return levin_u(std::move(ts), tol, cap);
}

}  // namespace hyperlab
