#pragma once

#include <cstdint>
#include <functional>

#include "hyperlab/eval_result.hpp"

namespace hyperlab {

inline constexpr int kAccelCap = 4000;
inline constexpr double kBreakdownThreshold = 1e-300;

/// Working precision of term streams and extrapolation tables.
///
/// At the orders needed for 1e-12 on the pFq(1) series the Levin weights
/// amplify input round-off by 1e5 to 1e7, so terms are generated and
/// combined in binary128 and only the final estimate is rounded to double.
using wide = __float128;

enum class StreamKind { alternating, monotone_positive };

/// Successive terms t_0, t_1, ... of a series.
///
/// `next` is a stateful generator. The accelerators take the stream by
/// value, so handing the same stream to two of them sums the series twice
/// from the start.
struct TermStream {
  std::function<wide()> next;
  StreamKind kind = StreamKind::monotone_positive;
};

/// Builds a stream from an index -> term function.
TermStream indexed_stream(std::function<wide(std::int64_t)> term, StreamKind kind);

/// Wynn's epsilon algorithm on the partial sums.
///
/// Alternating streams feed every partial sum S_0, S_1, ... into the
/// table. Monotone streams converge logarithmically, which epsilon cannot
/// accelerate, so they feed S_{2^m - 1}: along that subsequence the error
/// decays geometrically in m.
///
/// Throws ConvergenceError once `cap` terms are consumed and
/// BreakdownError when a table denominator underflows before the
/// estimates have settled.
EvalResult wynn_epsilon(TermStream ts, double tol, int cap = kAccelCap);

/// Levin u-transform with remainder estimates w_n = (n+1) t_{n+1}.
EvalResult levin_u(TermStream ts, double tol, int cap = kAccelCap);

/// Alternating streams go to wynn_epsilon, monotone ones to levin_u.
EvalResult accelerate(TermStream ts, double tol, int cap = kAccelCap);

}  // namespace hyperlab
