#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/eval_result.hpp"
#include "hyperlab/integrals.hpp"
#include "hyperlab/sfcore.hpp"

namespace hyperlab {

/// Basis constants for closed forms.
enum class Basis { one, pi, inv_pi, log2, pi_log2, catalan, catalan_over_pi };

struct Term {
  double coeff;
  Basis basis;
};

/// A linear combination of basis constants, e.g. 16 log 2 - 32 G/pi.
using Constant = std::vector<Term>;

double basis_value(Basis b);
double constant_value(const Constant& c);
std::string to_string(const Constant& c);

/// One side of an identity, evaluated at grid parameter p as
///
///   p^outer_power * (offset + scale * p^param_power * route(args, p))
///
/// The route names an evaluation procedure from route_names(); the rest
/// is plain data so the registry can be printed and serialized.
struct EvaluatorSpec {
  std::string route;
  std::vector<double> args;
  Constant scale = {{1.0, Basis::one}};
  int param_power = 0;
  Constant offset = {};
  int outer_power = 0;
};

std::string to_string(const EvaluatorSpec& e);

enum class GridKind { point, s_grid, custom };

struct Identity {
  std::string id;
  std::string description;
  std::string citation;
  GridKind grid = GridKind::point;
  /// Grid points; for `point` identities a single entry, NaN when the
  /// identity has no parameter.
  std::vector<double> points;
  EvaluatorSpec lhs;
  EvaluatorSpec rhs;
  double tol = 1e-10;
  /// Budgeted for stencil truncation rather than evaluation accuracy.
  bool finite_difference = false;
};

/// Evaluation settings shared by every route.
struct EvalContext {
  double series_tol = 1e-14;
  std::int64_t max_terms = kDirectSeriesCap;
  int accel_cap = 4000;
  IntegralOptions quad{};
  double fd_step = 1e-3;
};

struct VerificationResult {
  std::string id;
  std::string citation;
  std::optional<double> param;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::optional<Method> lhs_method;
  std::optional<Method> rhs_method;
  std::int64_t effort = 0;
  /// Empty unless an evaluation failed or the independence rule was broken.
  std::string diagnostic;
};

struct VerifyOptions {
  std::optional<double> tol_override;
  /// Replaces the points of s_grid identities.
  std::optional<std::vector<double>> grid_override;
  EvalContext context{};
};

/// Every identity, in a fixed order.
const std::vector<Identity>& registry();
const Identity* find_identity(const std::string& id);
std::vector<std::string> route_names();

/// Evaluates one side at parameter p.
EvalResult evaluate(const EvaluatorSpec& spec, double p, const EvalContext& ctx = {});

/// One result per grid point. Throws UnknownIdentityError for an unknown
/// id; evaluation failures become failed results.
std::vector<VerificationResult> verify(const std::string& id, const VerifyOptions& opts = {});
std::vector<VerificationResult> verify(const Identity& identity, const VerifyOptions& opts = {});
std::vector<VerificationResult> verify(const std::string& id, std::optional<double> tol_override);

/// The s-grid {0.1, ..., 0.9}.
std::vector<double> default_s_grid();

/// lo, lo+step, ... up to hi (inclusive within step/2).
std::vector<double> make_grid(double lo, double hi, double step);

}  // namespace hyperlab
