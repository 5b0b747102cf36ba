#include "hyperlab/identities.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "hyperlab/accel.hpp"
#include "hyperlab/elliptic.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/quadrature.hpp"

namespace hyperlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kG = 0.915965594177219015054603514932384110774;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr double kSmall = 1e-6;

using Route = std::function<EvalResult(const std::vector<double>&, double, const EvalContext&)>;

// ---- argument helpers ------------------------------------------------------

// pfq args are [p, q, a_1..a_p, b_1..b_q] optionally followed by x.
PFQParams decode_pfq(const std::vector<double>& args, bool with_argument) {
  if (args.size() < 2) throw DomainError("pfq route: missing parameter counts");
  const auto p = static_cast<std::size_t>(args[0]);
  const auto q = static_cast<std::size_t>(args[1]);
  if (args.size() != 2 + p + q + (with_argument ? 1 : 0)) {
    throw DomainError("pfq route: argument count does not match p and q");
  }
  PFQParams params;
  params.upper.assign(args.begin() + 2, args.begin() + 2 + static_cast<std::ptrdiff_t>(p));
  params.lower.assign(args.begin() + 2 + static_cast<std::ptrdiff_t>(p),
                      args.begin() + 2 + static_cast<std::ptrdiff_t>(p + q));
  if (with_argument) params.argument = args.back();
  return params;
}

SeriesOptions series_options(const EvalContext& ctx) {
  SeriesOptions o;
  o.tol = ctx.series_tol;
  o.max_terms = ctx.max_terms;
  o.accel_cap = ctx.accel_cap;
  return o;
}

struct Angle {
  double sin;
  double cos;
};

Angle angle_of(const QuadPoint& p) {
  if (p.from_lo <= p.to_hi) return {std::sin(p.from_lo), std::cos(p.from_lo)};
  return {std::cos(p.to_hi), std::sin(p.to_hi)};
}

QuadratureSpec quad_spec(double lo, double hi, const EvalContext& ctx) {
  QuadratureSpec spec;
  spec.lo = lo;
  spec.hi = hi;
  spec.target_tol = ctx.quad.tol;
  spec.max_level = ctx.quad.max_level;
  return spec;
}

EvalResult quarter_circle(const Integrand& f, const EvalContext& ctx) {
  return tanh_sinh(f, quad_spec(0.0, kPi / 2.0, ctx));
}

EvalResult unit_interval(const Integrand& f, const EvalContext& ctx) {
  return tanh_sinh(f, quad_spec(0.0, 1.0, ctx));
}

// ---- routes ----------------------------------------------------------------

EvalResult route_pfq(const std::vector<double>& args, double, const EvalContext& ctx) {
  return pfq(decode_pfq(args, true), series_options(ctx));
}

EvalResult route_pfq_param_sq(const std::vector<double>& args, double p, const EvalContext& ctx) {
  PFQParams params = decode_pfq(args, false);
  params.argument = p * p;
  return pfq(params, series_options(ctx));
}

// sum_n binom(2n,n)^2 / 16^n * (c0 + c1 n + c2 n^2) / (n+1)^k with
// args [k, c0, c1, c2]. The binomial factor follows its ratio
// ((2n+1)/(2n+2))^2 so no factorial is ever formed.
EvalResult route_binomial_series(const std::vector<double>& args, double, const EvalContext& ctx) {
  if (args.size() != 4) throw DomainError("binomial_series: expects [k, c0, c1, c2]");
  const int k = static_cast<int>(args[0]);
  const wide c0 = args[1];
  const wide c1 = args[2];
  const wide c2 = args[3];
  TermStream ts;
  ts.kind = StreamKind::monotone_positive;
  ts.next = [=, n = std::int64_t{0}, central = wide{1}]() mutable {
    const wide dn = static_cast<wide>(n);
    wide den = 1;
    for (int i = 0; i < k; ++i) den *= dn + 1;
    const wide t = central * (c0 + c1 * dn + c2 * dn * dn) / den;
    const wide r = (2 * dn + 1) / (2 * dn + 2);
    central *= r * r;
    ++n;
    return t;
  };
  return levin_u(std::move(ts), ctx.series_tol, ctx.accel_cap);
}

EvalResult route_gauss(const std::vector<double>& args, double, const EvalContext&) {
  if (args.size() != 3) throw DomainError("gauss_2f1: expects [a, b, c]");
  return closed_form(gauss_2f1_at_one(args[0], args[1], args[2]));
}

EvalResult route_one(const std::vector<double>&, double, const EvalContext&) {
  return closed_form(1.0);
}

EvalResult route_log_half_param(const std::vector<double>&, double p, const EvalContext&) {
  if (!(p > 0.0)) throw DomainError("log_half_param: requires p > 0");
  return closed_form(std::log(p / 2.0));
}

EvalResult route_catalan(CatalanMethod m, const EvalContext& ctx) {
  IntegralOptions io = ctx.quad;
  io.tol = std::min(io.tol, ctx.series_tol * 100.0);
  return catalan_eval(m, io);
}

EvalResult route_catalan_indexed(const std::vector<double>&, double p, const EvalContext& ctx) {
  const auto i = static_cast<std::size_t>(p);
  if (p < 0 || i >= std::size(kCatalanMethods) || static_cast<double>(i) != p) {
    throw DomainError("catalan.indexed: parameter must index a method");
  }
  return route_catalan(kCatalanMethods[i], ctx);
}

using IntegralFn = EvalResult (*)(double, const IntegralOptions&);

Route integral_route(IntegralFn f) {
  return [f](const std::vector<double>&, double p, const EvalContext& ctx) { return f(p, ctx.quad); };
}

Route derivative_route(IntegralFn f) {
  return [f](const std::vector<double>&, double p, const EvalContext& ctx) {
    std::int64_t effort = 0;
    double err = 0.0;
    auto g = [&](double s) {
      const EvalResult r = f(s, ctx.quad);
      effort += r.effort;
      err += r.err_estimate;
      return r.value;
    };
    const double d = central_diff(g, p, ctx.fd_step);
    // Stencil weights sum to 18/12 in absolute value.
    return EvalResult{d, 1.5 * err / ctx.fd_step, effort, true, Method::quadrature};
  };
}

EvalResult route_k(const std::vector<double>&, double p, const EvalContext&) {
  return ellipk_eval(Modulus{p});
}

EvalResult route_e(const std::vector<double>&, double p, const EvalContext&) {
  return ellipe_eval(Modulus{p});
}

EvalResult route_c_plus_d(const std::vector<double>&, double p, const EvalContext& ctx) {
  const EvalResult c = integral_C_eval(p, ctx.quad);
  const EvalResult d = integral_D_eval(p, ctx.quad);
  return EvalResult{c.value + d.value, c.err_estimate + d.err_estimate, c.effort + d.effort, true,
                    Method::quadrature};
}

EvalResult route_logsine(const std::vector<double>&, double, const EvalContext& ctx) {
  return quarter_circle([](const QuadPoint& q) { return std::log(angle_of(q).sin); }, ctx);
}

EvalResult route_logcosine(const std::vector<double>&, double, const EvalContext& ctx) {
  return quarter_circle([](const QuadPoint& q) { return std::log(angle_of(q).cos); }, ctx);
}

// int_0^{pi/2} log(1 + cos t) dt
EvalResult route_log_one_plus_cos(const std::vector<double>&, double, const EvalContext& ctx) {
  return quarter_circle([](const QuadPoint& q) { return std::log1p(angle_of(q).cos); }, ctx);
}

// int_0^1 w(s) C(s) ds with the inner C by its own quadrature.
Route nested_route(double (*weight)(double)) {
  return [weight](const std::vector<double>&, double, const EvalContext& ctx) {
    std::int64_t effort = 0;
    EvalResult r = unit_interval(
        [&](const QuadPoint& q) {
          const EvalResult c = integral_C_eval(q.x, ctx.quad);
          effort += c.effort;
          return weight(q.x) * c.value;
        },
        ctx);
    r.effort += effort;
    return r;
  };
}

double weight_s(double s) { return s; }
double weight_s_log_s(double s) { return s * std::log(s); }
double weight_s_one_minus_s2(double s) { return s * (1.0 - s * s); }

// Order-swapped form of int_0^1 s C(s) ds with x = sin(theta):
//   int 1/(2(1 + cos)) - 1/4 + log(1 + cos)/2 dtheta
EvalResult route_swapped_s(const std::vector<double>&, double, const EvalContext& ctx) {
  return quarter_circle(
      [](const QuadPoint& q) {
        const double c = angle_of(q).cos;
        return 0.5 / (1.0 + c) - 0.25 + 0.5 * std::log1p(c);
      },
      ctx);
}

// Order-swapped form of int_0^1 s log(s) C(s) ds. With u = 1 - cos(theta)
// and S = sin^2(theta) = u (2 - u) the integrand is
//   (S - 3u - S log 2 - (S + 2) log(1 - u/2)) / (4 S).
EvalResult route_swapped_s_log_s(const std::vector<double>&, double, const EvalContext& ctx) {
  return quarter_circle(
      [](const QuadPoint& q) {
        const double half = std::sin(0.5 * q.x);
        const double u = 2.0 * half * half;
        const double sn = angle_of(q).sin;
        const double big_s = sn * sn;
        return (big_s - 3.0 * u - big_s * kLn2 - (big_s + 2.0) * std::log1p(-0.5 * u)) /
               (4.0 * big_s);
      },
      ctx);
}

// 3F2(1/2, 1, 1; 3/2, 3/2; z) for z < 0 from
//   int_0^1 asinh(t sqrt(w)) / (t sqrt(w) sqrt(1 + w t^2)) dt,  w = -z.
EvalResult whipple_lhs_quadrature(double z, const EvalContext& ctx) {
  const double rw = std::sqrt(-z);
  return unit_interval(
      [rw](const QuadPoint& q) {
        const double y = q.x * rw;
        const double ratio = y < kSmall ? 1.0 - y * y / 6.0 : std::asinh(y) / y;
        return ratio / std::sqrt(1.0 + y * y);
      },
      ctx);
}

double whipple_argument(double x) { return 4.0 * x / ((1.0 + x) * (1.0 + x)); }

PFQParams whipple_lhs_params(double z) { return PFQParams{{0.5, 1.0, 1.0}, {1.5, 1.5}, z}; }

// The LHS is a series except where the mapped argument runs past -1.
bool whipple_lhs_by_quadrature(double x) {
  const double z = whipple_argument(x);
  return z < 0.0 && std::abs(z) > kDirectSeriesRadius;
}

// LHS by series, or by quadrature for large negative arguments. The RHS
// takes the other route.
EvalResult route_whipple_lhs(const std::vector<double>&, double x, const EvalContext& ctx) {
  if (!(x > -1.0 && x <= 1.0)) throw DomainError("whipple: requires -1 < x <= 1");
  const double z = whipple_argument(x);
  if (whipple_lhs_by_quadrature(x)) return whipple_lhs_quadrature(z, ctx);
  return pfq(whipple_lhs_params(z), series_options(ctx));
}

// (1 + x) sum (-x)^n / (2n+1)^2
EvalResult route_whipple_rhs(const std::vector<double>&, double x, const EvalContext& ctx) {
  if (!(x > -1.0 && x <= 1.0)) throw DomainError("whipple: requires -1 < x <= 1");
  if (x == 0.0) return closed_form(1.0);
  EvalResult r;
  if (!whipple_lhs_by_quadrature(x)) {
    // int_0^1 arctan(a t)/(a t) dt for x = a^2 > 0, atanh for x < 0
    const double a = std::sqrt(std::abs(x));
    const bool positive = x > 0.0;
    r = unit_interval(
        [a, positive](const QuadPoint& q) {
          const double y = a * q.x;
          if (y < kSmall) return positive ? 1.0 - y * y / 3.0 : 1.0 + y * y / 3.0;
          return (positive ? std::atan(y) : std::atanh(y)) / y;
        },
        ctx);
  } else {
    r = pfq(PFQParams{{0.5, 0.5, 1.0}, {1.5, 1.5}, -x}, series_options(ctx));
  }
  r.value *= 1.0 + x;
  r.err_estimate *= std::abs(1.0 + x);
  return r;
}

bool berndt_rhs_terminates(double n) { return n >= 0.0 && std::floor(n) == n; }

double berndt_prefactor(double n) {
  return std::sqrt(kPi) * std::exp(lgamma(n + 2.0) - lgamma(n + 1.5));
}

// 3F2(1/2, 1, n+3/2; 3/2, n+2; 1). Where the other side terminates this
// is the accelerated series; otherwise
//   G(n+2) / (G(n+3/2) sqrt(pi)) int_0^1 u^n (1-u)^(-1/2) atanh(sqrt(u)) du.
EvalResult route_berndt_lhs(const std::vector<double>&, double n, const EvalContext& ctx) {
  if (!(n > -1.5)) throw DomainError("berndt: requires n > -3/2");
  if (berndt_rhs_terminates(n)) {
    return pfq(PFQParams{{0.5, 1.0, n + 1.5}, {1.5, n + 2.0}, 1.0}, series_options(ctx));
  }
  EvalResult r = unit_interval(
      [n](const QuadPoint& q) {
        const double u = q.x;
        const double y = std::sqrt(u);
        // atanh(y) = log(1 + y) - log(1 - u)/2, with 1 - u exact
        const double ratio =
            y < kSmall ? 1.0 + u / 3.0 : (std::log1p(y) - 0.5 * std::log(q.to_hi)) / y;
        return std::pow(u, n + 0.5) * ratio / std::sqrt(q.to_hi);
      },
      ctx);
  const double pre = berndt_prefactor(n) / kPi;
  r.value *= pre;
  r.err_estimate *= pre;
  return r;
}

// sqrt(pi) G(n+2)/G(n+3/2) 3F2(1/2, 1/2, -n; 1, 3/2; 1)
EvalResult route_berndt_rhs(const std::vector<double>&, double n, const EvalContext& ctx) {
  if (!(n > -1.5)) throw DomainError("berndt: requires n > -3/2");
  EvalResult r = pfq(PFQParams{{0.5, 0.5, -n}, {1.0, 1.5}, 1.0}, series_options(ctx));
  const double pre = berndt_prefactor(n);
  r.value *= pre;
  r.err_estimate *= pre;
  return r;
}

const std::map<std::string, Route>& routes() {
  static const std::map<std::string, Route> table = [] {
    std::map<std::string, Route> t;
    t["one"] = route_one;
    t["log_half_param"] = route_log_half_param;
    t["pfq"] = route_pfq;
    t["pfq_param_sq"] = route_pfq_param_sq;
    t["binomial_series"] = route_binomial_series;
    t["gauss_2f1"] = route_gauss;
    for (CatalanMethod m : kCatalanMethods) {
      t["catalan." + std::string(to_string(m))] =
          [m](const std::vector<double>&, double, const EvalContext& ctx) {
            return route_catalan(m, ctx);
          };
    }
    t["catalan.indexed"] = route_catalan_indexed;
    t["A"] = integral_route(integral_A_eval);
    t["B"] = integral_route(integral_B_eval);
    t["C"] = integral_route(integral_C_eval);
    t["D"] = integral_route(integral_D_eval);
    t["C_plus_D"] = route_c_plus_d;
    t["diff.A"] = derivative_route(integral_A_eval);
    t["diff.B"] = derivative_route(integral_B_eval);
    t["diff.C"] = derivative_route(integral_C_eval);
    t["diff.D"] = derivative_route(integral_D_eval);
    t["K"] = route_k;
    t["E"] = route_e;
    t["logsine"] = route_logsine;
    t["logcosine"] = route_logcosine;
    t["log_one_plus_cos"] = route_log_one_plus_cos;
    t["nested.s_C"] = nested_route(weight_s);
    t["nested.s_log_s_C"] = nested_route(weight_s_log_s);
    t["nested.s_one_minus_s2_C"] = nested_route(weight_s_one_minus_s2);
    t["swapped.s_C"] = route_swapped_s;
    t["swapped.s_log_s_C"] = route_swapped_s_log_s;
    t["whipple.lhs"] = route_whipple_lhs;
    t["whipple.rhs"] = route_whipple_rhs;
    t["berndt.lhs"] = route_berndt_lhs;
    t["berndt.rhs"] = route_berndt_rhs;
    return t;
  }();
  return table;
}

// ---- registry builders -----------------------------------------------------

std::vector<double> pfq_args(std::vector<double> upper, std::vector<double> lower) {
  std::vector<double> a{static_cast<double>(upper.size()), static_cast<double>(lower.size())};
  a.insert(a.end(), upper.begin(), upper.end());
  a.insert(a.end(), lower.begin(), lower.end());
  return a;
}

EvaluatorSpec pfq_at_one(std::vector<double> upper, std::vector<double> lower,
                         Constant scale = {{1.0, Basis::one}}) {
  auto a = pfq_args(std::move(upper), std::move(lower));
  a.push_back(1.0);
  return EvaluatorSpec{"pfq", a, std::move(scale)};
}

EvaluatorSpec closed(Constant c) { return EvaluatorSpec{"one", {}, std::move(c)}; }

EvaluatorSpec route(std::string name, std::vector<double> args = {}) {
  return EvaluatorSpec{std::move(name), std::move(args)};
}

EvaluatorSpec binomial(double k, double c0, double c1, double c2) {
  return route("binomial_series", {k, c0, c1, c2});
}

Identity point(std::string id, std::string description, std::string citation, EvaluatorSpec lhs,
               EvaluatorSpec rhs, double tol, double param = kNaN) {
  Identity i;
  i.id = std::move(id);
  i.description = std::move(description);
  i.citation = std::move(citation);
  i.grid = GridKind::point;
  i.points = {param};
  i.lhs = std::move(lhs);
  i.rhs = std::move(rhs);
  i.tol = tol;
  return i;
}

Identity gridded(std::string id, std::string description, std::string citation, GridKind kind,
                 std::vector<double> points, EvaluatorSpec lhs, EvaluatorSpec rhs, double tol) {
  Identity i = point(std::move(id), std::move(description), std::move(citation), std::move(lhs),
                     std::move(rhs), tol);
  i.grid = kind;
  i.points = std::move(points);
  return i;
}

Identity derivative(std::string id, std::string description, std::string citation,
                    EvaluatorSpec lhs, EvaluatorSpec rhs) {
  Identity i = gridded(std::move(id), std::move(description), std::move(citation),
                       GridKind::custom, {0.3, 0.5, 0.7}, std::move(lhs), std::move(rhs), 1e-6);
  i.finite_difference = true;
  return i;
}

std::vector<Identity> build_registry() {
  using B = Basis;
  const double h = 0.5;
  const std::vector<double> s_grid = default_s_grid();
  std::vector<Identity> r;

  r.push_back(gridded(
      "g_routes", "Catalan's constant: alternating beta series against the four integral routes "
                  "(1 = half the integral of K, 2 = integral of E minus 1/2, 3 = arctan integral, "
                  "4 = arcsin integral A(1)/2)",
      "G as the alternating series, the K and E integrals and the arctan and arcsin integrals",
      GridKind::custom, {1, 2, 3, 4}, route("catalan.beta_series"), route("catalan.indexed"),
      1e-11));
  r.push_back(point("ramanujan_3f2", "4G/pi = 3F2(1/2,1/2,1/2; 1,3/2; 1)",
                    "Ramanujan's 3F2 evaluation of 4G/pi", closed({{4, B::catalan_over_pi}}),
                    pfq_at_one({h, h, h}, {1, 1.5}), 1e-10));
  r.push_back(point("a1_value", "A(1) = 2G", "A(1), the arcsin integral at s = 1",
                    route("A"), closed({{2, B::catalan}}), 1e-10, 1.0));
  r.push_back(point("a1_series", "A(1) = (pi/2) 3F2(1/2,1/2,1/2; 1,3/2; 1)",
                    "A(1) by quadrature against its hypergeometric value", route("A"),
                    pfq_at_one({h, h, h}, {1, 1.5}, {{h, B::pi}}), 1e-10, 1.0));
  r.push_back(gridded(
      "berndt_transform",
      "3F2(1/2,1,n+3/2; 3/2,n+2; 1) = sqrt(pi) G(n+2)/G(n+3/2) 3F2(1/2,1/2,-n; 1,3/2; 1)",
      "Berndt's 3F2 transformation, valid for n > -3/2", GridKind::custom,
      {-0.5, 0.0, 0.5, 1.0, 2.0}, route("berndt.lhs"), route("berndt.rhs"), 1e-9));
  r.push_back(point("entry_prodigiii",
                    "3F2(1/2,1,1; 3/2,3/2; 1) = (pi/2) 3F2(1/2,1/2,1/2; 1,3/2; 1), the right side "
                    "taken as its integral A(1)",
                    "Berndt's transformation at n = -1/2", pfq_at_one({h, 1, 1}, {1.5, 1.5}),
                    route("A"), 1e-10, 1.0));
  r.push_back(point("prodigiii_value", "3F2(1/2,1,1; 3/2,3/2; 1) = 2G",
                    "the Whipple-type identity at x = 1", pfq_at_one({h, 1, 1}, {1.5, 1.5}),
                    closed({{2, B::catalan}}), 1e-10));
  r.push_back(gridded("whipple_quadratic",
                      "3F2(1/2,1,1; 3/2,3/2; 4x/(1+x)^2) = (1+x) sum (-x)^n/(2n+1)^2",
                      "Whipple quadratic transformation type identity, |x| <= 1",
                      GridKind::custom, {-0.9, -0.5, -0.1, 0.1, 0.3, 0.5}, route("whipple.lhs"),
                      route("whipple.rhs"), 1e-10));

  {
    EvaluatorSpec rhs{"pfq_param_sq", pfq_args({h, h, h}, {1, 1.5}), {{h, B::pi}}, 1};
    r.push_back(gridded("e1_parametric", "A(s) = (pi/2) s 3F2(1/2,1/2,1/2; 1,3/2; s^2)",
                        "parametric arcsin integral A(s) for |s| < 1", GridKind::s_grid, s_grid,
                        route("A"), rhs, 1e-10));
  }
  {
    EvaluatorSpec rhs{"pfq_param_sq", pfq_args({1, 1, 1.5, 1.5}, {2, 2, 2}),
                      {{-1.0 / 16.0, B::pi}}, 2, {{h, B::pi_log2}}};
    r.push_back(gridded("eics_parametric",
                        "C(s) = (pi/2) log 2 - (pi/16) s^2 4F3(1,1,3/2,3/2; 2,2,2; s^2)",
                        "parametric log integral C(s) for |s| < 1", GridKind::s_grid, s_grid,
                        route("C"), rhs, 1e-10));
  }
  {
    EvaluatorSpec rhs{"pfq_param_sq", pfq_args({-h, h, h}, {1, 1.5}), {{h, B::pi}}, 1};
    r.push_back(gridded("e2_parametric", "B(s) = (pi/2) s 3F2(-1/2,1/2,1/2; 1,3/2; s^2)",
                        "parametric integral B(s) whose derivative is E(s)", GridKind::s_grid,
                        s_grid, route("B"), rhs, 1e-10));
  }
  r.push_back(gridded("k_hypergeometric", "K(s) = (pi/2) 2F1(1/2,1/2; 1; s^2)",
                      "hypergeometric form of K", GridKind::s_grid, s_grid, route("K"),
                      EvaluatorSpec{"pfq_param_sq", pfq_args({h, h}, {1}), {{h, B::pi}}}, 1e-12));
  r.push_back(gridded("e_hypergeometric", "E(s) = (pi/2) 2F1(-1/2,1/2; 1; s^2)",
                      "hypergeometric form of E", GridKind::s_grid, s_grid, route("E"),
                      EvaluatorSpec{"pfq_param_sq", pfq_args({-h, h}, {1}), {{h, B::pi}}},
                      1e-12));

  r.push_back(point("nick_value", "C(1) = 2G - (pi/2) log 2", "C(1) in terms of G",
                    route("C"), closed({{2, B::catalan}, {-h, B::pi_log2}}), 1e-10, 1.0));
  r.push_back(point("nick1_variant", "int_0^{pi/2} log(1 + cos t) dt = 2G - (pi/2) log 2",
                    "C(1) after x = sin t", route("log_one_plus_cos"),
                    closed({{2, B::catalan}, {-h, B::pi_log2}}), 1e-10));
  const Constant adamchik = {{16, B::log2}, {-32, B::catalan_over_pi}};
  r.push_back(point("adamchik_4f3", "4F3(1,1,3/2,3/2; 2,2,2; 1) = 16 log 2 - 32 G/pi",
                    "limit s -> 1 of the C(s) series; Adamchik's 4F3 family at n = 1",
                    pfq_at_one({1, 1, 1.5, 1.5}, {2, 2, 2}), closed(adamchik), 1e-9));
  const Constant campbell = {
      {16, B::log2}, {48, B::inv_pi}, {-32, B::catalan_over_pi}, {-16, B::one}};
  r.push_back(point("campbell_4f3",
                    "4F3(1/2,1/2,1,1; 2,2,2; 1) = 16 log 2 + 48/pi - 32 G/pi - 16",
                    "Campbell's Ramanujan-like series for 1/pi",
                    pfq_at_one({h, h, 1, 1}, {2, 2, 2}), closed(campbell), 1e-9));
  r.push_back(point("campbell_binomial",
                    "sum binom(2n,n)^2 / (16^n (n+1)^3) = 16 log 2 + 48/pi - 32 G/pi - 16",
                    "Campbell's series in central binomial form", binomial(3, 1, 0, 0),
                    closed(campbell), 1e-9));
  r.push_back(point("binom_bridge",
                    "sum (2n+1)^2 binom(2n,n)^2 / (16^n (n+1)^3) = 16 log 2 - 32 G/pi",
                    "the 4F3 value rewritten with central binomial coefficients",
                    binomial(3, 1, 4, 4), closed(adamchik), 1e-9));
  r.push_back(point("partial_fraction_split",
                    "sum 4n binom(2n,n)^2 / (16^n (n+1)^2) = 16 - 48/pi",
                    "the difference of the two split series", binomial(2, 0, 4, 0),
                    closed({{16, B::one}, {-48, B::inv_pi}}), 1e-9));
  r.push_back(point("first_split_series",
                    "sum 4 binom(2n,n)^2 / ((n+1) 16^n) = 4 2F1(1/2,1/2; 2; 1) = 16/pi",
                    "first split series by Gauss's theorem", binomial(1, 4, 0, 0),
                    EvaluatorSpec{"gauss_2f1", {h, h, 2}, {{4, B::one}}}, 1e-9));
  r.push_back(point("second_split_series",
                    "sum 4 binom(2n,n)^2 / ((n+1)^2 16^n) = 64/pi - 16",
                    "second split series", binomial(2, 4, 0, 0),
                    closed({{64, B::inv_pi}, {-16, B::one}}), 1e-9));
  r.push_back(point("gauss_chain", "2F1(1/2,1/2; 2; 1) = G(2)G(1)/G(3/2)^2 = 4/pi",
                    "Gauss's theorem at a = b = 1/2, c = 2", pfq_at_one({h, h}, {2}),
                    EvaluatorSpec{"gauss_2f1", {h, h, 2}}, 1e-10));

  r.push_back(point("pow1", "4F3(1,1,3/2,3/2; 2,2,3; 1) = 8 + 32 log 2 - 64 G/pi - 32/pi",
                    "first member of the 4F3 family from weighting C(s) by s",
                    pfq_at_one({1, 1, 1.5, 1.5}, {2, 2, 3}),
                    closed({{8, B::one}, {32, B::log2}, {-64, B::catalan_over_pi},
                            {-32, B::inv_pi}}),
                    1e-9));
  r.push_back(point("pow2", "4F3(1,1,3/2,3/2; 2,3,3; 1) = 96 + 64 log 2 - 128 G/pi - 320/pi",
                    "second member, weight s log s", pfq_at_one({1, 1, 1.5, 1.5}, {2, 3, 3}),
                    closed({{96, B::one}, {64, B::log2}, {-128, B::catalan_over_pi},
                            {-320, B::inv_pi}}),
                    1e-9));
  r.push_back(point("pow3", "4F3(1,1,3/2,3/2; 2,2,4; 1) = 18 + 48 log 2 - 96 G/pi - 208/(3 pi)",
                    "third member, Pochhammer rescaling (4)_n = (n+3)/3 (3)_n",
                    pfq_at_one({1, 1, 1.5, 1.5}, {2, 2, 4}),
                    closed({{18, B::one}, {48, B::log2}, {-96, B::catalan_over_pi},
                            {-208.0 / 3.0, B::inv_pi}}),
                    1e-9));
  r.push_back(point("s_c_bridge",
                    "int_0^1 s C(s) ds = (pi/4) log 2 - (pi/64) 4F3(1,1,3/2,3/2; 2,2,3; 1)",
                    "series side of the s-weighted C integral", route("nested.s_C"),
                    EvaluatorSpec{"pfq", [] {
                                    auto a = pfq_args({1, 1, 1.5, 1.5}, {2, 2, 3});
                                    a.push_back(1.0);
                                    return a;
                                  }(),
                                  {{-1.0 / 64.0, B::pi}}, 0, {{0.25, B::pi_log2}}},
                    1e-9));
  r.push_back(point("s_log_s_c_bridge",
                    "int_0^1 s log(s) C(s) ds = -(pi/8) log 2 + (pi/256) 4F3(1,1,3/2,3/2; 2,3,3; 1)",
                    "series side of the (s log s)-weighted C integral",
                    route("nested.s_log_s_C"),
                    EvaluatorSpec{"pfq", [] {
                                    auto a = pfq_args({1, 1, 1.5, 1.5}, {2, 3, 3});
                                    a.push_back(1.0);
                                    return a;
                                  }(),
                                  {{1.0 / 256.0, B::pi}}, 0, {{-0.125, B::pi_log2}}},
                    1e-9));
  r.push_back(point("s_one_minus_s2_c_bridge",
                    "int_0^1 s (1 - s^2) C(s) ds = (pi/8) log 2 - (pi/192) 4F3(1,1,3/2,3/2; 2,2,4; 1)",
                    "weight producing the (4)_n member", route("nested.s_one_minus_s2_C"),
                    EvaluatorSpec{"pfq", [] {
                                    auto a = pfq_args({1, 1, 1.5, 1.5}, {2, 2, 4});
                                    a.push_back(1.0);
                                    return a;
                                  }(),
                                  {{-1.0 / 192.0, B::pi}}, 0, {{0.125, B::pi_log2}}},
                    1e-9));
  const Constant s_weighted = {{0.5, B::one}, {-0.125, B::pi}, {1, B::catalan}, {-0.25, B::pi_log2}};
  const Constant s_log_s_weighted = {
      {0.375, B::pi}, {0.125, B::pi_log2}, {-0.5, B::catalan}, {-1.25, B::one}};
  r.push_back(point("ls23_inner", "int_0^1 s C(s) ds = 1/2 - pi/8 + G - (pi/4) log 2",
                    "the s-weighted double integral in elementary terms", route("nested.s_C"),
                    closed(s_weighted), 1e-8));
  r.push_back(point("ls23b_inner",
                    "int_0^1 s log(s) C(s) ds = 3pi/8 + (pi/8) log 2 - G/2 - 5/4",
                    "the (s log s)-weighted double integral in elementary terms",
                    route("nested.s_log_s_C"), closed(s_log_s_weighted), 1e-8));
  r.push_back(point("s_c_swapped",
                    "order-swapped single integral of s C(s) = 1/2 - pi/8 + G - (pi/4) log 2",
                    "inner s-integral done in closed form after switching the order",
                    route("swapped.s_C"), closed(s_weighted), 1e-10));
  r.push_back(point("s_log_s_c_swapped",
                    "order-swapped single integral of s log(s) C(s) = 3pi/8 + (pi/8) log 2 - G/2 - 5/4",
                    "inner s-integral done in closed form after switching the order",
                    route("swapped.s_log_s_C"), closed(s_log_s_weighted), 1e-10));

  r.push_back(point("b1_value", "B(1) = 1/2 + G", "B(1) in terms of G", route("B"),
                    closed({{h, B::one}, {1, B::catalan}}), 1e-10, 1.0));
  r.push_back(point("corollary_3f2", "1/2 + G = (pi/2) 3F2(-1/2,1/2,1/2; 1,3/2; 1)",
                    "limit s -> 1 of the B(s) series", closed({{h, B::one}, {1, B::catalan}}),
                    pfq_at_one({-h, h, h}, {1, 1.5}, {{h, B::pi}}), 1e-10));
  r.push_back(gridded("summa_relation", "C(s) + D(s) = pi log(s/2)",
                      "sum of the two log integrals", GridKind::custom, {0.2, 0.5, 0.8, 1.0},
                      route("C_plus_D"), EvaluatorSpec{"log_half_param", {}, {{1, B::pi}}},
                      1e-9));
  r.push_back(point("d_at_one", "D(1) = -(pi/2) log 2 - 2G", "D(1) from the sum relation",
                    route("D"), closed({{-h, B::pi_log2}, {-2, B::catalan}}), 1e-10, 1.0));

  r.push_back(derivative("a_derivative", "A'(s) = K(s)", "differentiating A under the integral",
                         route("diff.A"), route("K")));
  r.push_back(derivative("b_derivative", "B'(s) = E(s)", "differentiating B under the integral",
                         route("diff.B"), route("E")));
  r.push_back(derivative("c_derivative", "C'(s) = (pi/2 - K(s)) / s",
                         "differentiating C under the integral", route("diff.C"),
                         EvaluatorSpec{"K", {}, {{-1, B::one}}, 0, {{h, B::pi}}, -1}));
  r.push_back(derivative("eids1_derivative", "D'(s) = (pi/2 + K(s)) / s",
                         "differentiating D under the integral", route("diff.D"),
                         EvaluatorSpec{"K", {}, {{1, B::one}}, 0, {{h, B::pi}}, -1}));

  r.push_back(point("logsine", "int_0^{pi/2} log(sin x) dx = -(pi/2) log 2",
                    "Euler's log-sine integral", route("logsine"), closed({{-h, B::pi_log2}}),
                    1e-10));
  r.push_back(point("logcosine", "int_0^{pi/2} log(cos x) dx = -(pi/2) log 2",
                    "Euler's log-cosine integral", route("logcosine"),
                    closed({{-h, B::pi_log2}}), 1e-10));
  return r;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

VerificationResult failed(const Identity& idn, std::optional<double> param, double tol,
                          std::string why) {
  VerificationResult v;
  v.id = idn.id;
  v.citation = idn.citation;
  v.param = param;
  v.lhs = kNaN;
  v.rhs = kNaN;
  v.abs_residual = kNaN;
  v.rel_residual = kNaN;
  v.tol = tol;
  v.pass = false;
  v.diagnostic = std::move(why);
  return v;
}

}  // namespace

double basis_value(Basis b) {
  switch (b) {
    case Basis::one: return 1.0;
    case Basis::pi: return kPi;
    case Basis::inv_pi: return 1.0 / kPi;
    case Basis::log2: return kLn2;
    case Basis::pi_log2: return kPi * kLn2;
    case Basis::catalan: return kG;
    case Basis::catalan_over_pi: return kG / kPi;
  }
  return kNaN;
}

double constant_value(const Constant& c) {
  double v = 0.0;
  for (const Term& t : c) v += t.coeff * basis_value(t.basis);
  return v;
}

std::string to_string(const Constant& c) {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Term& t = c[i];
    const char* name = "";
    switch (t.basis) {
      case Basis::one: name = ""; break;
      case Basis::pi: name = "pi"; break;
      case Basis::inv_pi: name = "/pi"; break;
      case Basis::log2: name = "log2"; break;
      case Basis::pi_log2: name = "pi*log2"; break;
      case Basis::catalan: name = "G"; break;
      case Basis::catalan_over_pi: name = "G/pi"; break;
    }
    double coeff = t.coeff;
    if (i > 0) {
      out += coeff < 0 ? " - " : " + ";
      coeff = std::abs(coeff);
    }
    const bool bare = t.basis != Basis::one && t.basis != Basis::inv_pi && coeff == 1.0;
    if (bare) {
      out += name;
    } else if (t.basis == Basis::one || t.basis == Basis::inv_pi) {
      out += format_double(coeff) + name;
    } else {
      out += format_double(coeff) + "*" + name;
    }
  }
  return out;
}

std::string to_string(const EvaluatorSpec& e) {
  std::ostringstream os;
  os << e.route << "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) os << (i ? ", " : "") << format_double(e.args[i]);
  os << ")";
  const bool unit_scale = e.scale.size() == 1 && e.scale[0].basis == Basis::one &&
                          e.scale[0].coeff == 1.0;
  if (!unit_scale) os << " * [" << to_string(e.scale) << "]";
  if (e.param_power != 0) os << " * p^" << e.param_power;
  if (!e.offset.empty()) os << " + [" << to_string(e.offset) << "]";
  if (e.outer_power != 0) os << ", all * p^" << e.outer_power;
  return os.str();
}

std::vector<double> default_s_grid() { return make_grid(0.1, 0.9, 0.1); }

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw DomainError("grid: requires lo <= hi and step > 0");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    // Round to 12 digits so 0.1 steps land on the decimal grid points.
    const double v = std::round((lo + i * step) * 1e12) / 1e12;
    if (v > hi + 0.5 * step) break;
    g.push_back(v);
  }
  return g;
}

const std::vector<Identity>& registry() {
  static const std::vector<Identity> reg = build_registry();
  return reg;
}

const Identity* find_identity(const std::string& id) {
  for (const Identity& i : registry()) {
    if (i.id == id) return &i;
  }
  return nullptr;
}

std::vector<std::string> route_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : routes()) out.push_back(name);
  return out;
}

EvalResult evaluate(const EvaluatorSpec& spec, double p, const EvalContext& ctx) {
  const auto it = routes().find(spec.route);
  if (it == routes().end()) throw DomainError("unknown evaluation route '" + spec.route + "'");
  EvalResult r = it->second(spec.args, p, ctx);
  double factor = constant_value(spec.scale);
  if (spec.param_power != 0) factor *= std::pow(p, spec.param_power);
  r.value = constant_value(spec.offset) + factor * r.value;
  r.err_estimate *= std::abs(factor);
  if (spec.outer_power != 0) {
    const double outer = std::pow(p, spec.outer_power);
    r.value *= outer;
    r.err_estimate *= std::abs(outer);
  }
  return r;
}

std::vector<VerificationResult> verify(const std::string& id, std::optional<double> tol_override) {
  VerifyOptions o;
  o.tol_override = tol_override;
  return verify(id, o);
}

std::vector<VerificationResult> verify(const std::string& id, const VerifyOptions& opts) {
  const Identity* idn = find_identity(id);
  if (idn == nullptr) throw UnknownIdentityError("unknown identity '" + id + "'");
  return verify(*idn, opts);
}

std::vector<VerificationResult> verify(const Identity& identity, const VerifyOptions& opts) {
  const Identity* idn = &identity;
  const double tol = opts.tol_override.value_or(idn->tol);
  if (!(tol > 0.0)) throw DomainError("verify: tolerance must be positive");
  std::vector<double> points = idn->points;
  if (idn->grid != GridKind::point && opts.grid_override) points = *opts.grid_override;

  std::vector<VerificationResult> out;
  for (double p : points) {
    const std::optional<double> param = std::isnan(p) ? std::nullopt : std::optional<double>(p);
    const double arg = param.value_or(1.0);
    EvalResult lhs;
    EvalResult rhs;
    try {
      lhs = evaluate(idn->lhs, arg, opts.context);
    } catch (const std::exception& e) {
      out.push_back(failed(*idn, param, tol, std::string("lhs: ") + e.what()));
      continue;
    }
    try {
      rhs = evaluate(idn->rhs, arg, opts.context);
    } catch (const std::exception& e) {
      VerificationResult v = failed(*idn, param, tol, std::string("rhs: ") + e.what());
      v.lhs = lhs.value;
      v.lhs_method = lhs.method;
      v.effort = lhs.effort;
      out.push_back(std::move(v));
      continue;
    }
    VerificationResult v;
    v.id = idn->id;
    v.citation = idn->citation;
    v.param = param;
    v.lhs = lhs.value;
    v.rhs = rhs.value;
    v.abs_residual = std::abs(lhs.value - rhs.value);
    const double scale = std::max(std::abs(lhs.value), std::abs(rhs.value));
    v.rel_residual = scale > 0.0 ? v.abs_residual / scale : 0.0;
    v.tol = tol;
    v.lhs_method = lhs.method;
    v.rhs_method = rhs.method;
    v.effort = lhs.effort + rhs.effort;
    v.pass = v.abs_residual <= tol || v.rel_residual <= tol;
    if (lhs.method == rhs.method) {
      v.pass = false;
      v.diagnostic = "both sides evaluated by " + std::string(to_string(lhs.method));
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace hyperlab
