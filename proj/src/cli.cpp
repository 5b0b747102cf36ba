#include "hyperlab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlab/elliptic.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/integrals.hpp"
#include "hyperlab/report.hpp"
#include "hyperlab/sfcore.hpp"

namespace hyperlab {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Flags {
  std::optional<double> tol;
  std::int64_t max_terms = kDirectSeriesCap;
  int quad_level = kDefaultQuadLevel;
  bool json = false;
};

struct EvalArgs {
  std::string name;
  std::vector<std::string> args;
  std::string method = "beta_series";
};

struct VerifyArgs {
  std::vector<std::string> ids;
  bool all = false;
  std::string grid;
};

double to_double(const std::string& s) {
  try {
    return parse_number(s);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
}

std::vector<double> numbers(const std::vector<std::string>& args) {
  std::vector<double> v;
  for (const std::string& a : args) v.push_back(to_double(a));
  return v;
}

void expect_arity(const EvalArgs& e, std::size_t n) {
  if (e.args.size() != n) {
    throw UsageError("eval " + e.name + " takes " + std::to_string(n) + " argument" +
                     (n == 1 ? "" : "s") + ", got " + std::to_string(e.args.size()));
  }
}

EvalResult run_eval(const EvalArgs& e, const Flags& f) {
  const double tol = f.tol.value_or(kDefaultTol);
  IntegralOptions io;
  io.tol = tol;
  io.max_level = f.quad_level;
  const std::vector<double> a = numbers(e.args);

  if (e.name == "K" || e.name == "E") {
    expect_arity(e, 1);
    return e.name == "K" ? ellipk_eval(Modulus{a[0]}) : ellipe_eval(Modulus{a[0]});
  }
  if (e.name == "A" || e.name == "B" || e.name == "C" || e.name == "D") {
    expect_arity(e, 1);
    switch (e.name[0]) {
      case 'A': return integral_A_eval(a[0], io);
      case 'B': return integral_B_eval(a[0], io);
      case 'C': return integral_C_eval(a[0], io);
      default: return integral_D_eval(a[0], io);
    }
  }
  if (e.name == "G") {
    expect_arity(e, 0);
    const auto m = catalan_method_from_string(e.method);
    if (!m) throw UsageError("unknown method '" + e.method + "'");
    return catalan_eval(*m, io);
  }
  if (e.name == "pfq") {
    // pfq p q a_1..a_p b_1..b_q x
    if (a.size() < 3) throw UsageError("usage: eval pfq p q a_1..a_p b_1..b_q x");
    const double p = a[0];
    const double q = a[1];
    if (p < 0 || q < 0 || p != std::floor(p) || q != std::floor(q)) {
      throw UsageError("pfq: p and q must be non-negative integers");
    }
    const auto np = static_cast<std::size_t>(p);
    const auto nq = static_cast<std::size_t>(q);
    if (a.size() != 3 + np + nq) {
      throw UsageError("pfq: expected " + std::to_string(3 + np + nq) + " numbers after 'pfq'");
    }
    PFQParams params;
    params.upper.assign(a.begin() + 2, a.begin() + 2 + static_cast<std::ptrdiff_t>(np));
    params.lower.assign(a.begin() + 2 + static_cast<std::ptrdiff_t>(np), a.end() - 1);
    params.argument = a.back();
    SeriesOptions so;
    so.tol = tol;
    so.max_terms = f.max_terms;
    return pfq(params, so);
  }
  throw UsageError("unknown function '" + e.name + "' (expected K, E, pfq, A, B, C, D or G)");
}

std::string call_text(const EvalArgs& e) {
  std::string s = e.name + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + e.args[i];
  s += ")";
  if (e.name == "G") s = "G[" + e.method + "]";
  return s;
}

void print_eval(const EvalArgs& e, const EvalResult& r, const Flags& f, std::ostream& out) {
  if (f.json) {
    json args = json::array();
    for (const std::string& a : e.args) args.push_back(a);
    json j = {{"name", e.name},
              {"args", args},
              {"value", format_number(r.value)},
              {"err_estimate", format_number(r.err_estimate)},
              {"effort", r.effort},
              {"converged", r.converged},
              {"method", std::string(to_string(r.method))}};
    if (e.name == "G") j["route"] = e.method;
    out << j.dump(2) << "\n";
    return;
  }
  out << call_text(e) << " = " << format_number(r.value) << "  (err " << format_number(r.err_estimate)
      << ", " << to_string(r.method) << ", effort " << r.effort << ")\n";
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--grid expects lo:hi:step, got '" + spec + "'");
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (!(step > 0.0) || !(lo <= hi)) throw UsageError("--grid requires lo <= hi and step > 0");
  return make_grid(lo, hi, step);
}

std::string valid_ids() {
  std::string s;
  for (const Identity& i : registry()) s += "  " + i.id + "\n";
  return s;
}

void print_table(const Report& r, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-6s %-20s %-20s %-10s %-8s %s\n", "id", "param", "lhs",
                "rhs", "residual", "tol", "result");
  out << line;
  for (const VerificationResult& v : r.records) {
    const std::string param = v.param ? format_number(*v.param) : "-";
    std::snprintf(line, sizeof line, "%-24s %-6s %-20s %-20s %-10.2e %-8.0e %s", v.id.c_str(),
                  param.c_str(), format_number(v.lhs).c_str(), format_number(v.rhs).c_str(),
                  v.abs_residual, v.tol, v.pass ? "pass" : "FAIL");
    out << line;
    if (!v.diagnostic.empty()) out << "  " << v.diagnostic;
    out << "\n";
  }
  const ReportSummary& s = r.summary;
  std::snprintf(line, sizeof line,
                "%d identities: %d passed, %d failed (%d points, worst residual %.2e, %.2f s)\n",
                s.total, s.passed, s.failed, s.points, s.worst_residual, s.wallclock);
  out << line;
}

int run_verify(const VerifyArgs& v, const Flags& f, std::ostream& out) {
  VerifyOptions opts;
  opts.tol_override = f.tol;
  opts.context.max_terms = f.max_terms;
  opts.context.quad.max_level = f.quad_level;
  if (!v.grid.empty()) opts.grid_override = parse_grid(v.grid);

  std::vector<std::string> ids = v.ids;
  if (v.all) {
    ids.clear();
    for (const Identity& i : registry()) ids.push_back(i.id);
  }
  const Report r = verify_ids(ids, opts);
  if (f.json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    print_table(r, out);
  }
  return r.summary.failed == 0 ? kExitOk : kExitFailure;
}

void run_catalog(const Flags& f, std::ostream& out) {
  if (f.json) {
    out << catalog_json().dump(2) << "\n";
    return;
  }
  for (const Identity& i : registry()) {
    char line[64];
    std::snprintf(line, sizeof line, "%-24s tol %-6.0e  ", i.id.c_str(), i.tol);
    out << line << i.citation << "\n";
  }
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tol", f.tol, "Tolerance (eval: target accuracy; verify: pass threshold)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-terms", f.max_terms, "Term cap for direct series summation")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  cmd->add_option("--quad-level", f.quad_level, "Tanh-sinh refinement level cap")
      ->check(CLI::Range(0, kMaxQuadLevel));
  cmd->add_flag("--json", f.json, "Machine-readable JSON output");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Catalan's constant, elliptic integrals and hypergeometric identities",
               "catalan-hyperlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Flags flags;
  EvalArgs eval_args;
  VerifyArgs verify_args;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate K, E, pfq, A, B, C, D or G");
  eval->add_option("name", eval_args.name, "Function name")->required();
  eval->add_option("args", eval_args.args, "Numeric arguments");
  eval->add_option("--method", eval_args.method,
                   "Route for G: beta_series, k_integral, e_integral, arctan_integral, "
                   "arcsin_integral");
  add_common(eval, flags);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Verify identities numerically");
  verify_cmd->add_option("ids", verify_args.ids, "Identity ids");
  verify_cmd->add_flag("--all", verify_args.all, "Verify every identity");
  verify_cmd->add_option("--grid", verify_args.grid, "Parameter grid lo:hi:step for parametric identities");
  add_common(verify_cmd, flags);

  CLI::App* catalog = app.add_subcommand("catalog", "List the identity registry");
  catalog->add_flag("--json", flags.json, "Machine-readable JSON output");

  std::ostringstream buf;
  std::ostringstream ebuf;
  auto flush = [&](int code) {
    out << buf.str();
    err << ebuf.str();
    out.flush();
    err.flush();
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, buf, ebuf);
    return flush(code == 0 ? kExitOk : kExitUsage);
  }

  try {
    if (eval->parsed()) {
      const EvalResult r = run_eval(eval_args, flags);
      print_eval(eval_args, r, flags, buf);
      return flush(kExitOk);
    }
    if (verify_cmd->parsed()) {
      if (verify_args.all == !verify_args.ids.empty()) {
        throw UsageError("verify takes identity ids or --all (not both)");
      }
      return flush(run_verify(verify_args, flags, buf));
    }
    run_catalog(flags, buf);
    return flush(kExitOk);
  } catch (const UsageError& e) {
    ebuf << "error: " << e.what() << "\n";
    return flush(kExitUsage);
  } catch (const UnknownIdentityError& e) {
    ebuf << "error: " << e.what() << "; valid ids:\n" << valid_ids();
    return flush(kExitUsage);
  } catch (const std::exception& e) {
    ebuf << "error: " << e.what() << "\n";
    return flush(kExitFailure);
  }
}

}  // namespace hyperlab
