#include "hyperlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <future>
#include <limits>
#include <map>

#include "hyperlab/errors.hpp"

namespace hyperlab {

using nlohmann::json;

namespace {

const std::map<Basis, std::string>& basis_names() {
  static const std::map<Basis, std::string> names = {
      {Basis::one, "1"},       {Basis::pi, "pi"},           {Basis::inv_pi, "1/pi"},
      {Basis::log2, "log2"},   {Basis::pi_log2, "pi*log2"}, {Basis::catalan, "G"},
      {Basis::catalan_over_pi, "G/pi"}};
  return names;
}

Basis basis_from_string(const std::string& s) {
  for (const auto& [b, name] : basis_names()) {
    if (name == s) return b;
  }
  throw std::invalid_argument("unknown basis constant '" + s + "'");
}

json to_json(const Constant& c) {
  json arr = json::array();
  for (const Term& t : c) arr.push_back({{"coeff", format_number(t.coeff)}, {"basis", basis_names().at(t.basis)}});
  return arr;
}

Constant constant_from_json(const json& j) {
  Constant c;
  for (const json& t : j) {
    c.push_back(Term{parse_number(t.at("coeff").get<std::string>()),
                     basis_from_string(t.at("basis").get<std::string>())});
  }
  return c;
}

json to_json(const EvaluatorSpec& e) {
  json args = json::array();
  for (double a : e.args) args.push_back(format_number(a));
  return {{"route", e.route},         {"args", args},
          {"scale", to_json(e.scale)}, {"param_power", e.param_power},
          {"offset", to_json(e.offset)}, {"outer_power", e.outer_power},
          {"text", to_string(e)}};
}

EvaluatorSpec spec_from_json(const json& j) {
  EvaluatorSpec e;
  e.route = j.at("route").get<std::string>();
  for (const json& a : j.at("args")) e.args.push_back(parse_number(a.get<std::string>()));
  e.scale = constant_from_json(j.at("scale"));
  e.param_power = j.at("param_power").get<int>();
  e.offset = constant_from_json(j.at("offset"));
  e.outer_power = j.at("outer_power").get<int>();
  return e;
}

std::string grid_name(GridKind g) {
  switch (g) {
    case GridKind::point: return "point";
    case GridKind::s_grid: return "s_grid";
    case GridKind::custom: return "custom";
  }
  return "point";
}

GridKind grid_from_string(const std::string& s) {
  if (s == "point") return GridKind::point;
  if (s == "s_grid") return GridKind::s_grid;
  if (s == "custom") return GridKind::custom;
  throw std::invalid_argument("unknown grid kind '" + s + "'");
}

json optional_number(const std::optional<double>& v) {
  return v ? json(format_number(*v)) : json(nullptr);
}

json optional_method(const std::optional<Method>& m) {
  return m ? json(std::string(to_string(*m))) : json(nullptr);
}

std::optional<Method> method_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  auto m = method_from_string(j.get<std::string>());
  if (!m) throw std::invalid_argument("unknown method tag '" + j.get<std::string>() + "'");
  return m;
}

json to_json(const VerificationResult& v) {
  return {{"id", v.id},
          {"citation", v.citation},
          {"param", optional_number(v.param)},
          {"lhs", format_number(v.lhs)},
          {"rhs", format_number(v.rhs)},
          {"abs_residual", format_number(v.abs_residual)},
          {"rel_residual", format_number(v.rel_residual)},
          {"tol", format_number(v.tol)},
          {"pass", v.pass},
          {"lhs_method", optional_method(v.lhs_method)},
          {"rhs_method", optional_method(v.rhs_method)},
          {"effort", v.effort},
          {"diagnostic", v.diagnostic}};
}

VerificationResult record_from_json(const json& j) {
  VerificationResult v;
  v.id = j.at("id").get<std::string>();
  v.citation = j.at("citation").get<std::string>();
  if (!j.at("param").is_null()) v.param = parse_number(j.at("param").get<std::string>());
  v.lhs = parse_number(j.at("lhs").get<std::string>());
  v.rhs = parse_number(j.at("rhs").get<std::string>());
  v.abs_residual = parse_number(j.at("abs_residual").get<std::string>());
  v.rel_residual = parse_number(j.at("rel_residual").get<std::string>());
  v.tol = parse_number(j.at("tol").get<std::string>());
  v.pass = j.at("pass").get<bool>();
  v.lhs_method = method_from_json(j.at("lhs_method"));
  v.rhs_method = method_from_json(j.at("rhs_method"));
  v.effort = j.at("effort").get<std::int64_t>();
  v.diagnostic = j.value("diagnostic", "");
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportSummary summarize(const std::vector<VerificationResult>& records) {
  ReportSummary s;
  std::map<std::string, std::size_t> index;
  for (const VerificationResult& v : records) {
    auto [it, fresh] = index.try_emplace(v.id, s.identities.size());
    if (fresh) s.identities.push_back(IdentitySummary{v.id, 0, 0, 0.0, 0, true});
    IdentitySummary& is = s.identities[it->second];
    ++is.points;
    ++s.points;
    if (v.pass) {
      ++is.passed;
      ++s.points_passed;
    } else {
      is.pass = false;
      ++s.points_failed;
    }
    const double res = std::isnan(v.abs_residual) ? std::numeric_limits<double>::infinity()
                                                  : v.abs_residual;
    is.worst_residual = std::max(is.worst_residual, res);
    s.worst_residual = std::max(s.worst_residual, res);
    is.effort += v.effort;
    s.total_effort += v.effort;
  }
  s.total = static_cast<int>(s.identities.size());
  for (const IdentitySummary& is : s.identities) (is.pass ? s.passed : s.failed)++;
  return s;
}

namespace {

using Job = std::function<std::vector<VerificationResult>(std::size_t)>;

// Runs job(0..n-1), concurrently if asked, and concatenates the results in
// index order so scheduling never shows in the report.
Report collect(std::size_t n, const Job& job, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<VerificationResult>> batches(n);
  if (parallel) {
    std::vector<std::future<std::vector<VerificationResult>>> futures;
    futures.reserve(n);
    for (std::size_t i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, job, i));
    for (std::size_t i = 0; i < n; ++i) batches[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < n; ++i) batches[i] = job(i);
  }
  Report r;
  r.timestamp = utc_timestamp();
  for (auto& batch : batches) {
    for (auto& v : batch) r.records.push_back(std::move(v));
  }
  r.summary = summarize(r.records);
  r.summary.wallclock =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

Report verify_ids(const std::vector<std::string>& ids, const VerifyOptions& opts, bool parallel) {
  for (const std::string& id : ids) {
    if (find_identity(id) == nullptr) throw UnknownIdentityError("unknown identity '" + id + "'");
  }
  return collect(ids.size(), [&](std::size_t i) { return verify(ids[i], opts); }, parallel);
}

Report verify_all(double tol_scale, const VerifyOptions& opts, bool parallel) {
  if (!(tol_scale > 0.0)) throw DomainError("verify_all: tol_scale must be positive");
  const auto& reg = registry();
  return collect(
      reg.size(),
      [&](std::size_t i) {
        VerifyOptions o = opts;
        o.tol_override = opts.tol_override.value_or(reg[i].tol) * tol_scale;
        return verify(reg[i].id, o);
      },
      parallel);
}

json to_json(const Report& r) {
  json records = json::array();
  for (const VerificationResult& v : r.records) records.push_back(to_json(v));
  json per_id = json::array();
  for (const IdentitySummary& is : r.summary.identities) {
    per_id.push_back({{"id", is.id},
                      {"points", is.points},
                      {"passed", is.passed},
                      {"worst_residual", format_number(is.worst_residual)},
                      {"effort", is.effort},
                      {"pass", is.pass}});
  }
  const ReportSummary& s = r.summary;
  return {{"version", r.version},
          {"timestamp", r.timestamp},
          {"records", records},
          {"summary",
           {{"total", s.total},
            {"passed", s.passed},
            {"failed", s.failed},
            {"points", s.points},
            {"points_passed", s.points_passed},
            {"points_failed", s.points_failed},
            {"worst_residual", format_number(s.worst_residual)},
            {"total_effort", s.total_effort},
            {"wallclock", format_number(s.wallclock)},
            {"identities", per_id}}}};
}

Report report_from_json(const json& j) {
  Report r;
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.value("timestamp", "");
  for (const json& rec : j.at("records")) r.records.push_back(record_from_json(rec));
  r.summary = summarize(r.records);
  const json& s = j.at("summary");
  if (s.contains("wallclock")) r.summary.wallclock = parse_number(s.at("wallclock").get<std::string>());
  return r;
}

json to_json(const Identity& i) {
  json points = json::array();
  for (double p : i.points) points.push_back(std::isnan(p) ? json(nullptr) : json(format_number(p)));
  return {{"id", i.id},
          {"description", i.description},
          {"citation", i.citation},
          {"grid", grid_name(i.grid)},
          {"points", points},
          {"lhs", to_json(i.lhs)},
          {"rhs", to_json(i.rhs)},
          {"tol", format_number(i.tol)},
          {"finite_difference", i.finite_difference}};
}

Identity identity_from_json(const json& j) {
  Identity i;
  i.id = j.at("id").get<std::string>();
  i.description = j.at("description").get<std::string>();
  i.citation = j.at("citation").get<std::string>();
  i.grid = grid_from_string(j.at("grid").get<std::string>());
  for (const json& p : j.at("points")) {
    i.points.push_back(p.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                   : parse_number(p.get<std::string>()));
  }
  i.lhs = spec_from_json(j.at("lhs"));
  i.rhs = spec_from_json(j.at("rhs"));
  i.tol = parse_number(j.at("tol").get<std::string>());
  i.finite_difference = j.at("finite_difference").get<bool>();
  return i;
}

json catalog_json() {
  json ids = json::array();
  for (const Identity& i : registry()) ids.push_back(to_json(i));
  return {{"version", std::string(kVersion)}, {"identities", ids}};
}

std::vector<std::string> validate_report_json(const json& j) {
  std::vector<std::string> errs;
  auto need = [&](const json& obj, const char* key, auto pred, const char* what,
                  const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      errs.push_back(where + ": missing '" + key + "'");
      return false;
    }
    if (!pred(obj.at(key))) {
      errs.push_back(where + ": '" + key + "' must be " + what);
      return false;
    }
    return true;
  };
  auto is_str = [](const json& v) { return v.is_string(); };
  auto is_num_str = [](const json& v) {
    if (!v.is_string()) return false;
    try {
      parse_number(v.get<std::string>());
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };
  auto is_opt_num_str = [&](const json& v) { return v.is_null() || is_num_str(v); };
  auto is_method = [](const json& v) {
    return v.is_null() || (v.is_string() && method_from_string(v.get<std::string>()).has_value());
  };
  auto is_bool = [](const json& v) { return v.is_boolean(); };
  auto is_int = [](const json& v) { return v.is_number_integer(); };
  auto is_arr = [](const json& v) { return v.is_array(); };
  auto is_obj = [](const json& v) { return v.is_object(); };

  if (!j.is_object()) return {"report: not a JSON object"};
  need(j, "version", is_str, "a string", "report");
  const bool have_records = need(j, "records", is_arr, "an array", "report");
  const bool have_summary = need(j, "summary", is_obj, "an object", "report");

  int passed = 0;
  int count = 0;
  if (have_records) {
    for (const json& rec : j.at("records")) {
      const std::string where = "records[" + std::to_string(count++) + "]";
      need(rec, "id", is_str, "a string", where);
      need(rec, "citation", is_str, "a string", where);
      need(rec, "param", is_opt_num_str, "null or a numeric string", where);
      for (const char* k : {"lhs", "rhs", "abs_residual", "rel_residual", "tol"}) {
        need(rec, k, is_num_str, "a numeric string", where);
      }
      if (need(rec, "pass", is_bool, "a boolean", where) && rec.at("pass").get<bool>()) ++passed;
      need(rec, "lhs_method", is_method, "null or a method tag", where);
      need(rec, "rhs_method", is_method, "null or a method tag", where);
      need(rec, "effort", is_int, "an integer", where);
    }
  }
  if (have_summary) {
    const json& s = j.at("summary");
    for (const char* k : {"total", "passed", "failed"}) need(s, k, is_int, "an integer", "summary");
    need(s, "worst_residual", is_num_str, "a numeric string", "summary");
    if (errs.empty() && have_records) {
      if (s.contains("points") && s.at("points").get<int>() != count) {
        errs.push_back("summary: points does not match the record count");
      }
      if (s.contains("points_passed") && s.at("points_passed").get<int>() != passed) {
        errs.push_back("summary: points_passed does not match the records");
      }
      if (s.at("passed").get<int>() + s.at("failed").get<int>() != s.at("total").get<int>()) {
        errs.push_back("summary: passed + failed != total");
      }
    }
  }
  return errs;
}

}  // namespace hyperlab
