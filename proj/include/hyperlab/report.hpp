#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperlab/identities.hpp"

namespace hyperlab {

inline constexpr std::string_view kVersion = "1.0.0";

struct IdentitySummary {
  std::string id;
  int points = 0;
  int passed = 0;
  double worst_residual = 0.0;
  std::int64_t effort = 0;
  bool pass = false;
};

/// `total`, `passed` and `failed` count identities; the `points_*` fields
/// count records.
struct ReportSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int points = 0;
  int points_passed = 0;
  int points_failed = 0;
  double worst_residual = 0.0;
  std::int64_t total_effort = 0;
  double wallclock = 0.0;
  std::vector<IdentitySummary> identities;
};

struct Report {
  std::string version{kVersion};
  std::string timestamp;
  std::vector<VerificationResult> records;
  ReportSummary summary;
};

/// Verifies the given identities (concurrently when `parallel`) and
/// assembles the records in the order of `ids`. Throws
/// UnknownIdentityError before any work if an id is unknown.
Report verify_ids(const std::vector<std::string>& ids, const VerifyOptions& opts = {},
                  bool parallel = true);

/// Every registry identity with each tolerance multiplied by `tol_scale`.
Report verify_all(double tol_scale = 1.0, const VerifyOptions& opts = {}, bool parallel = true);

/// Recomputes the summary from the records.
ReportSummary summarize(const std::vector<VerificationResult>& records);

/// Decimal string with 15 significant digits; "nan", "inf", "-inf" for
/// non-finite values.
std::string format_number(double v);
double parse_number(const std::string& s);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Identity& i);
Identity identity_from_json(const nlohmann::json& j);
nlohmann::json catalog_json();

/// Structural check of a serialized report: required fields, their types
/// and the summary tallies. Returns one message per problem.
std::vector<std::string> validate_report_json(const nlohmann::json& j);

std::string utc_timestamp();

}  // namespace hyperlab
