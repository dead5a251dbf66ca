#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ochaus/scenario.hpp"

namespace ochaus {

enum class ReportFormat { json, csv };

/// Throws DomainError for anything but "json" or "csv".
ReportFormat parse_report_format(const std::string& name);

/// Numbers print with %.17g; inf and nan become the strings "inf", "-inf", "nan".
nlohmann::json number_json(double v);
nlohmann::json report_to_json(const VerifyReport& r);
std::string reports_to_json_text(const std::vector<VerifyReport>& reports);
/// One header line plus one row per report.
std::string reports_to_csv(const std::vector<VerifyReport>& reports);

/// Writes to `path` ("-" for stdout). Returns 0 iff no report failed.
/// Throws std::runtime_error naming the path when it cannot be written.
int emit_report(const std::vector<VerifyReport>& reports, ReportFormat format, const std::string& path);

}  // namespace ochaus
