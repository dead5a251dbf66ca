#include "ochaus/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ochaus/errors.hpp"

namespace ochaus {

using nlohmann::json;

namespace {

std::string g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// nlohmann would write inf/nan as null
json fix_numbers(const json& j) {
    if (j.is_number_float()) return number_json(j.get<double>());
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto& v : out) v = fix_numbers(v);
        return out;
    }
    return j;
}

// like json::dump(2) but floats use %.17g
void dump(const json& j, std::ostringstream& os, int indent) {
    const std::string pad(indent + 2, ' ');
    if (j.is_number_float()) {
        os << g17(j.get<double>());
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << pad;
            dump(j[i], os, indent + 2);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        os << std::string(indent, ' ') << ']';
    } else if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            os << pad << json(it.key()).dump() << ": ";
            dump(it.value(), os, indent + 2);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        os << std::string(indent, ' ') << '}';
    } else {
        os << j.dump();
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw DomainError("unknown report format '" + name + "' (json or csv)");
}

json number_json(double v) {
    if (!std::isfinite(v)) return g17(v);
    return v;
}

json report_to_json(const VerifyReport& r) {
    json j;
    j["key"] = r.scenario.key;
    j["theorem_id"] = to_string(r.scenario.theorem_id);
    j["params"] = {{"alpha", number_json(r.scenario.params.alpha())}, {"beta", number_json(r.scenario.params.beta())}};
    j["lhs"] = number_json(r.lhs);
    j["rhs"] = number_json(r.rhs);
    j["ratio"] = number_json(r.ratio);
    j["tolerance"] = number_json(r.tolerance);
    j["status"] = to_string(r.status);
    j["err_breakdown"] = {{"quadrature", number_json(r.err.quadrature)}, {"model", number_json(r.err.model)}};
    j["message"] = r.message;
    j["scenario"] = fix_numbers(r.scenario.to_json());
    j["detail"] = fix_numbers(r.detail);
    return j;
}

std::string reports_to_json_text(const std::vector<VerifyReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    std::ostringstream os;
    dump(arr, os, 0);
    os << '\n';
    return os.str();
}

std::string reports_to_csv(const std::vector<VerifyReport>& reports) {
    std::ostringstream os;
    os << "key,theorem_id,alpha,beta,lhs,rhs,ratio,tolerance,status,err_quadrature,err_model,message\n";
    for (const auto& r : reports) {
        os << csv_field(r.scenario.key) << ',' << to_string(r.scenario.theorem_id) << ','
           << g17(r.scenario.params.alpha()) << ',' << g17(r.scenario.params.beta()) << ',' << g17(r.lhs) << ','
           << g17(r.rhs) << ',' << g17(r.ratio) << ',' << g17(r.tolerance) << ',' << to_string(r.status) << ','
           << g17(r.err.quadrature) << ',' << g17(r.err.model) << ',' << csv_field(r.message) << '\n';
    }
    return os.str();
}

int emit_report(const std::vector<VerifyReport>& reports, ReportFormat format, const std::string& path) {
    const std::string text = format == ReportFormat::json ? reports_to_json_text(reports) : reports_to_csv(reports);
    if (path == "-") {
        std::cout << text << std::flush;
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open report file '" + path + "' for writing");
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("write to report file '" + path + "' failed");
    }
    for (const auto& r : reports) {
        if (r.status == Status::fail) return 1;
    }
    return 0;
}

}  // namespace ochaus
