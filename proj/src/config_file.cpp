#include "ochaus/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ochaus/errors.hpp"

namespace ochaus {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
        throw DomainError("config: " + key + " expects a number, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
        throw DomainError("config: " + key + " expects an integer, got '" + v + "'");
    }
    return out;
}

// shortest text that parses back to v
std::string shortest(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{"rel_tol",           "abs_tol",      "max_subdivisions",
                                               "truncation_x",      "truncation_lambda", "truncation_t",
                                               "lambda_min",        "extremum_grid"};
    return keys;
}

void set_config_value(QuadConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "rel_tol") cfg.rel_tol = to_double(key, v);
    else if (key == "abs_tol") cfg.abs_tol = to_double(key, v);
    else if (key == "max_subdivisions") cfg.max_subdivisions = to_int(key, v);
    else if (key == "truncation_x") cfg.truncation_x = to_double(key, v);
    else if (key == "truncation_lambda") cfg.truncation_lambda = to_double(key, v);
    else if (key == "truncation_t") cfg.truncation_t = to_double(key, v);
    else if (key == "lambda_min") cfg.lambda_min = to_double(key, v);
    else if (key == "extremum_grid") cfg.extremum_grid = to_int(key, v);
    else throw DomainError("config: unknown key '" + key + "'");
}

QuadConfig parse_config_text(const std::string& text, QuadConfig base) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(n) + ": expected key = value");
        try {
            set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const DomainError& e) {
            throw DomainError("config line " + std::to_string(n) + ": " + e.what());
        }
    }
    base.validate();
    return base;
}

QuadConfig read_config_file(const std::string& path, QuadConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

std::string format_config(const QuadConfig& cfg) {
    std::ostringstream out;
    out << "rel_tol = " << shortest(cfg.rel_tol) << "\n";
    out << "abs_tol = " << shortest(cfg.abs_tol) << "\n";
    out << "max_subdivisions = " << cfg.max_subdivisions << "\n";
    out << "truncation_x = " << shortest(cfg.truncation_x) << "\n";
    out << "truncation_lambda = " << shortest(cfg.truncation_lambda) << "\n";
    out << "truncation_t = " << shortest(cfg.truncation_t) << "\n";
    out << "lambda_min = " << shortest(cfg.lambda_min) << "\n";
    out << "extremum_grid = " << cfg.extremum_grid << "\n";
    return out.str();
}

nlohmann::json config_to_json(const QuadConfig& cfg) {
    return nlohmann::json{{"rel_tol", cfg.rel_tol},
                          {"abs_tol", cfg.abs_tol},
                          {"max_subdivisions", cfg.max_subdivisions},
                          {"truncation_x", cfg.truncation_x},
                          {"truncation_lambda", cfg.truncation_lambda},
                          {"truncation_t", cfg.truncation_t},
                          {"lambda_min", cfg.lambda_min},
                          {"extremum_grid", cfg.extremum_grid}};
}

QuadConfig config_from_json(const nlohmann::json& j) {
    QuadConfig cfg;
    if (j.is_null()) return cfg;
    if (!j.is_object()) throw DomainError("config: expected a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "max_subdivisions" || key == "extremum_grid") {
            set_config_value(cfg, key, std::to_string(v.get<int>()));
            continue;
        }
        if (key == "rel_tol") cfg.rel_tol = v.get<double>();
        else if (key == "abs_tol") cfg.abs_tol = v.get<double>();
        else if (key == "truncation_x") cfg.truncation_x = v.get<double>();
        else if (key == "truncation_lambda") cfg.truncation_lambda = v.get<double>();
        else if (key == "truncation_t") cfg.truncation_t = v.get<double>();
        else if (key == "lambda_min") cfg.lambda_min = v.get<double>();
        else throw DomainError("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

}  // namespace ochaus
