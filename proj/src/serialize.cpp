#include "gnncert/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace gnncert {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json constants = nlohmann::json::object();
    for (const auto& [k, v] : report.constants) constants[k] = v;
    return {
        {"metric", metric_name(report.metric)},
        {"provenance", provenance_name(report.provenance)},
        {"value", report.value},
        {"effective", report.effective},
        {"constants", constants},
    };
}

nlohmann::json to_json(const LocalizationReport& report) {
    return {
        {"mode", mode_name(report.mode)},
        {"p_limit", report.p_limit},
        {"c_bound", report.c_bound},
        {"interval", {report.lo, report.hi}},
    };
}

nlohmann::json to_json(const EmpiricalEstimate& estimate) {
    return {
        {"statistic", statistic_name(estimate.statistic)},
        {"value", estimate.value},
        {"mc_halfwidth", estimate.mc_halfwidth},
        {"m", estimate.m},
    };
}

nlohmann::json to_json(const ValidationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const ValidationCheck& c : report.checks) {
        nlohmann::json detail = nlohmann::json::object();
        for (const auto& [k, v] : c.detail) detail[k] = v;
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"limit", c.limit},
                          {"pass", c.pass},
                          {"detail", detail}});
    }
    return {
        {"preset", report.preset},
        {"seed", report.seed},
        {"samples", report.samples},
        {"pass", report.pass},
        {"checks", checks},
    };
}

std::string bounds_csv(std::span<const BoundReport> reports) {
    std::string out = "metric,provenance,value,effective\n";
    for (const BoundReport& r : reports)
        out += std::string(metric_name(r.metric)) + "," + provenance_name(r.provenance) + "," +
               format_double(r.value) + "," + format_double(r.effective) + "\n";
    return out;
}

std::string localization_csv(const LocalizationReport& r) {
    return "mode,p_limit,c_bound,lo,hi\n" + std::string(mode_name(r.mode)) + "," +
           format_double(r.p_limit) + "," + format_double(r.c_bound) + "," + format_double(r.lo) +
           "," + format_double(r.hi) + "\n";
}

std::string validation_csv(const ValidationReport& rep) {
    std::string out = "check,value,limit,pass\n";
    for (const ValidationCheck& c : rep.checks)
        out += c.name + "," + format_double(c.value) + "," + format_double(c.limit) + "," +
               (c.pass ? "true" : "false") + "\n";
    return out;
}

std::string bounds_text(std::span<const BoundReport> reports) {
    std::ostringstream os;
    for (const BoundReport& r : reports) {
        os << metric_name(r.metric) << " <= " << format_double(r.value) << "  ["
           << provenance_name(r.provenance) << "]\n";
        for (const auto& [k, v] : r.constants) os << "  " << k << " = " << format_double(v) << "\n";
    }
    return os.str();
}

std::string localization_text(const LocalizationReport& r) {
    std::ostringstream os;
    os << "mode      " << mode_name(r.mode) << "\n"
       << "p_limit   " << format_double(r.p_limit) << "\n"
       << "c_bound   " << format_double(r.c_bound) << "\n"
       << "interval  [" << format_double(r.lo) << ", " << format_double(r.hi) << "]\n";
    return os.str();
}

std::string validation_text(const ValidationReport& rep) {
    std::ostringstream os;
    os << "preset " << rep.preset << "  samples " << rep.samples << "  seed " << rep.seed << "\n";
    for (const ValidationCheck& c : rep.checks)
        os << (c.pass ? "  ok   " : "  FAIL ") << c.name << "  value " << format_double(c.value)
           << "  limit " << format_double(c.limit) << "\n";
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace gnncert
