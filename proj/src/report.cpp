#include "pbtk/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbtk/errors.hpp"

namespace pbtk {

bool VerificationReport::add(std::string check, double residual, double tolerance, Json context) {
    const bool pass = !std::isnan(residual) && residual <= tolerance;
    entries_.push_back({std::move(check), residual, tolerance, pass, std::move(context)});
    return pass;
}

void VerificationReport::warn(std::string message) { warnings_.push_back(std::move(message)); }

void VerificationReport::merge(const VerificationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

ReportSummary VerificationReport::summary() const {
    ReportSummary s;
    s.total = entries_.size();
    s.passed = static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.pass; }));
    s.failed = s.total - s.passed;
    return s;
}

bool VerificationReport::all_passed() const { return summary().failed == 0; }

const CheckEntry* VerificationReport::find(const std::string& check) const {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const CheckEntry& e) { return e.check == check; });
    return it == entries_.end() ? nullptr : &*it;
}

double VerificationReport::max_residual(const std::string& prefix) const {
    double worst = 0.0;
    for (const auto& e : entries_) {
        if (e.check.rfind(prefix, 0) == 0) worst = std::max(worst, e.residual);
    }
    return worst;
}

namespace {

// JSON has no NaN/Inf; encode them as strings so reports stay parseable.
Json number_or_string(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double parse_number(const Json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("report: bad numeric field '" + s + "'");
}

}  // namespace

Json VerificationReport::to_json() const {
    Json entries = Json::array();
    for (const auto& e : entries_) {
        Json row;
        row["check"] = e.check;
        row["residual"] = number_or_string(e.residual);
        row["tolerance"] = number_or_string(e.tolerance);
        row["pass"] = e.pass;
        if (!e.context.empty()) row["context"] = e.context;
        entries.push_back(std::move(row));
    }
    const auto s = summary();
    Json out;
    out["entries"] = std::move(entries);
    out["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}};
    out["warnings"] = warnings_;
    return out;
}

VerificationReport VerificationReport::from_json(const Json& j) {
    VerificationReport r;
    for (const auto& row : j.at("entries")) {
        r.add(row.at("check").get<std::string>(), parse_number(row.at("residual")),
              parse_number(row.at("tolerance")), row.value("context", Json::object()));
    }
    if (j.contains("warnings")) {
        for (const auto& w : j.at("warnings")) r.warn(w.get<std::string>());
    }
    return r;
}

}  // namespace pbtk
