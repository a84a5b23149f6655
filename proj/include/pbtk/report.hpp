#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace pbtk {

using Json = nlohmann::ordered_json;

struct CheckEntry {
    std::string check;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Json context = Json::object();
};

struct ReportSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

/// Ordered list of residual checks. An entry passes iff residual <= tolerance
/// (a NaN residual never passes).
class VerificationReport {
public:
    /// Adds an entry and returns its pass flag.
    bool add(std::string check, double residual, double tolerance, Json context = Json::object());

    void warn(std::string message);

    /// Appends every entry and warning of `other`.
    void merge(const VerificationReport& other);

    const std::vector<CheckEntry>& entries() const noexcept { return entries_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    ReportSummary summary() const;
    bool all_passed() const;

    /// First entry with the given name, or nullptr.
    const CheckEntry* find(const std::string& check) const;

    /// Largest residual over entries whose name starts with `prefix`.
    double max_residual(const std::string& prefix) const;

    Json to_json() const;
    static VerificationReport from_json(const Json& j);

private:
    std::vector<CheckEntry> entries_;
    std::vector<std::string> warnings_;
};

}  // namespace pbtk
