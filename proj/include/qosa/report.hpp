#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qosa {

using ReportValue = std::variant<double, std::int64_t, std::string>;

/// Ordered key/value record; keys keep insertion order in every output.
class Record {
public:
    Record& set(std::string key, ReportValue value);

    const std::vector<std::pair<std::string, ReportValue>>& fields() const noexcept { return fields_; }
    const ReportValue* find(const std::string& key) const;
    double number(const std::string& key) const;

private:
    std::vector<std::pair<std::string, ReportValue>> fields_;
};

struct RunReport {
    std::string command;
    Record config;
    std::vector<Record> results;
    // Per-replication rows of the study commands; JSON only.
    std::vector<Record> replications;
    Record diagnostics;
    // Only filled when timing is requested, so that default output is
    // reproducible byte for byte.
    std::optional<double> wall_seconds;
};

/// Shortest round-trip representation, or `digits` significant digits.
std::string format_number(double v, std::optional<int> digits = std::nullopt);

/// Single JSON document: command, config, results, replications (when
/// present), diagnostics and wall_seconds (when set).
std::string to_json(const RunReport& report, std::optional<int> digits = std::nullopt);

/// Header row plus one row per result record; LF line endings.
std::string to_csv(const RunReport& report, std::optional<int> digits = std::nullopt);

} // namespace qosa
