#include "qosa/report.hpp"

#include "qosa/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qosa {

Record& Record::set(std::string key, ReportValue value) {
    for (auto& [k, v] : fields_) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
}

const ReportValue* Record::find(const std::string& key) const {
    for (const auto& [k, v] : fields_) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

double Record::number(const std::string& key) const {
    const ReportValue* v = find(key);
    if (v == nullptr) {
        throw InvalidArgument("record has no field '" + key + "'");
    }
    if (const auto* d = std::get_if<double>(v)) {
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(v)) {
        return static_cast<double>(*i);
    }
    throw InvalidArgument("field '" + key + "' is not numeric");
}

namespace {

double rounded(double v, std::optional<int> digits) {
    if (!digits || !std::isfinite(v)) {
        return v;
    }
    return std::strtod(format_number(v, digits).c_str(), nullptr);
}

std::string csv_field(const ReportValue& v, std::optional<int> digits) {
    if (const auto* d = std::get_if<double>(&v)) {
        return format_number(rounded(*d, digits));
    }
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return std::to_string(*i);
    }
    const auto& s = std::get<std::string>(v);
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

nlohmann::ordered_json to_json_record(const Record& r, std::optional<int> digits) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.fields()) {
        if (const auto* d = std::get_if<double>(&v)) {
            if (std::isfinite(*d)) {
                j[k] = rounded(*d, digits);
            } else {
                j[k] = nullptr;
            }
        } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
            j[k] = *i;
        } else {
            j[k] = std::get<std::string>(v);
        }
    }
    return j;
}

} // namespace

std::string format_number(double v, std::optional<int> digits) {
    char buf[64];
    const auto res = digits ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, *digits)
                            : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_json(const RunReport& report, std::optional<int> digits) {
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    doc["config"] = to_json_record(report.config, digits);
    doc["results"] = nlohmann::ordered_json::array();
    for (const auto& r : report.results) {
        doc["results"].push_back(to_json_record(r, digits));
    }
    if (!report.replications.empty()) {
        doc["replications"] = nlohmann::ordered_json::array();
        for (const auto& r : report.replications) {
            doc["replications"].push_back(to_json_record(r, digits));
        }
    }
    doc["diagnostics"] = to_json_record(report.diagnostics, digits);
    if (report.wall_seconds) {
        doc["wall_seconds"] = *report.wall_seconds;
    }
    return doc.dump(2) + "\n";
}

std::string to_csv(const RunReport& report, std::optional<int> digits) {
    std::vector<std::string> columns;
    for (const auto& r : report.results) {
        for (const auto& [k, v] : r.fields()) {
            if (std::find(columns.begin(), columns.end(), k) == columns.end()) {
                columns.push_back(k);
            }
        }
    }
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << (c ? "," : "") << columns[c];
    }
    os << '\n';
    for (const auto& r : report.results) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) {
                os << ',';
            }
            if (const ReportValue* v = r.find(columns[c])) {
                os << csv_field(*v, digits);
            }
        }
        os << '\n';
    }
    return os.str();
}

} // namespace qosa
