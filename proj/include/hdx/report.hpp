#pragma once

#include <chrono>

#include <json.hpp>

#include "hdx/field.hpp"

namespace hdx {

inline constexpr int kReportSchemaVersion = 1;

// One check record. `anchor` names the property or identity being checked
// (e.g. "lambda2(link) = 1/sqrt(q)"), so reports are self-describing.
struct Record {
    enum class Status { pass, fail, report_only, vacuous };
    std::string name;
    std::string anchor;
    Status status = Status::report_only;
    nlohmann::json values;
};

inline const char* to_string(Record::Status s) {
    switch (s) {
        case Record::Status::pass: return "pass";
        case Record::Status::fail: return "fail";
        case Record::Status::report_only: return "report-only";
        case Record::Status::vacuous: return "vacuous";
    }
    return "?";
}

struct Report {
    nlohmann::json config;
    std::vector<Record> records;
    double timing_ms = 0.0;

    void add(const std::string& name, const std::string& anchor, Record::Status status,
             nlohmann::json values = nlohmann::json::object()) {
        records.push_back({name, anchor, status, std::move(values)});
    }
    void add_check(const std::string& name, const std::string& anchor, bool ok,
                   nlohmann::json values = nlohmann::json::object()) {
        add(name, anchor, ok ? Record::Status::pass : Record::Status::fail, std::move(values));
    }

    bool all_pass() const {
        for (const auto& r : records)
            if (r.status == Record::Status::fail) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema_version"] = kReportSchemaVersion;
        j["config"] = config;
        j["records"] = nlohmann::json::array();
        for (const auto& r : records)
            j["records"].push_back(
                {{"name", r.name}, {"anchor", r.anchor}, {"status", to_string(r.status)}, {"values", r.values}});
        j["timing_ms"] = timing_ms;
        return j;
    }
};

inline nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports) {
    nlohmann::json out;
    out["schema_version"] = kReportSchemaVersion;
    out["merged"] = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : reports) {
        out["merged"].push_back(r);
        if (r.contains("records"))
            for (const auto& rec : r["records"])
                if (rec.value("status", "") == "fail") ok = false;
    }
    out["all_pass"] = ok;
    return out;
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace hdx
