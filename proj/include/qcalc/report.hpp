#pragma once
// Machine-readable suite reports and the subset of JSON Schema needed to validate them.

#include "qcalc/check.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace qcalc {

using json = nlohmann::json;

inline constexpr int report_version = 1;

struct SuiteReport {
    std::string name;
    std::string preset;
    std::vector<CheckResult> checks;

    bool failed() const {
        for (const auto& c : checks)
            if (c.status == Status::fail) return true;
        return false;
    }
    std::size_t count(Status s) const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.status == s;
        return n;
    }
};

struct Report {
    std::string preset;
    std::uint64_t seed = 0;
    std::size_t max_degree = 0;
    std::vector<SuiteReport> suites;

    bool failed() const {
        for (const auto& s : suites)
            if (s.failed()) return true;
        return false;
    }
    std::size_t count(Status st) const {
        std::size_t n = 0;
        for (const auto& s : suites) n += s.count(st);
        return n;
    }
    // Overall status: pass iff nothing failed.
    std::string overall() const { return failed() ? "fail" : "pass"; }
};

inline json to_json(const CheckResult& c) {
    return {{"name", c.name}, {"paper_ref", c.paper_ref}, {"status", status_name(c.status)}, {"residual", c.residual}, {"ms", c.ms}};
}

inline json to_json(const Report& r) {
    json suites = json::array();
    for (const auto& s : r.suites) {
        json checks = json::array();
        for (const auto& c : s.checks) checks.push_back(to_json(c));
        suites.push_back({{"name", s.name}, {"preset", s.preset}, {"checks", checks}});
    }
    return {{"version", report_version},
            {"preset", r.preset},
            {"seed", r.seed},
            {"max_degree", r.max_degree},
            {"suites", suites},
            {"mismatches", r.count(Status::mismatch)},
            {"overall", r.overall()}};
}

// Schema shipped as docs/report.schema.json.
inline const json& report_schema() {
    static const json s = json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "qcalc suite report",
  "type": "object",
  "required": ["version", "preset", "suites", "overall"],
  "properties": {
    "version": {"type": "integer", "enum": [1]},
    "preset": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0},
    "max_degree": {"type": "integer", "minimum": 0},
    "mismatches": {"type": "integer", "minimum": 0},
    "overall": {"type": "string", "enum": ["pass", "fail"]},
    "suites": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "checks"],
        "properties": {
          "name": {"type": "string"},
          "preset": {"type": "string"},
          "checks": {
            "type": "array",
            "items": {
              "type": "object",
              "required": ["name", "paper_ref", "status", "residual", "ms"],
              "properties": {
                "name": {"type": "string"},
                "paper_ref": {"type": "string"},
                "status": {"type": "string", "enum": ["pass", "fail", "mismatch", "skipped"]},
                "residual": {"type": "string"},
                "ms": {"type": "number", "minimum": 0}
              },
              "additionalProperties": false
            }
          }
        },
        "additionalProperties": false
      }
    }
  },
  "additionalProperties": false
})");
    return s;
}

// Validates against the keywords used above: type, required, properties, additionalProperties, items, enum, minimum.
// Returns the list of violations as "path: message".
inline std::vector<std::string> validate_json(const json& v, const json& schema, const std::string& path = "$") {
    std::vector<std::string> errs;
    auto type_ok = [&](const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        return false;
    };
    if (schema.contains("type") && !type_ok(schema["type"].get<std::string>())) {
        errs.push_back(path + ": expected " + schema["type"].get<std::string>());
        return errs;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"]) found = found || e == v;
        if (!found) errs.push_back(path + ": value " + v.dump() + " not in enum");
    }
    if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>())
        errs.push_back(path + ": below minimum");
    if (v.is_object()) {
        if (schema.contains("required"))
            for (const auto& r : schema["required"])
                if (!v.contains(r.get<std::string>())) errs.push_back(path + ": missing " + r.get<std::string>());
        const json props = schema.value("properties", json::object());
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (props.contains(it.key())) {
                auto sub = validate_json(it.value(), props[it.key()], path + "." + it.key());
                errs.insert(errs.end(), sub.begin(), sub.end());
            } else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false) {
                errs.push_back(path + ": unexpected property " + it.key());
            }
        }
    }
    if (v.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto sub = validate_json(v[i], schema["items"], path + "[" + std::to_string(i) + "]");
            errs.insert(errs.end(), sub.begin(), sub.end());
        }
    return errs;
}

}  // namespace qcalc
