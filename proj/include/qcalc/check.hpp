#pragma once
// Outcome of a single verification.

#include <chrono>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace qcalc {

enum class Status { pass, fail, mismatch, skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::mismatch: return "mismatch";
        case Status::skipped: return "skipped";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    std::string paper_ref;
    Status status = Status::pass;
    std::string residual;  // empty when nothing to show
    double ms = 0;

    bool ok() const { return status == Status::pass; }
};

inline CheckResult make_check(std::string name, std::string ref, bool ok, std::string residual = {}) {
    return {std::move(name), std::move(ref), ok ? Status::pass : Status::fail, std::move(residual), 0};
}

// Runs f, stamping the wall time onto every result it returns.
template <class F>
auto timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if constexpr (std::is_same_v<decltype(r), CheckResult>) {
        r.ms = ms;
    } else {
        for (auto& c : r) c.ms = ms / static_cast<double>(r.empty() ? 1 : r.size());
    }
    return r;
}

// Collapses several results into one: pass iff all pass, residuals joined.
inline CheckResult all_of(std::string name, std::string ref, const std::vector<CheckResult>& parts) {
    CheckResult r{std::move(name), std::move(ref), Status::pass, {}, 0};
    for (const auto& p : parts) {
        r.ms += p.ms;
        if (p.status == Status::fail) {
            r.status = Status::fail;
            if (!r.residual.empty()) r.residual += "; ";
            r.residual += p.name + ": " + p.residual;
        }
    }
    return r;
}

}  // namespace qcalc
