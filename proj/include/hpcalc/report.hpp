#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

namespace hpcalc {

// One verification record. anchor names the identity being checked; witness
// carries the offending element (canonical text) on failure.
struct CheckResult {
    std::string name;
    std::string anchor;
    std::string status; // "pass" | "fail" | "error"
    std::string witness;
    long long millis = 0;
};

class Report {
public:
    void add(CheckResult r) { checks_.push_back(std::move(r)); }
    void append(const Report& other) {
        checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
    }
    const std::vector<CheckResult>& checks() const { return checks_; }
    bool all_pass() const;
    std::string json() const;
    void print(std::ostream& os) const;

private:
    std::vector<CheckResult> checks_;
};

// Runs fn, times it, and records pass/fail/error. fn returns an empty string
// on pass and a witness description on failure; thrown exceptions become
// status "error".
template <typename Fn>
void run_check(Report& rep, const std::string& name, const std::string& anchor, Fn&& fn) {
    CheckResult r;
    r.name = name;
    r.anchor = anchor;
    auto start = std::chrono::steady_clock::now();
    try {
        std::string witness = fn();
        r.status = witness.empty() ? "pass" : "fail";
        r.witness = std::move(witness);
    } catch (const std::exception& e) {
        r.status = "error";
        r.witness = e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    rep.add(std::move(r));
}

} // namespace hpcalc
