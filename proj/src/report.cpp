#include "hpcalc/report.hpp"

#include <ostream>

#include <json.hpp>

namespace hpcalc {

bool Report::all_pass() const {
    for (const auto& c : checks_)
        if (c.status != "pass") return false;
    return true;
}

std::string Report::json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks_) {
        arr.push_back({{"name", c.name},
                       {"anchor", c.anchor},
                       {"status", c.status},
                       {"witness", c.witness},
                       {"millis", c.millis}});
    }
    return arr.dump(2);
}

void Report::print(std::ostream& os) const {
    for (const auto& c : checks_) {
        os << "[" << (c.status == "pass" ? "PASS" : (c.status == "fail" ? "FAIL" : "ERROR")) << "] "
           << c.name << "  (" << c.anchor << ", " << c.millis << " ms)";
        if (!c.witness.empty()) os << "\n       witness: " << c.witness;
        os << "\n";
    }
}

} // namespace hpcalc
