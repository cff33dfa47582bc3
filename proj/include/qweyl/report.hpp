#pragma once

#include <string>
#include <vector>

namespace qweyl {

struct CaseResult {
    std::string id;
    std::string w_word;
    int node = 0;
    bool pass = false;
    int max_height = 0;
    std::string witness; // first discrepancy, empty on pass
};

struct VerifyReport {
    std::vector<CaseResult> cases;
    bool all_pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
};

} // namespace qweyl
