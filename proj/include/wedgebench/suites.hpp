#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "wedgebench/config.hpp"

namespace wb {

inline constexpr std::size_t kMaxWitnesses = 5;

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::uint64_t checked = 0;
    std::vector<std::string> witnesses; // first failures
    std::vector<std::string> notes;
    nlohmann::json data = nlohmann::json::object();

    template <class F>
    void check(bool ok, F witness) {
        ++checked;
        if (ok) return;
        pass = false;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness());
    }
};

struct SuiteReport {
    std::string name;
    std::vector<PropertyResult> properties;
    std::vector<std::string> notes;
    bool pass() const;
};

const std::vector<std::string>& suite_names();
// Throws UsageError for an unknown name.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

nlohmann::json to_json(const SuiteReport& r);
// Every selected suite, with the config and the version stamp.
nlohmann::json run_report(const RunConfig& cfg, bool* all_pass = nullptr);

} // namespace wb
