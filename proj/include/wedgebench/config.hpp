#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "wedgebench/ordinal.hpp"

namespace wb {

// Bad flags, config lines or suite names; the CLI maps these to exit code 2.
struct UsageError : Error {
    using Error::Error;
};

struct RunConfig {
    std::vector<Ordinal> anchors;       // limit anchors; suites add the naturals they need
    std::uint64_t budget_enum = 100000;  // level/candidate enumeration
    std::uint64_t budget_range = 100000; // range-search steps
    std::uint64_t budget_oracle = 100000; // covers enumerated by the finite oracle
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> suites;    // empty: every suite

    RunConfig();
};

// Keys mirror the long flags: anchors, budget-enum, budget-range,
// budget-oracle, trials, seed, suite. List values are comma separated.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);
// Flat key=value lines; '#' starts a comment.
void apply_config_text(RunConfig& c, std::string_view text);
void apply_config_file(RunConfig& c, const std::string& path);
void validate(const RunConfig& c);

nlohmann::json to_json(const RunConfig& c);
std::string to_config_text(const RunConfig& c);

const char* version_string();

} // namespace wb
