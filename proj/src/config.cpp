#include "wedgebench/config.hpp"

#include <fstream>
#include <sstream>

namespace wb {

namespace {

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_count(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError(key + ": expected a natural number, got '" + v + "'");
    try {
        return std::stoull(v);
    } catch (const std::out_of_range&) {
        throw UsageError(key + ": value out of range");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(v);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::uint64_t parse_positive(const std::string& key, const std::string& v) {
    auto n = parse_count(key, v);
    if (n == 0) throw UsageError(key + ": must be positive");
    return n;
}

} // namespace

RunConfig::RunConfig() {
    for (const char* a : {"w", "w*2", "w^2", "w^2+w", "w^3"}) anchors.push_back(Ordinal::parse(a));
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
    std::string v = trim(raw);
    if (key == "anchors") {
        c.anchors.clear();
        for (auto& a : split_list(v)) {
            try {
                c.anchors.push_back(Ordinal::parse(a));
            } catch (const ParseError& e) {
                throw UsageError("anchors: " + std::string(e.what()));
            }
        }
    } else if (key == "budget-enum") {
        c.budget_enum = parse_positive(key, v);
    } else if (key == "budget-range") {
        c.budget_range = parse_positive(key, v);
    } else if (key == "budget-oracle") {
        c.budget_oracle = parse_positive(key, v);
    } else if (key == "trials") {
        c.trials = parse_positive(key, v);
    } else if (key == "seed") {
        c.seed = parse_count(key, v);
    } else if (key == "suite") {
        c.suites = split_list(v);
    } else {
        throw UsageError("unknown setting '" + key + "'");
    }
}

void apply_config_text(RunConfig& c, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_setting(c, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(c, ss.str());
}

void validate(const RunConfig& c) {
    if (c.budget_enum == 0 || c.budget_range == 0 || c.budget_oracle == 0) throw UsageError("budgets must be positive");
    if (c.trials == 0) throw UsageError("trials must be positive");
    if (c.anchors.empty()) throw UsageError("at least one anchor is needed");
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    std::vector<std::string> as;
    for (auto& a : c.anchors) as.push_back(a.str());
    j["anchors"] = as;
    j["budget_enum"] = c.budget_enum;
    j["budget_range"] = c.budget_range;
    j["budget_oracle"] = c.budget_oracle;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["suites"] = c.suites;
    return j;
}

std::string to_config_text(const RunConfig& c) {
    std::string out = "anchors=";
    for (std::size_t i = 0; i < c.anchors.size(); ++i) out += (i ? "," : "") + c.anchors[i].str();
    out += "\nbudget-enum=" + std::to_string(c.budget_enum);
    out += "\nbudget-range=" + std::to_string(c.budget_range);
    out += "\nbudget-oracle=" + std::to_string(c.budget_oracle);
    out += "\ntrials=" + std::to_string(c.trials);
    out += "\nseed=" + std::to_string(c.seed);
    if (!c.suites.empty()) {
        out += "\nsuite=";
        for (std::size_t i = 0; i < c.suites.size(); ++i) out += (i ? "," : "") + c.suites[i];
    }
    return out + "\n";
}

const char* version_string() { return WB_VERSION_STRING; }

} // namespace wb
