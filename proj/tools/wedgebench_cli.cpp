// wedgebench: run the property suites or a single query through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wedgebench/wedgebench.h"

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

struct Owned {
    char* p = nullptr;
    ~Owned() { wb_string_free(p); }
};

int report_error(wb_status s) {
    std::cerr << "wedgebench: " << wb_last_error() << "\n";
    return s == WB_ERR_USAGE || s == WB_ERR_PARSE || s == WB_ERR_ARGUMENT ? kExitUsage : kExitFail;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

void print_summary(const std::string& report) {
    auto j = nlohmann::json::parse(report);
    for (auto& s : j["suites"]) {
        std::size_t n = s["properties"].size(), ok = 0;
        for (auto& p : s["properties"]) ok += p["pass"].get<bool>() ? 1 : 0;
        std::printf("%-16s %s  %zu/%zu properties\n", s["suite"].get<std::string>().c_str(),
                    s["pass"].get<bool>() ? "PASS" : "FAIL", ok, n);
        for (auto& p : s["properties"]) {
            if (p["pass"].get<bool>()) continue;
            std::printf("  %s failed\n", p["name"].get<std::string>().c_str());
            for (auto& w : p["witnesses"]) std::printf("    %s\n", w.get<std::string>().c_str());
        }
        for (auto& note : s["notes"]) std::printf("  note: %s\n", note.get<std::string>().c_str());
    }
    std::printf("%s\n", j["pass"].get<bool>() ? "all properties pass" : "some properties FAILED");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Property suites for coherent Aronszajn tree constructions and the fine wedge topology"};
    app.set_version_flag("--version", std::string(wb_version()));

    std::string config_path, json_path, anchors;
    std::vector<std::string> suites;
    std::optional<unsigned long long> seed, budget_enum, budget_range, budget_oracle, trials;
    bool list = false;
    app.add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "random seed");
    app.add_option("--json", json_path, "write the JSON report to this path");
    app.add_option("--suite", suites, "suite to run (repeatable; default all)");
    app.add_option("--budget-enum", budget_enum, "enumeration budget");
    app.add_option("--budget-range", budget_range, "range-search step budget");
    app.add_option("--budget-oracle", budget_oracle, "covers the finite oracle may enumerate");
    app.add_option("--trials", trials, "trials per randomized property");
    app.add_option("--anchors", anchors, "comma separated limit anchors");
    app.add_flag("--list", list, "print the suite names and exit");

    auto* query = app.add_subcommand("query", "evaluate one expression and print its JSON result");
    std::vector<std::string> expr_parts;
    query->add_option("expr", expr_parts, "expression, e.g. \"eval-e w 3\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    if (list) {
        for (std::size_t i = 0; i < wb_suite_count(); ++i) std::printf("%s\n", wb_suite_name(i));
        return kExitPass;
    }

    wb_config* raw = nullptr;
    if (auto s = wb_config_new(&raw)) return report_error(s);
    std::unique_ptr<wb_config, void (*)(wb_config*)> cfg(raw, wb_config_free);

    if (!config_path.empty())
        if (auto s = wb_config_load_file(cfg.get(), config_path.c_str())) return report_error(s);
    auto set = [&](const char* key, const std::string& v) { return wb_config_set(cfg.get(), key, v.c_str()); };
    std::vector<std::pair<const char*, std::optional<unsigned long long>*>> nums = {
        {"seed", &seed}, {"budget-enum", &budget_enum}, {"budget-range", &budget_range},
        {"budget-oracle", &budget_oracle}, {"trials", &trials}};
    for (auto& [key, v] : nums)
        if (v->has_value())
            if (auto s = set(key, std::to_string(**v))) return report_error(s);
    if (!anchors.empty())
        if (auto s = set("anchors", anchors)) return report_error(s);
    if (!suites.empty()) {
        std::string joined;
        for (auto& n : suites) joined += (joined.empty() ? "" : ",") + n;
        if (auto s = set("suite", joined)) return report_error(s);
    }

    if (query->parsed()) {
        std::string expr;
        for (auto& p : expr_parts) expr += (expr.empty() ? "" : " ") + p;
        Owned out;
        if (auto s = wb_query(cfg.get(), expr.c_str(), &out.p)) {
            long pos = wb_last_error_position();
            int rc = report_error(s);
            if (pos >= 0) std::cerr << "  " << expr << "\n  " << std::string(static_cast<std::size_t>(pos), ' ') << "^\n";
            return rc;
        }
        std::fputs(out.p, stdout);
        if (!json_path.empty() && !write_file(json_path, out.p)) {
            std::cerr << "wedgebench: cannot write " << json_path << "\n";
            return kExitUsage;
        }
        return kExitPass;
    }

    Owned out;
    int pass = 0;
    if (auto s = wb_run(cfg.get(), &out.p, &pass)) return report_error(s);
    print_summary(out.p);
    if (!json_path.empty() && !write_file(json_path, out.p)) {
        std::cerr << "wedgebench: cannot write " << json_path << "\n";
        return kExitUsage;
    }
    return pass ? kExitPass : kExitFail;
}
