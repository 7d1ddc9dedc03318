// One line per acceptance criterion; exit status 1 if any fails.
// Usage: acceptance [trials]   (default 1000, the full desk-scale run)
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "wedgebench/wedgebench.h"

namespace {

using json = nlohmann::json;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Run {
    json suite;
    double seconds = 0;
    std::string error;
};

wb_config* g_cfg = nullptr;

Run run_suite(const char* name) {
    Run r;
    char* out = nullptr;
    int pass = 0;
    auto t0 = std::chrono::steady_clock::now();
    wb_status s = wb_run_suite(g_cfg, name, &out, &pass);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s != WB_OK) {
        r.error = wb_last_error();
        return r;
    }
    r.suite = json::parse(out)["suites"][0];
    wb_string_free(out);
    return r;
}

const json* property(const Run& r, const std::string& name) {
    for (auto& p : r.suite["properties"])
        if (p["name"] == name) return &p;
    return nullptr;
}

std::string first_failure(const Run& r) {
    for (auto& p : r.suite["properties"])
        if (!p["pass"].get<bool>()) {
            std::string w = p["witnesses"].empty() ? "" : ": " + p["witnesses"][0].get<std::string>();
            return p["name"].get<std::string>() + " failed" + w;
        }
    return "";
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// a suite run that must pass, finish in time and examine at least min_checked cases
// per listed property
Outcome suite_criterion(const std::vector<const char*>& names, double limit,
                        const std::vector<std::pair<const char*, unsigned long long>>& minimum,
                        const std::function<std::string(const std::vector<Run>&)>& extra = {}) {
    std::vector<Run> runs;
    double total = 0;
    for (auto* n : names) {
        runs.push_back(run_suite(n));
        total += runs.back().seconds;
        if (!runs.back().error.empty()) return {false, std::string(n) + ": " + runs.back().error};
        if (!runs.back().suite["pass"].get<bool>()) return {false, std::string(n) + ": " + first_failure(runs.back())};
    }
    unsigned long long checked = 0;
    for (auto& [prop, min] : minimum) {
        const json* p = nullptr;
        for (auto& r : runs)
            if (!p) p = property(r, prop);
        if (!p) return {false, std::string("property ") + prop + " missing"};
        auto n = (*p)["checked"].get<unsigned long long>();
        checked += n;
        if (n < min) return {false, std::string(prop) + " checked only " + std::to_string(n) + " cases"};
    }
    if (extra) {
        std::string why = extra(runs);
        if (!why.empty()) return {false, why};
    }
    if (total >= limit) return {false, "took " + fmt("%.2f", total) + " s, limit " + fmt("%.0f", limit) + " s"};
    return {true, std::to_string(checked) + " checks in " + fmt("%.2f", total) + " s"};
}

std::string full_run() {
    char* out = nullptr;
    int pass = 0;
    if (wb_run(g_cfg, &out, &pass) != WB_OK) return std::string("error: ") + wb_last_error();
    std::string s = out;
    wb_string_free(out);
    return s;
}

} // namespace

int main(int argc, char** argv) {
    if (wb_config_new(&g_cfg) != WB_OK) return 2;
    unsigned long long trials = argc > 1 ? std::stoull(argv[1]) : 1000;
    wb_config_set(g_cfg, "trials", std::to_string(trials).c_str());
    wb_config_set(g_cfg, "seed", "1");
    const bool full = trials >= 1000;

    // the per-property minimums below are the desk-scale counts at 1000 trials
    auto need = [&](unsigned long long n) { return full ? n : 1ULL; };

    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"coherence",
         [&] {
             return suite_criterion({"coherence"}, 10, {{"injective", need(70 * 1000)}, {"odd-values", 1}, {"delta-exact", 1}},
                                    [](const std::vector<Run>& r) -> std::string {
                                        auto* p = property(r[0], "delta-exact");
                                        // five limit anchors plus 0..64
                                        return (*p)["data"]["anchor_pairs"] == 70 * 69 / 2 ? "" : "anchor set incomplete";
                                    });
         }},
        {"delta-x bound", [&] { return suite_criterion({"delta-x"}, 10, {{"delta-x-bound", 1}}); }},
        {"closure",
         [&] {
             return suite_criterion({"tree-closure"}, 30,
                                    {{"t-restrictions", need(5 * 100 * 6)},
                                     {"u-gluing-and-restrictions", need(5 * 100)},
                                     {"t-embeds-in-u", need(5 * 100 * 50)}});
         }},
        {"wedge equivalence",
         [&] {
             return suite_criterion({"wedge-safe"}, 10, {{"t-in-u-has-safe-points", 1}, {"truncated-covers-above-height", 1}},
                                    [](const std::vector<Run>& r) -> std::string {
                                        auto* p = property(r[0], "t-in-u-has-safe-points");
                                        return (*p)["data"]["limit_levels"].get<int>() >= 5 ? "" : "too few limit levels";
                                    });
         }},
        {"finite oracle",
         [&] {
             return suite_criterion({"wedge-oracle"}, 60, {{"no-safe-point-iff-covered", 10}, {"safe-set-closure", 10}},
                                    [](const std::vector<Run>& r) -> std::string {
                                        auto* p = property(r[0], "no-safe-point-iff-covered");
                                        std::set<std::string> seen;
                                        for (auto& run : (*p)["data"]["runs"]) {
                                            if (run["counterexamples"] != "0") return "counterexamples in " + run["tree"].get<std::string>();
                                            seen.insert(run["tree"].get<std::string>());
                                        }
                                        return seen.size() == 10 ? "" : "missing oracle trees";
                                    });
         }},
        {"sorgenfrey",
         [&] {
             return suite_criterion({"sorgenfrey"}, 30,
                                    {{"isolating-box", need(100 * 200)},
                                     {"find-between", need(10000)},
                                     {"dense-injection", need(1000)},
                                     {"uncovered-left-endpoints", need(1000)}});
         }},
        {"forcing",
         [&] {
             return suite_criterion({"forcing-ccc", "forcing-density"}, 60,
                                    {{"ccc-union", need(1000)},
                                     {"extend-to-include", need(2000)},
                                     {"extend-above", need(200)},
                                     {"filter-fragments", need(200)},
                                     {"spec-extend-totalizes", need(300)}});
         }},
        {"determinism",
         [&] {
             std::string a = full_run(), b = full_run();
             if (a.rfind("error", 0) == 0) return Outcome{false, a};
             if (a != b) return Outcome{false, "two runs differ"};
             return Outcome{true, "two full runs, " + std::to_string(a.size()) + " identical bytes"};
         }},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, e.what()};
        }
        all = all && o.pass;
        std::printf("criterion %zu %-18s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    }
    wb_config_free(g_cfg);
    return all ? 0 : 1;
}
