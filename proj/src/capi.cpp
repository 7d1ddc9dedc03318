#include "wedgebench/wedgebench.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "wedgebench/coherent.hpp"
#include "wedgebench/config.hpp"
#include "wedgebench/query.hpp"
#include "wedgebench/suites.hpp"

struct wb_config {
    wb::RunConfig cfg;
};

namespace {

thread_local std::string g_error;
thread_local long g_position = -1;

void clear_error() {
    g_error.clear();
    g_position = -1;
}

wb_status fail(wb_status s, const std::string& msg, long pos = -1) {
    g_error = msg;
    g_position = pos;
    return s;
}

template <class F>
wb_status guarded(F body) {
    clear_error();
    try {
        body();
        return WB_OK;
    } catch (const wb::ParseError& e) {
        return fail(WB_ERR_PARSE, e.what(), static_cast<long>(e.position()));
    } catch (const wb::UsageError& e) {
        return fail(WB_ERR_USAGE, e.what());
    } catch (const wb::DomainError& e) {
        return fail(WB_ERR_DOMAIN, e.what());
    } catch (const wb::UndecidedError& e) {
        return fail(WB_ERR_UNDECIDED, e.what());
    } catch (const std::bad_alloc&) {
        return fail(WB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WB_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

} // namespace

extern "C" {

const char* wb_version(void) { return wb::version_string(); }
const char* wb_last_error(void) { return g_error.c_str(); }
long wb_last_error_position(void) { return g_position; }

wb_status wb_config_new(wb_config** out) {
    if (!out) return fail(WB_ERR_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new wb_config(); });
}

void wb_config_free(wb_config* cfg) { delete cfg; }

wb_status wb_config_set(wb_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        wb::RunConfig next = cfg->cfg;
        wb::apply_setting(next, key, value);
        cfg->cfg = std::move(next);
    });
}

wb_status wb_config_load_text(wb_config* cfg, const char* text) {
    if (!cfg || !text) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        wb::RunConfig next = cfg->cfg;
        wb::apply_config_text(next, text);
        cfg->cfg = std::move(next);
    });
}

wb_status wb_config_load_file(wb_config* cfg, const char* path) {
    if (!cfg || !path) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        wb::RunConfig next = cfg->cfg;
        wb::apply_config_file(next, path);
        cfg->cfg = std::move(next);
    });
}

wb_status wb_config_to_json(const wb_config* cfg, char** out) {
    if (!cfg || !out) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = dup(dump(wb::to_json(cfg->cfg))); });
}

size_t wb_suite_count(void) { return wb::suite_names().size(); }

const char* wb_suite_name(size_t index) {
    const auto& n = wb::suite_names();
    return index < n.size() ? n[index].c_str() : nullptr;
}

wb_status wb_run(const wb_config* cfg, char** json_out, int* pass) {
    if (!cfg || !json_out) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        bool ok = false;
        auto j = wb::run_report(cfg->cfg, &ok);
        *json_out = dup(dump(j));
        if (pass) *pass = ok ? 1 : 0;
    });
}

wb_status wb_run_suite(const wb_config* cfg, const char* name, char** json_out, int* pass) {
    if (!cfg || !name || !json_out) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        wb::RunConfig c = cfg->cfg;
        c.suites = {name};
        bool ok = false;
        auto j = wb::run_report(c, &ok);
        *json_out = dup(dump(j));
        if (pass) *pass = ok ? 1 : 0;
    });
}

wb_status wb_query(const wb_config* cfg, const char* expr, char** json_out) {
    if (!cfg || !expr || !json_out) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] { *json_out = dup(dump(wb::run_query(expr, cfg->cfg))); });
}

wb_status wb_eval_e(const char* alpha, const char* xi, char** out) {
    if (!alpha || !xi || !out) return fail(WB_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        wb::CoherentSystem cs;
        *out = dup(wb::to_string(cs.eval(wb::Ordinal::parse(alpha), wb::Ordinal::parse(xi))));
    });
}

void wb_string_free(char* s) { std::free(s); }

} // extern "C"
