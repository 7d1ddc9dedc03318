#ifndef WEDGEBENCH_H
#define WEDGEBENCH_H

#include <stddef.h>

#if defined(WB_BUILDING_LIBRARY)
#define WB_API __attribute__((visibility("default")))
#else
#define WB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wb_status {
    WB_OK = 0,
    WB_ERR_ARGUMENT = 1,  /* null pointer or bad index */
    WB_ERR_PARSE = 2,     /* literal or expression; see wb_last_error_position */
    WB_ERR_DOMAIN = 3,    /* precondition of an operation */
    WB_ERR_UNDECIDED = 4, /* budget ran out */
    WB_ERR_USAGE = 5,     /* config key/value or suite name */
    WB_ERR_INTERNAL = 6
} wb_status;

typedef struct wb_config wb_config;

WB_API const char* wb_version(void);

/* Calling thread only; valid until the next failing call on that thread. */
WB_API const char* wb_last_error(void);
/* Offset into the failing text for WB_ERR_PARSE, -1 otherwise. */
WB_API long wb_last_error_position(void);

WB_API wb_status wb_config_new(wb_config** out);
WB_API void wb_config_free(wb_config* cfg);
/* Keys mirror the CLI long flags: anchors, budget-enum, budget-range,
   budget-oracle, trials, seed, suite. */
WB_API wb_status wb_config_set(wb_config* cfg, const char* key, const char* value);
WB_API wb_status wb_config_load_text(wb_config* cfg, const char* text);
WB_API wb_status wb_config_load_file(wb_config* cfg, const char* path);
WB_API wb_status wb_config_to_json(const wb_config* cfg, char** out);

WB_API size_t wb_suite_count(void);
WB_API const char* wb_suite_name(size_t index);

/* Strings returned through char** are owned by the caller; release them
   with wb_string_free. *pass is 1 when every property passed. */
WB_API wb_status wb_run(const wb_config* cfg, char** json_out, int* pass);
WB_API wb_status wb_run_suite(const wb_config* cfg, const char* name, char** json_out, int* pass);
WB_API wb_status wb_query(const wb_config* cfg, const char* expr, char** json_out);

/* Shortcut for e_alpha(xi) as a decimal string. */
WB_API wb_status wb_eval_e(const char* alpha, const char* xi, char** out);

WB_API void wb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
