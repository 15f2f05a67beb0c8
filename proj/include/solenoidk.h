#ifndef SOLENOIDK_H
#define SOLENOIDK_H

/* C interface to libsolenoidk. Handles are opaque; every fallible call returns
 * an sk_status and leaves a message for sk_last_error() on the calling thread.
 * Strings returned through char** are owned by the caller (sk_string_free);
 * strings returned directly live as long as their handle. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#else
#define SK_API __attribute__((visibility("default")))
#endif

typedef struct sk_config sk_config;
typedef struct sk_report sk_report;

typedef enum sk_status {
  SK_OK = 0,
  SK_EMPTY_IMAGE,
  SK_NON_SURJECTIVE,
  SK_NON_EXPANDING,
  SK_INADMISSIBLE_GERM,
  SK_NO_FLATTENING,
  SK_NEVER_COVERS,
  SK_IDENTITY_VIOLATION,
  SK_DEPTH_TOO_SHALLOW,
  SK_PRECISION_UNREACHABLE,
  SK_INCOMPATIBLE_ENDO,
  SK_NON_COMMUTING,
  SK_NEED_USER_MATRICES,
  SK_NOT_FREE,
  SK_NO_WITNESS_FOUND,
  SK_PARSE_ERROR,
  SK_UNKNOWN_EDGE,
  SK_IO_ERROR,
  SK_INVALID_ARGUMENT,
  SK_INTERNAL
} sk_status;

/* Stage bits for sk_run; dependencies are added automatically. */
#define SK_STAGE_VALIDATION 0x01u
#define SK_STAGE_QUOTIENT 0x02u
#define SK_STAGE_ENTROPY 0x04u
#define SK_STAGE_ZETA 0x08u
#define SK_STAGE_SHIFT_EQUIVALENCE 0x10u
#define SK_STAGE_WIELER 0x20u
#define SK_STAGE_EXPANSIVE 0x40u
#define SK_STAGE_KTHEORY 0x80u
#define SK_STAGE_ALL 0xFFu

#define SK_DOT_AUTOMATON 0
#define SK_DOT_QUOTIENT 1

SK_API const char* sk_version(void);
SK_API const char* sk_status_name(sk_status status);
SK_API const char* sk_last_error(void);

SK_API sk_status sk_config_load(const char* path, sk_config** out);
SK_API sk_status sk_config_parse(const char* toml_text, sk_config** out);
/* key is an [options] key; value is its text ("20", "[[2,1],[1,1]]", "json"). */
SK_API sk_status sk_config_set_option(sk_config* config, const char* key, const char* value);
/* Current value of format / json_out / dot_out, or NULL for other keys. */
SK_API const char* sk_config_get_string(const sk_config* config, const char* key);
SK_API void sk_config_free(sk_config* config);

/* Stage failures are recorded in the report and do not fail the call. */
SK_API sk_status sk_run(const sk_config* config, unsigned stages, sk_report** out);
SK_API const char* sk_report_json(const sk_report* report);
SK_API const char* sk_report_text(const sk_report* report);
/* 0 when every stage succeeded, 1 otherwise. */
SK_API int sk_report_exit_code(const sk_report* report);
SK_API void sk_report_free(sk_report* report);

SK_API sk_status sk_export_dot(const sk_config* config, int view, char** out);
/* p and q as decimal strings. */
SK_API sk_status sk_pq_family_json(const char* p, const char* q, char** out);

SK_API void sk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
