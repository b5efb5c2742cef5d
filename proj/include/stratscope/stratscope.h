/* stratscope C API: opaque handles and status codes over the analysis core.
 *
 * Usage pattern:
 *   ss_bundle_t* bundle = NULL;
 *   char* diag = NULL;
 *   if (ss_bundle_open("data/", NULL, &bundle, &diag) == SS_OK) {
 *       ss_result_t* result = NULL;
 *       ss_run_stage(bundle, "patterns", &result, &diag);
 *       puts(ss_result_json(result));
 *       ss_result_close(result);
 *   }
 *   ss_string_free(diag);
 *   ss_bundle_close(bundle);
 *
 * Every char* returned through an out-parameter is owned by the caller and
 * must be released with ss_string_free. Strings returned by ss_result_json /
 * ss_result_text stay owned by the result handle. Handles are not thread-safe;
 * distinct handles may be used from distinct threads.
 */

#ifndef STRATSCOPE_STRATSCOPE_H
#define STRATSCOPE_STRATSCOPE_H

#if defined(_WIN32)
#define SS_API __declspec(dllexport)
#else
#define SS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ss_bundle_t ss_bundle_t;
typedef struct ss_result_t ss_result_t;

typedef enum ss_status_t {
    SS_OK = 0,
    SS_ERROR_DATA = 1,  /* validation violations or malformed dataset content */
    SS_ERROR_IO = 2,    /* missing files, unreadable/unwritable paths */
    SS_ERROR_USAGE = 3  /* bad arguments: unknown stage, invalid overrides */
} ss_status_t;

SS_API const char* ss_version(void);

/* Loads and validates a dataset directory. config_overrides_json may be NULL
 * or a JSON object overriding config.json keys (partial_weight, std_mode,
 * standout_threshold, min_axis_coverage). On failure *out_bundle is NULL and
 * *out_diagnostics (when non-NULL) carries one diagnostic per line. On
 * success *out_diagnostics carries any warnings, or NULL if there are none. */
SS_API ss_status_t ss_bundle_open(const char* data_dir, const char* config_overrides_json,
                                  ss_bundle_t** out_bundle, char** out_diagnostics);

SS_API void ss_bundle_close(ss_bundle_t* bundle);

/* Runs one analysis stage: validate, prevalence, standout, stratify,
 * consolidate, align or patterns. The result exposes a JSON document and a
 * rendered text table. */
SS_API ss_status_t ss_run_stage(ss_bundle_t* bundle, const char* stage, ss_result_t** out_result,
                                char** out_diagnostics);

SS_API const char* ss_result_json(const ss_result_t* result);
SS_API const char* ss_result_text(const ss_result_t* result);
SS_API void ss_result_close(ss_result_t* result);

/* Writes report.md, report.json, matrix.csv, heatmap.svg, countries.svg,
 * indicators.svg and manifest.json into out_dir. When out_manifest_json is
 * non-NULL it receives the manifest document. */
SS_API ss_status_t ss_write_reports(ss_bundle_t* bundle, const char* out_dir,
                                    char** out_manifest_json, char** out_diagnostics);

/* Writes the dataset back in canonical form (sorted codes, normalized
 * fields); loading the result yields an equivalent dataset. */
SS_API ss_status_t ss_export_bundle(ss_bundle_t* bundle, const char* out_dir,
                                    char** out_diagnostics);

SS_API void ss_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* STRATSCOPE_STRATSCOPE_H */
