/* SPDX-License-Identifier: Apache-2.0 */
#ifndef O2BENCH_O2BENCH_H
#define O2BENCH_O2BENCH_H

#include <stddef.h>

#if defined(_WIN32)
#define O2B_API __declspec(dllexport)
#else
#define O2B_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum o2b_status {
  O2B_OK = 0,
  O2B_ERR_INVALID_ARGUMENT = 1,
  O2B_ERR_CONFIG = 2,
  O2B_ERR_RUNTIME = 3,
  O2B_ERR_IO = 4
} o2b_status;

typedef struct o2b_config o2b_config;
typedef struct o2b_report o2b_report;

/* Library version, e.g. "1.0.0". Static storage. */
O2B_API const char* o2b_version(void);

/* Message of the last failed call on this thread; "" when none. Valid until
 * the next call on the same thread. */
O2B_API const char* o2b_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
O2B_API void o2b_string_free(char* s);

/* Parses an experiment config (JSON text). */
O2B_API o2b_status o2b_config_from_json(const char* json, o2b_config** out);
/* The default experiment config that produces the data of one figure id. */
O2B_API o2b_status o2b_config_for_figure(const char* figure_id, o2b_config** out);
/* Sets one field from a JSON value. `key` is a top-level field ("runs",
 * "seed", ...) or a dotted path into "model" / "params", e.g. "params.particles". */
O2B_API o2b_status o2b_config_set(o2b_config* config, const char* key, const char* json_value);
/* The config with every default filled in, as JSON. */
O2B_API o2b_status o2b_config_resolved_json(const o2b_config* config, char** out);
O2B_API void o2b_config_free(o2b_config* config);

O2B_API o2b_status o2b_run_experiment(const o2b_config* config, o2b_report** out);
O2B_API void o2b_report_free(o2b_report* report);

O2B_API o2b_status o2b_report_write_csv(const o2b_report* report, const char* path);
/* Per-run rows of one tracker at one sweep index (tracking experiments only). */
O2B_API o2b_status o2b_report_write_mtt_csv(const o2b_report* report, const char* path, size_t tracker,
                                            size_t param_index);
O2B_API o2b_status o2b_report_summary_json(const o2b_report* report, char** out);
O2B_API o2b_status o2b_report_emit_plotdata(const o2b_report* report, const char* figure_id, const char* path);
/* Mean and variance of one estimator's series at a sweep index. */
O2B_API o2b_status o2b_report_mean(const o2b_report* report, const char* estimator, size_t param_index,
                                   double* mean, double* variance);

/* JSON array of names; `what` is "experiments", "estimators" or "figures". */
O2B_API o2b_status o2b_list(const char* what, char** out);

/* Covariance-weighted fusion of two scalar Gaussians. */
O2B_API o2b_status o2b_kf_fuse(double mean_a, double var_a, double mean_b, double var_b, double* mean_out,
                               double* var_out);
/* OSPA distance between two planar point sets given as interleaved x,y pairs. */
O2B_API o2b_status o2b_ospa(const double* xs, size_t nx, const double* ys, size_t ny, double cutoff, double order,
                            double* out);
/* Range (>= 0) and bearing (radians from the y axis) to a planar position. */
O2B_API o2b_status o2b_invert_range_bearing(double range, double bearing, double* x, double* y);

#ifdef __cplusplus
}
#endif

#endif
