#ifndef GRADLAB_GRADLAB_H
#define GRADLAB_GRADLAB_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef GRADLAB_BUILDING_LIBRARY
#    define GRADLAB_API __declspec(dllexport)
#  else
#    define GRADLAB_API __declspec(dllimport)
#  endif
#else
#  define GRADLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gradlab_status {
  GRADLAB_OK = 0,
  GRADLAB_E_INVALID_ARGUMENT = 1,
  GRADLAB_E_DOMAIN = 2,
  GRADLAB_E_HYPOTHESIS = 3,
  GRADLAB_E_CONFIG = 4,
  GRADLAB_E_SOLVER = 5,
  GRADLAB_E_IO = 6,
  GRADLAB_E_BUFFER_TOO_SMALL = 7,
  GRADLAB_E_INTERNAL = 8
} gradlab_status;

typedef struct gradlab_scenario gradlab_scenario;
typedef struct gradlab_report gradlab_report;
typedef struct gradlab_elliptic gradlab_elliptic;
typedef struct gradlab_trajectory gradlab_trajectory;

/* run flags */
#define GRADLAB_FLAG_TIMING 1u

typedef struct gradlab_row {
  const char* case_id;
  const char* check;
  int n;
  double R, K, C1, C2, B, A, M;
  double lhs_max, rhs, margin, tolerance;
  int pass;
  int gating; /* 0 for diagnostic rows */
  int grid;
  double tau;
  double runtime_ms;
  const char* note; /* empty unless the row could not be computed */
} gradlab_row;

GRADLAB_API const char* gradlab_version(void);

/* Message of the last failed call on this thread; "" when none. */
GRADLAB_API const char* gradlab_last_error(void);
/* Config line of the last config error on this thread, 0 when unknown. */
GRADLAB_API int gradlab_last_error_line(void);

GRADLAB_API gradlab_status gradlab_scenario_parse(const char* text, gradlab_scenario** out);
GRADLAB_API gradlab_status gradlab_scenario_load(const char* path, gradlab_scenario** out);
GRADLAB_API gradlab_status gradlab_scenario_clone(const gradlab_scenario* s, gradlab_scenario** out);
/* key is "section.key" or a bare key unique across sections */
GRADLAB_API gradlab_status gradlab_scenario_set(gradlab_scenario* s, const char* key, const char* value);
/* Writes the canonical config text. *needed receives the size including the terminator;
   returns GRADLAB_E_BUFFER_TOO_SMALL when cap is short (buf may be NULL with cap 0). */
GRADLAB_API gradlab_status gradlab_scenario_serialize(const gradlab_scenario* s, char* buf, size_t cap,
                                                      size_t* needed);
GRADLAB_API gradlab_status gradlab_scenario_equal(const gradlab_scenario* x, const gradlab_scenario* y, int* equal);
GRADLAB_API void gradlab_scenario_destroy(gradlab_scenario* s);

/* Solver failures do not make these calls fail; they show up as failed "solve" rows. */
GRADLAB_API gradlab_status gradlab_run_case(const gradlab_scenario* s, unsigned flags, gradlab_report** out);
/* params[i] is "key=v1,v2,..." (';' separates values when present). Cartesian product, ids suffixed -k. */
GRADLAB_API gradlab_status gradlab_run_sweep(const gradlab_scenario* s, const char* const* params, size_t count,
                                             unsigned flags, gradlab_report** out);
GRADLAB_API gradlab_status gradlab_selftest(gradlab_report** out);

GRADLAB_API size_t gradlab_report_size(const gradlab_report* r);
/* Strings in *row stay valid until the report is destroyed. */
GRADLAB_API gradlab_status gradlab_report_row(const gradlab_report* r, size_t i, gradlab_row* row);
GRADLAB_API size_t gradlab_report_diagnostic_count(const gradlab_report* r, size_t i);
GRADLAB_API gradlab_status gradlab_report_diagnostic(const gradlab_report* r, size_t i, size_t j, const char** name,
                                                     double* value);
/* 1 when every gating row passed and no solve failed */
GRADLAB_API int gradlab_report_all_passed(const gradlab_report* r);
GRADLAB_API int gradlab_report_solver_failed(const gradlab_report* r);
GRADLAB_API gradlab_status gradlab_report_csv(const gradlab_report* r, char* buf, size_t cap, size_t* needed);
GRADLAB_API gradlab_status gradlab_report_write_csv(const gradlab_report* r, const char* path);
GRADLAB_API void gradlab_report_destroy(gradlab_report* r);

GRADLAB_API gradlab_status gradlab_solve_elliptic(const gradlab_scenario* s, gradlab_elliptic** out);
GRADLAB_API size_t gradlab_elliptic_size(const gradlab_elliptic* e);
/* Copies min(cap, size) nodes; either pointer may be NULL. */
GRADLAB_API gradlab_status gradlab_elliptic_values(const gradlab_elliptic* e, double* r, double* u, size_t cap);
GRADLAB_API double gradlab_elliptic_residual(const gradlab_elliptic* e);
GRADLAB_API int gradlab_elliptic_iterations(const gradlab_elliptic* e);
GRADLAB_API void gradlab_elliptic_destroy(gradlab_elliptic* e);

GRADLAB_API gradlab_status gradlab_solve_parabolic(const gradlab_scenario* s, gradlab_trajectory** out);
GRADLAB_API size_t gradlab_trajectory_snapshots(const gradlab_trajectory* t);
GRADLAB_API size_t gradlab_trajectory_nodes(const gradlab_trajectory* t);
GRADLAB_API double gradlab_trajectory_time(const gradlab_trajectory* t, size_t m);
GRADLAB_API gradlab_status gradlab_trajectory_values(const gradlab_trajectory* t, size_t m, double* r, double* u,
                                                     size_t cap);
GRADLAB_API void gradlab_trajectory_destroy(gradlab_trajectory* t);

#ifdef __cplusplus
}
#endif

#endif
