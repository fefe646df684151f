#ifndef FLOWSORT_H
#define FLOWSORT_H

/* C interface to the FlowSort-Choquet sorting engine.
 *
 * Conventions:
 *   - Every function returns a status code (FS_OK or an FS_ERR_* value).
 *     Results come back through out-parameters.
 *   - On failure fs_last_error() returns a message describing what went
 *     wrong; the buffer is thread-local and stays valid until the next
 *     failing call on the same thread.
 *   - Strings returned through char** out-parameters are heap-allocated;
 *     release them with fs_string_free(). Handles are released with their
 *     matching *_free() function. Passing NULL to a free function is a
 *     no-op.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FS_API __declspec(dllexport)
#else
#define FS_API __attribute__((visibility("default")))
#endif

/* Status codes double as process exit codes in the bundled CLI. */
enum {
  FS_OK = 0,
  FS_ERR_PARSE = 2,         /* unreadable input or malformed document   */
  FS_ERR_VALIDATION = 3,    /* well-formed input that breaks the rules  */
  FS_ERR_INCONSISTENCY = 4, /* internal contract violated; report this  */
  FS_ERR_ARGUMENT = 5       /* NULL handle or unknown name argument     */
};

typedef struct fs_problem fs_problem;
typedef struct fs_result fs_result;
typedef struct fs_scenarios fs_scenarios;
typedef struct fs_scenario_result fs_scenario_result;
typedef struct fs_matrix fs_matrix;

FS_API const char* fs_last_error(void);
FS_API void fs_string_free(char* text);

/* ---- sorting problems ---------------------------------------------------- */

/* Loads a "problem" document from a file or parses it from a JSON string.
 * The document carries criteria, alternatives, reference profiles and the
 * capacity; it is validated on load. */
FS_API int fs_problem_load(const char* path, fs_problem** out);
FS_API int fs_problem_from_json(const char* text, fs_problem** out);
FS_API void fs_problem_free(fs_problem* problem);

FS_API int fs_problem_criteria(const fs_problem* problem, int* out);
FS_API int fs_problem_alternatives(const fs_problem* problem, int* out);
FS_API int fs_problem_categories(const fs_problem* problem, int* out);

/* Sorts every alternative. `rules` is a comma-separated subset of
 * "positive,negative,net" controlling which assignment columns the report
 * carries; NULL or "" selects all three. */
FS_API int fs_sort(const fs_problem* problem, const char* rules,
                   fs_result** out);
FS_API void fs_result_free(fs_result* result);

FS_API int fs_result_alternative_count(const fs_result* result, int* out);
/* 1-based category index of one alternative under one rule
 * ("positive", "negative" or "net"). */
FS_API int fs_result_category(const fs_result* result, int alternative,
                              const char* rule, int* out);
/* Renders the report; `format` is "plain", "csv" or "json". */
FS_API int fs_result_render(const fs_result* result, const char* format,
                            char** out);

/* ---- capacity scenarios ---------------------------------------------------- */

/* Loads a "scenarios" document holding named capacity variants. The problem
 * supplies the criterion names the capacities must reference. */
FS_API int fs_scenarios_load(const fs_problem* problem, const char* path,
                             fs_scenarios** out);
FS_API void fs_scenarios_free(fs_scenarios* scenarios);

/* Re-sorts the problem once per scenario under one assignment rule and
 * tabulates the category per alternative, flagging changes against the
 * first scenario in the set. */
FS_API int fs_scenarios_run(const fs_problem* problem,
                            const fs_scenarios* scenarios, const char* rule,
                            fs_scenario_result** out);
FS_API void fs_scenario_result_free(fs_scenario_result* result);
FS_API int fs_scenario_result_render(const fs_scenario_result* result,
                                     const char* format, char** out);

/* ---- single-table scoring -------------------------------------------------- */

/* Loads a "matrix" document: a plain score table plus a capacity, no
 * profiles. Used for direct aggregation baselines. */
FS_API int fs_matrix_load(const char* path, fs_matrix** out);
FS_API void fs_matrix_free(fs_matrix* matrix);

/* Scores each row with the capacity. When `normalize` is nonzero the
 * columns are first rescaled to [0, 1] by their observed min and max. */
FS_API int fs_baseline_run(const fs_matrix* matrix, int normalize,
                           const char* format, char** out);

/* ---- self-verification ------------------------------------------------------ */

typedef struct fs_verify_options {
  uint64_t seed;
  int problems;         /* generated instances; 0 is allowed            */
  int min_criteria;     /* >= 1                                          */
  int max_criteria;     /* >= min_criteria                               */
  int max_categories;   /* >= 1                                          */
  int max_alternatives; /* >= 0                                          */
  const char* mode;     /* "weak" | "strict" | "strong"; NULL = strong   */
  const char* shapes;   /* comma list of preference shapes; NULL = all   */
  const char* properties; /* comma list of property names; NULL = all    */
  int conditions;       /* nonzero also audits the degree conditions     */
} fs_verify_options;

/* Fills `options` with the defaults described above. */
FS_API void fs_verify_options_init(fs_verify_options* options);

/* Generates random instances and checks the engine's structural properties
 * on each. `ok` receives 1 when every check passed and 0 otherwise; a 0 is
 * reported through the rendered summary, not through the return code. */
FS_API int fs_verify(const fs_verify_options* options, const char* format,
                     char** out, int* ok);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FLOWSORT_H */
