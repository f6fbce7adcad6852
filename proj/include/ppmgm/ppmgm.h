/*
 * C interface to the ppmgm seeded graph matching library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a pgm_status; on
 * failure pgm_last_error() describes the problem for the calling thread.
 *
 * Permutations are 0-based maps x[i] = x(i). Matrices are dense, row-major
 * when copied in or out.
 */
#ifndef PPMGM_H_
#define PPMGM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PGM_BUILDING_LIBRARY)
#    define PGM_API __declspec(dllexport)
#  else
#    define PGM_API __declspec(dllimport)
#  endif
#else
#  define PGM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgm_status {
  PGM_OK = 0,
  PGM_ERR_NULL_ARGUMENT = 1,
  PGM_ERR_INVALID_DIMENSION = 2,
  PGM_ERR_INVALID_PARAMETER = 3,
  PGM_ERR_INVALID_INPUT = 4,
  PGM_ERR_INFEASIBLE_OVERLAP = 5,
  PGM_ERR_INSTANCE_TOO_LARGE = 6,
  PGM_ERR_INDEX_OUT_OF_RANGE = 7,
  PGM_ERR_DOMAIN = 8,
  PGM_ERR_NUMERICAL = 9,
  PGM_ERR_CONFIG = 10,
  PGM_ERR_IO = 11,
  PGM_ERR_INTERNAL = 12
} pgm_status;

typedef struct pgm_matrix pgm_matrix;           /* dense symmetric n x n */
typedef struct pgm_permutation pgm_permutation;
typedef struct pgm_pair pgm_pair;               /* correlated (A, B, x*) */
typedef struct pgm_config pgm_config;           /* experiment description */
typedef struct pgm_results pgm_results;         /* sorted run records */

PGM_API const char* pgm_version(void);
PGM_API const char* pgm_status_string(pgm_status status);
/* Message of the last failed call on this thread; "" if none. */
PGM_API const char* pgm_last_error(void);
/* Releases strings returned through char** out-parameters. */
PGM_API void pgm_string_free(char* s);

/* ---- permutations ---------------------------------------------------- */

PGM_API pgm_status pgm_permutation_create(const uint32_t* map, size_t n, pgm_permutation** out);
PGM_API pgm_status pgm_permutation_identity(size_t n, pgm_permutation** out);
PGM_API void pgm_permutation_destroy(pgm_permutation* p);
PGM_API size_t pgm_permutation_size(const pgm_permutation* p);
/* Copies the map into out[0..n-1]; n must equal the permutation size. */
PGM_API pgm_status pgm_permutation_get(const pgm_permutation* p, uint32_t* out, size_t n);
PGM_API pgm_status pgm_overlap(const pgm_permutation* x, const pgm_permutation* y, double* out);
PGM_API pgm_status pgm_frobenius_seed_distance(const pgm_permutation* x, const pgm_permutation* y,
                                               double* out);

/* ---- matrices -------------------------------------------------------- */

/* values: n*n row-major entries, must be exactly symmetric. */
PGM_API pgm_status pgm_matrix_create(const double* values, size_t n, pgm_matrix** out);
PGM_API void pgm_matrix_destroy(pgm_matrix* m);
PGM_API size_t pgm_matrix_size(const pgm_matrix* m);
PGM_API pgm_status pgm_matrix_get(const pgm_matrix* m, double* out, size_t count);
PGM_API pgm_status pgm_matrix_remove_diagonal(const pgm_matrix* m, pgm_matrix** out);

/* ---- random models --------------------------------------------------- */
/* Randomness comes from (seed, stream): the same pair always reproduces the
 * same sample. */

PGM_API pgm_status pgm_sample_goe(size_t n, uint64_t seed, uint64_t stream, pgm_matrix** out);
PGM_API pgm_status pgm_sample_permutation(size_t n, uint64_t seed, uint64_t stream,
                                          pgm_permutation** out);
PGM_API pgm_status pgm_sample_seed_with_overlap(const pgm_permutation* xstar, size_t m,
                                                uint64_t seed, uint64_t stream,
                                                pgm_permutation** out);
PGM_API pgm_status pgm_sample_cgw(size_t n, double sigma, const pgm_permutation* xstar,
                                  uint64_t seed, uint64_t stream, pgm_pair** out);
PGM_API pgm_status pgm_sample_cer(size_t n, double q, double s, const pgm_permutation* xstar,
                                  uint64_t seed, uint64_t stream, pgm_pair** out);
PGM_API void pgm_pair_destroy(pgm_pair* pair);
/* Borrowed views, valid while the pair lives. */
PGM_API const pgm_matrix* pgm_pair_a(const pgm_pair* pair);
PGM_API const pgm_matrix* pgm_pair_b(const pgm_pair* pair);
PGM_API const pgm_permutation* pgm_pair_ground_truth(const pgm_pair* pair);

/* ---- matching -------------------------------------------------------- */

/* c: n*n row-major, any real square matrix. */
PGM_API pgm_status pgm_gmwm(const double* c, size_t n, pgm_permutation** out);
/* Writes A X B (row-major, n*n) into out. */
PGM_API pgm_status pgm_power_step(const pgm_matrix* a, const pgm_matrix* b,
                                  const pgm_permutation* x, double* out, size_t count);
PGM_API pgm_status pgm_qap_objective(const pgm_matrix* a, const pgm_matrix* b,
                                     const pgm_permutation* x, double* out);
PGM_API pgm_status pgm_brute_force_qap(const pgm_matrix* a, const pgm_matrix* b,
                                       pgm_permutation** out);

typedef struct pgm_ppm_options {
  size_t max_iterations;
  int remove_diagonal;        /* 0 or 1 */
  int early_stop_on_fixpoint; /* 0 or 1 */
} pgm_ppm_options;

typedef struct pgm_match_info {
  size_t iterations_run;
  int converged_early;
} pgm_match_info;

/* ground_truth may be NULL. When given and trace is non-NULL, the overlap
 * after each iteration is written to trace[0..iterations_run-1]; trace must
 * hold max_iterations values. info may be NULL. */
PGM_API pgm_status pgm_ppmgm(const pgm_matrix* a, const pgm_matrix* b, const pgm_permutation* x0,
                             const pgm_ppm_options* options, const pgm_permutation* ground_truth,
                             pgm_permutation** estimate, pgm_match_info* info, double* trace);

/* ---- spectral baselines ---------------------------------------------- */

PGM_API pgm_status pgm_umeyama(const pgm_matrix* a, const pgm_matrix* b, pgm_permutation** out);
PGM_API pgm_status pgm_grampa(const pgm_matrix* a, const pgm_matrix* b, double eta,
                              pgm_permutation** out);

/* ---- sparsification -------------------------------------------------- */

typedef enum pgm_scheme {
  PGM_SCHEME_BINARIZE = 1,       /* 1{|M_ij| >= tau} */
  PGM_SCHEME_HARD_THRESHOLD = 2, /* M_ij 1{|M_ij| >= tau} */
  PGM_SCHEME_TOP_K = 3           /* per-row top-k magnitudes, OR-symmetrised */
} pgm_scheme;

/* param is tau for the threshold schemes and k for top-k. */
PGM_API pgm_status pgm_sparsify(const pgm_matrix* m, pgm_scheme scheme, double param,
                                pgm_matrix** out);
PGM_API pgm_status pgm_tau_for_density(double p, size_t n, double* out);
PGM_API pgm_status pgm_density_range(size_t n, double epsilon, double r_const, double* lo,
                                     double* hi, int* feasible);

/* ---- theory ---------------------------------------------------------- */

PGM_API pgm_status pgm_c_sigma(double sigma, double* out);
PGM_API pgm_status pgm_kappa(double sigma, double* out);

typedef struct pgm_bound_report {
  double theta;
  double sigma;
  size_t n;
  double raw;
  double clamped;
} pgm_bound_report;

PGM_API pgm_status pgm_one_iteration_bound(size_t n, double theta, double sigma,
                                           pgm_bound_report* out);
PGM_API pgm_status pgm_partial_recovery_bound(size_t n, double theta, double sigma, size_t r,
                                              pgm_bound_report* out);

/* ---- experiments ----------------------------------------------------- */

/* experiment: refine | seed-sweep | iter-sweep | sparsify-sweep | tau-heatmap.
 * preset: "desk" or "full". */
PGM_API pgm_status pgm_config_default(const char* experiment, const char* preset,
                                      pgm_config** out);
PGM_API pgm_status pgm_config_parse(const char* json, pgm_config** out);
PGM_API pgm_status pgm_config_load(const char* path, pgm_config** out);
PGM_API void pgm_config_destroy(pgm_config* config);
PGM_API pgm_status pgm_config_to_json(const pgm_config* config, char** out);
/* Returns a static string naming the experiment kind. */
PGM_API const char* pgm_config_experiment(const pgm_config* config);
PGM_API pgm_status pgm_config_validate(const pgm_config* config);

PGM_API pgm_status pgm_config_set_n(pgm_config* config, size_t n);
PGM_API pgm_status pgm_config_set_sigma_grid(pgm_config* config, const double* sigmas,
                                             size_t count);
PGM_API pgm_status pgm_config_set_mc_runs(pgm_config* config, size_t runs);
PGM_API pgm_status pgm_config_set_master_seed(pgm_config* config, uint64_t seed);
/* Sets N; for iter-sweep this replaces the iteration grid with {N}. */
PGM_API pgm_status pgm_config_set_iterations(pgm_config* config, size_t iterations);
/* -1 restores the automatic rule (remove iff N > 1). */
PGM_API pgm_status pgm_config_set_remove_diagonal(pgm_config* config, int value);
PGM_API pgm_status pgm_config_set_eta(pgm_config* config, double eta);
PGM_API pgm_status pgm_config_set_record_timing(pgm_config* config, int value);

/* workers == 0 uses the hardware concurrency. Output does not depend on it. */
PGM_API pgm_status pgm_run_experiment(const pgm_config* config, unsigned workers,
                                      pgm_results** out);
PGM_API void pgm_results_destroy(pgm_results* results);
PGM_API size_t pgm_results_size(const pgm_results* results);

typedef struct pgm_run_record {
  const char* experiment; /* borrowed from the results handle */
  const char* method;
  size_t n;
  double sigma;
  const char* param_name;
  double param_value;
  size_t run_index;
  double result_overlap;
  size_t iterations_run;
  double wall_seconds;
  const char* status;
} pgm_run_record;

PGM_API pgm_status pgm_results_get(const pgm_results* results, size_t index, pgm_run_record* out);
PGM_API pgm_status pgm_results_to_csv(const pgm_results* results, char** out);
PGM_API pgm_status pgm_results_write_csv(const pgm_results* results, const char* path);
PGM_API pgm_status pgm_results_write_summary_csv(const pgm_results* results, const char* path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PPMGM_H_ */
