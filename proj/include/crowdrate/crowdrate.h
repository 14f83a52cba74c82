/* C interface to the crowdrate library. Every function returns a status code;
 * on failure crowdrate_last_error() describes the problem for the calling
 * thread. Strings returned through out-parameters are owned by the caller and
 * released with crowdrate_string_free. */
#ifndef CROWDRATE_CROWDRATE_H
#define CROWDRATE_CROWDRATE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CROWDRATE_API __declspec(dllexport)
#else
#define CROWDRATE_API __attribute__((visibility("default")))
#endif

typedef enum crowdrate_status {
  CROWDRATE_OK = 0,
  CROWDRATE_INVALID_ARGUMENT = 1,
  CROWDRATE_PARSE_ERROR = 2,
  CROWDRATE_DOMAIN_ERROR = 3,
  CROWDRATE_INFEASIBLE = 4,
  CROWDRATE_IO_ERROR = 5,
  CROWDRATE_INTERNAL_ERROR = 6
} crowdrate_status;

typedef struct crowdrate_params crowdrate_params;
typedef struct crowdrate_outcome crowdrate_outcome;

typedef struct crowdrate_design {
  double alpha;
  double beta;
  double gamma0;
  double gamma1;
} crowdrate_design;

typedef struct crowdrate_designer_config {
  int gamma_grid; /* m */
  int oracle_grid; /* r */
} crowdrate_designer_config;

typedef struct crowdrate_sim_config {
  int64_t periods;
  int replicates;
  uint64_t seed;
  int population;       /* agents per (worker, start rating) in utility runs */
  int chain_population; /* agents per worker type in the rating chain */
  int threads;
  int deviation_worker; /* 0 none, 1 or 2 */
  int deviation_rating; /* 0 or 1 */
} crowdrate_sim_config;

CROWDRATE_API const char* crowdrate_last_error(void);
CROWDRATE_API void crowdrate_string_free(char* s);

CROWDRATE_API crowdrate_status crowdrate_params_create_default(crowdrate_params** out);
CROWDRATE_API crowdrate_status crowdrate_params_load(const char* path, crowdrate_params** out);
CROWDRATE_API crowdrate_status crowdrate_params_parse(const char* text, crowdrate_params** out);
CROWDRATE_API void crowdrate_params_destroy(crowdrate_params* p);
CROWDRATE_API crowdrate_status crowdrate_params_set(crowdrate_params* p, const char* key, double value);
CROWDRATE_API crowdrate_status crowdrate_params_get(const crowdrate_params* p, const char* key, double* out);
/* CROWDRATE_OK when valid, CROWDRATE_DOMAIN_ERROR otherwise; the report
 * (violations and warnings, one per line) is written to *report if non-null. */
CROWDRATE_API crowdrate_status crowdrate_params_validate(const crowdrate_params* p, char** report);

CROWDRATE_API crowdrate_designer_config crowdrate_designer_config_default(void);
CROWDRATE_API crowdrate_sim_config crowdrate_sim_config_default(void);

/* Runs the designer. An infeasible result still yields an outcome handle and
 * returns CROWDRATE_INFEASIBLE. */
CROWDRATE_API crowdrate_status crowdrate_optimize(const crowdrate_params* p,
                                                  crowdrate_designer_config config,
                                                  crowdrate_outcome** out);
CROWDRATE_API void crowdrate_outcome_destroy(crowdrate_outcome* o);
CROWDRATE_API int crowdrate_outcome_feasible(const crowdrate_outcome* o);
CROWDRATE_API crowdrate_design crowdrate_outcome_design(const crowdrate_outcome* o);
CROWDRATE_API double crowdrate_outcome_utility(const crowdrate_outcome* o);
CROWDRATE_API crowdrate_status crowdrate_outcome_format(const crowdrate_outcome* o, char** text);
CROWDRATE_API crowdrate_status crowdrate_outcome_csv(const crowdrate_outcome* o, char** text);

/* Brute-force oracle comparison; *agrees is 1 when both utilities lie within
 * the grid slack of each other. */
CROWDRATE_API crowdrate_status crowdrate_cross_check(const crowdrate_outcome* o,
                                                     crowdrate_designer_config config,
                                                     int* agrees, char** report);

/* Margins as CSV. *sustainable is 1 when incentive compatibility and
 * participation both hold. */
CROWDRATE_API crowdrate_status crowdrate_check(const crowdrate_params* p, crowdrate_design design,
                                               int* sustainable, char** report);

CROWDRATE_API crowdrate_status crowdrate_sweep_csv(const crowdrate_params* base, const char* key,
                                                   double from, double to, double step,
                                                   crowdrate_designer_config config, int threads,
                                                   char** csv);

CROWDRATE_API crowdrate_status crowdrate_simulate_csv(const crowdrate_params* p,
                                                      crowdrate_design design,
                                                      crowdrate_sim_config config, char** csv);

#ifdef __cplusplus
}
#endif

#endif
