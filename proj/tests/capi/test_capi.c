/* Exercises the C interface from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "crowdrate/crowdrate.h"

static int failures = 0;

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void test_params(void) {
  crowdrate_params* p = NULL;
  double v = 0.0;
  char* report = NULL;
  CHECK(crowdrate_params_create_default(&p) == CROWDRATE_OK);
  CHECK(crowdrate_params_get(p, "c1", &v) == CROWDRATE_OK && v == 0.1);
  CHECK(crowdrate_params_set(p, "delta", 0.9) == CROWDRATE_OK);
  CHECK(crowdrate_params_get(p, "delta", &v) == CROWDRATE_OK && v == 0.9);
  CHECK(crowdrate_params_set(p, "zeta", 0.9) == CROWDRATE_PARSE_ERROR);
  CHECK(strstr(crowdrate_last_error(), "zeta") != NULL);
  CHECK(crowdrate_params_validate(p, &report) == CROWDRATE_OK);
  crowdrate_string_free(report);
  CHECK(crowdrate_params_set(p, "delta", 1.0) == CROWDRATE_OK);
  CHECK(crowdrate_params_validate(p, NULL) == CROWDRATE_DOMAIN_ERROR);
  CHECK(strstr(crowdrate_last_error(), "delta out of range") != NULL);
  crowdrate_params_destroy(p);

  CHECK(crowdrate_params_parse("c1=0.1\n", &p) == CROWDRATE_PARSE_ERROR);
  CHECK(strstr(crowdrate_last_error(), "c2") != NULL);
  CHECK(crowdrate_params_load("/nonexistent/file.conf", &p) == CROWDRATE_PARSE_ERROR);
  CHECK(crowdrate_params_create_default(NULL) == CROWDRATE_INVALID_ARGUMENT);
}

static void test_optimize(void) {
  crowdrate_params* p = NULL;
  crowdrate_outcome* o = NULL;
  crowdrate_designer_config cfg = crowdrate_designer_config_default();
  crowdrate_design d;
  char* text = NULL;
  int agrees = 0;
  int ok = 0;
  CHECK(cfg.gamma_grid == 100 && cfg.oracle_grid == 100);
  crowdrate_params_create_default(&p);
  CHECK(crowdrate_optimize(p, cfg, &o) == CROWDRATE_OK);
  CHECK(crowdrate_outcome_feasible(o) == 1);
  d = crowdrate_outcome_design(o);
  CHECK(d.gamma0 == 0.0 && d.gamma1 > 0.0 && (d.alpha == 1.0 || d.beta == 1.0));
  CHECK(crowdrate_outcome_utility(o) > 0.0);
  CHECK(crowdrate_outcome_format(o, &text) == CROWDRATE_OK && strstr(text, "feasible=1") != NULL);
  crowdrate_string_free(text);
  CHECK(crowdrate_outcome_csv(o, &text) == CROWDRATE_OK && strncmp(text, "c1,c2,", 6) == 0);
  crowdrate_string_free(text);
  CHECK(crowdrate_cross_check(o, cfg, &agrees, &text) == CROWDRATE_OK && agrees == 1);
  crowdrate_string_free(text);

  /* The designer's output passes its own check. */
  CHECK(crowdrate_check(p, d, &ok, &text) == CROWDRATE_OK && ok == 1);
  CHECK(strncmp(text, "worker,constraint,margin\n", 25) == 0);
  crowdrate_string_free(text);
  crowdrate_outcome_destroy(o);

  crowdrate_params_set(p, "delta", 0.0);
  CHECK(crowdrate_optimize(p, cfg, &o) == CROWDRATE_INFEASIBLE);
  CHECK(o != NULL && crowdrate_outcome_feasible(o) == 0);
  crowdrate_outcome_destroy(o);

  d.alpha = 1.5;
  CHECK(crowdrate_check(p, d, &ok, NULL) == CROWDRATE_DOMAIN_ERROR);
  crowdrate_params_destroy(p);
}

static void test_sweep_and_simulate(void) {
  crowdrate_params* p = NULL;
  char* a = NULL;
  char* b = NULL;
  crowdrate_sim_config sim = crowdrate_sim_config_default();
  crowdrate_design d = {0.5, 0.5, 0.0, 0.5};
  crowdrate_params_create_default(&p);
  CHECK(crowdrate_sweep_csv(p, "c1", 0.05, 0.45, 0.05, crowdrate_designer_config_default(), 1, &a) ==
        CROWDRATE_OK);
  CHECK(crowdrate_sweep_csv(p, "c1", 0.05, 0.45, 0.05, crowdrate_designer_config_default(), 2, &b) ==
        CROWDRATE_OK);
  CHECK(a && b && strcmp(a, b) == 0);
  crowdrate_string_free(a);
  crowdrate_string_free(b);
  CHECK(crowdrate_sweep_csv(p, "alpha", 0.1, 0.2, 0.1, crowdrate_designer_config_default(), 1, &a) ==
        CROWDRATE_DOMAIN_ERROR);

  sim.periods = 2000;
  sim.replicates = 3;
  sim.population = 20;
  sim.deviation_worker = 1;
  CHECK(crowdrate_simulate_csv(p, d, sim, &a) == CROWDRATE_OK);
  CHECK(crowdrate_simulate_csv(p, d, sim, &b) == CROWDRATE_OK);
  CHECK(a && b && strcmp(a, b) == 0);
  CHECK(strstr(a, "deviation_worker1_rating1,") != NULL);
  crowdrate_string_free(a);
  crowdrate_string_free(b);
  sim.deviation_worker = 3;
  CHECK(crowdrate_simulate_csv(p, d, sim, &a) == CROWDRATE_DOMAIN_ERROR);
  crowdrate_params_destroy(p);
}

int main(void) {
  test_params();
  test_optimize();
  test_sweep_and_simulate();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return EXIT_FAILURE;
  }
  printf("capi: all checks passed\n");
  return EXIT_SUCCESS;
}
