/* Exercises the public C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <unistd.h>

#include "alphadisk/alphadisk.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void count_lines(const char* line, void* user) {
  (void)line;
  ++*(int*)user;
}

static const char* plane_cfg =
    "[plane]\n"
    "t_end = 0.1\n"
    "dt = 0.05\n"
    "h = 0.08\n"
    "snapshot_stride = 1\n";

int main(void) {
  char dir[256];
  double v = 0.0, a = 0.0, b = 0.0, e = 0.0, t = 0.0, mass = 0.0;
  size_t n = 0, steps = 0;
  int lines = 0;
  alphadisk_config* cfg = NULL;
  alphadisk_run* run = NULL;
  alphadisk_kernel_table_options opt;

  EXPECT(strlen(alphadisk_version()) > 0);
  EXPECT(strcmp(alphadisk_status_name(ALPHADISK_OK), "ok") == 0 ||
         strlen(alphadisk_status_name(ALPHADISK_OK)) > 0);
  EXPECT(strlen(alphadisk_default_output_root()) > 0);

  EXPECT(alphadisk_bessel_k(0, 1.0, &v) == ALPHADISK_OK);
  EXPECT(fabs(v - 0.42102443824070834) < 1e-13);
  EXPECT(alphadisk_bessel_k(0, -1.0, &v) == ALPHADISK_E_DOMAIN);
  EXPECT(strlen(alphadisk_last_error()) > 0);
  EXPECT(alphadisk_bessel_k(0, 1.0, NULL) == ALPHADISK_E_ARGUMENT);

  EXPECT(alphadisk_g_alpha(1.0, 1.0, &v) == ALPHADISK_OK);
  EXPECT(fabs(v - 0.067008120508497137) < 1e-13);
  EXPECT(alphadisk_k_theta(1.0, 1.0, &v) == ALPHADISK_OK);
  EXPECT(fabs(v - 0.063358432123254121) < 1e-13);
  EXPECT(alphadisk_filtered_harmonic(1.0, 1.0, 0.1, &v) == ALPHADISK_OK);
  EXPECT(fabs(v - 0.061937549172100499) < 1e-13);
  EXPECT(alphadisk_filtered_harmonic(0.05, 1.0, 0.1, &v) == ALPHADISK_E_DOMAIN);
  EXPECT(alphadisk_radial_constants(1.0, 0.1, &a, &b, &e) == ALPHADISK_OK);
  EXPECT(fabs(a + 0.023261325583122174) < 1e-14);
  EXPECT(fabs(b - 0.0057294227838766843) < 1e-12);
  EXPECT(fabs(e - 0.0034835026420876409) < 1e-10);
  EXPECT(alphadisk_radial_constants(1.0, 0.1, NULL, NULL, NULL) == ALPHADISK_OK);

  EXPECT(alphadisk_config_parse("[plane]\nbogus = 1\n", &cfg) == ALPHADISK_OK);
  EXPECT(alphadisk_run_simulation(cfg, ALPHADISK_SIM_PLANE, &run) == ALPHADISK_E_CONFIG);
  EXPECT(strstr(alphadisk_last_error(), "bogus") != NULL);
  EXPECT(run == NULL);
  alphadisk_config_free(cfg);
  cfg = NULL;
  EXPECT(alphadisk_config_parse("[plane\n", &cfg) == ALPHADISK_E_CONFIG);
  EXPECT(cfg == NULL);
  EXPECT(alphadisk_config_load("/nonexistent/x.cfg", &cfg) == ALPHADISK_E_CONFIG);

  EXPECT(alphadisk_config_parse(plane_cfg, &cfg) == ALPHADISK_OK);
  EXPECT(alphadisk_run_simulation(cfg, (alphadisk_sim_kind)7, &run) == ALPHADISK_E_ARGUMENT);
  EXPECT(alphadisk_run_simulation(cfg, ALPHADISK_SIM_EXTERIOR, &run) == ALPHADISK_E_CONFIG);
  EXPECT(alphadisk_run_simulation(cfg, ALPHADISK_SIM_PLANE, &run) == ALPHADISK_OK);
  EXPECT(alphadisk_run_steps(run, &steps, &v) == ALPHADISK_OK);
  EXPECT(steps == 2);
  EXPECT(v == 0.05);
  EXPECT(alphadisk_run_diagnostics_count(run, &n) == ALPHADISK_OK);
  EXPECT(n == 3);
  EXPECT(alphadisk_run_diagnostic(run, 2, &t, &mass) == ALPHADISK_OK);
  EXPECT(fabs(t - 0.1) < 1e-15);
  EXPECT(mass > 0.0);
  EXPECT(alphadisk_run_diagnostic(run, 3, &t, &mass) == ALPHADISK_E_ARGUMENT);
  EXPECT(alphadisk_run_snapshot_count(run, &n) == ALPHADISK_OK);
  EXPECT(n == 3);

  snprintf(dir, sizeof dir, "/tmp/alphadisk-capi-%ld", (long)getpid());
  EXPECT(alphadisk_run_write(run, dir) == ALPHADISK_OK);
  EXPECT(alphadisk_run_write(run, "/proc/nonexistent/run") == ALPHADISK_E_IO);
  alphadisk_run_free(run);
  alphadisk_config_free(cfg);
  alphadisk_run_free(NULL);
  alphadisk_config_free(NULL);

  alphadisk_kernel_table_defaults(&opt);
  EXPECT(opt.samples == 200);
  opt.samples = 5;
  EXPECT(alphadisk_cmd_kernel_table(&opt, dir, count_lines, &lines) == ALPHADISK_OK);
  EXPECT(lines > 0);
  EXPECT(alphadisk_cmd_kernel_table(NULL, dir, NULL, NULL) == ALPHADISK_E_ARGUMENT);
  EXPECT(alphadisk_cmd_radial_verify(NULL, 0, NULL, 0, 0, dir, NULL, NULL) == ALPHADISK_OK);
  EXPECT(alphadisk_cmd_simulate(ALPHADISK_SIM_PLANE, "/nonexistent.cfg", dir, NULL, NULL) ==
         ALPHADISK_E_CONFIG);

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
