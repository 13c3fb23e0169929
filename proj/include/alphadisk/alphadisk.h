/*
 * alphadisk: the alpha-Euler (Lagrangian averaged Euler) equations in the
 * plane and outside a small disk.
 *
 * All functions return an alphadisk_status. On failure a description is
 * available from alphadisk_last_error() until the next failing call on the
 * same thread. Handles are opaque and must be released with their _free
 * function; passing NULL to a _free function is allowed.
 */
#ifndef ALPHADISK_ALPHADISK_H
#define ALPHADISK_ALPHADISK_H

#include <stddef.h>

#if defined(ALPHADISK_BUILDING_LIBRARY)
#define ALPHADISK_API __attribute__((visibility("default")))
#else
#define ALPHADISK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum alphadisk_status {
  ALPHADISK_OK = 0,
  ALPHADISK_E_ARGUMENT = 1,   /* null pointer or invalid enum value */
  ALPHADISK_E_CONFIG = 2,     /* unreadable or invalid configuration */
  ALPHADISK_E_ACCEPTANCE = 3, /* command ran, a built-in check failed */
  ALPHADISK_E_NUMERICAL = 4,  /* solver abort or non-convergence */
  ALPHADISK_E_DOMAIN = 5,     /* argument outside the mathematical domain */
  ALPHADISK_E_IO = 6,         /* output could not be written */
  ALPHADISK_E_INTERNAL = 7
} alphadisk_status;

typedef enum alphadisk_sim_kind {
  ALPHADISK_SIM_PLANE = 0,
  ALPHADISK_SIM_EXTERIOR = 1
} alphadisk_sim_kind;

ALPHADISK_API const char* alphadisk_version(void);
ALPHADISK_API const char* alphadisk_status_name(alphadisk_status status);
ALPHADISK_API const char* alphadisk_last_error(void);

/* Output root used by the command-line tool: $ALPHADISK_OUT, else "alphadisk-out". */
ALPHADISK_API const char* alphadisk_default_output_root(void);

/* ---- pointwise functions --------------------------------------------- */

/* K_order(z) for order 0 or 1, z > 0. */
ALPHADISK_API alphadisk_status alphadisk_bessel_k(int order, double z, double* out);

/* g(r) = K0(r / sqrt(alpha)) / (2 pi alpha), r > 0. */
ALPHADISK_API alphadisk_status alphadisk_g_alpha(double r, double alpha, double* out);

/* Azimuthal velocity of a unit filtered point vortex, r >= 0. */
ALPHADISK_API alphadisk_status alphadisk_k_theta(double r, double alpha, double* out);

/* Azimuthal profile of the filtered harmonic field outside the disk, r >= eps. */
ALPHADISK_API alphadisk_status alphadisk_filtered_harmonic(double r, double alpha, double eps,
                                                           double* out);

/* Boundary constants and H1 energy of the boundary-layer correction. Any
 * output pointer may be NULL. */
ALPHADISK_API alphadisk_status alphadisk_radial_constants(double alpha, double eps,
                                                          double* a_eps, double* b_eps,
                                                          double* energy);

/* ---- configuration and runs ------------------------------------------ */

typedef struct alphadisk_config alphadisk_config;
typedef struct alphadisk_run alphadisk_run;

ALPHADISK_API alphadisk_status alphadisk_config_load(const char* path, alphadisk_config** out);
ALPHADISK_API alphadisk_status alphadisk_config_parse(const char* text, alphadisk_config** out);
ALPHADISK_API void alphadisk_config_free(alphadisk_config* config);

/* Runs the [plane] or [exterior] section of the configuration. */
ALPHADISK_API alphadisk_status alphadisk_run_simulation(const alphadisk_config* config,
                                                        alphadisk_sim_kind kind,
                                                        alphadisk_run** out);
ALPHADISK_API void alphadisk_run_free(alphadisk_run* run);

ALPHADISK_API alphadisk_status alphadisk_run_steps(const alphadisk_run* run, size_t* steps,
                                                   double* dt);
ALPHADISK_API alphadisk_status alphadisk_run_diagnostics_count(const alphadisk_run* run,
                                                               size_t* count);
/* Time and mass of diagnostics row `row`. */
ALPHADISK_API alphadisk_status alphadisk_run_diagnostic(const alphadisk_run* run, size_t row,
                                                        double* t, double* mass);
ALPHADISK_API alphadisk_status alphadisk_run_snapshot_count(const alphadisk_run* run,
                                                            size_t* count);
/* Writes config.echo, diagnostics.csv, provenance.json and snapshots/. */
ALPHADISK_API alphadisk_status alphadisk_run_write(const alphadisk_run* run, const char* dir);

/* ---- commands ---------------------------------------------------------- */

/* Receives one human-readable progress line per call. */
typedef void (*alphadisk_log_fn)(const char* line, void* user);

typedef struct alphadisk_kernel_table_options {
  double alpha;
  int samples;
  double r_min;
  double r_max;
  int svg;
} alphadisk_kernel_table_options;

ALPHADISK_API void alphadisk_kernel_table_defaults(alphadisk_kernel_table_options* options);

ALPHADISK_API alphadisk_status alphadisk_cmd_kernel_table(
    const alphadisk_kernel_table_options* options, const char* out_dir, alphadisk_log_fn log,
    void* user);

/* NULL lists (or zero lengths) select the defaults. */
ALPHADISK_API alphadisk_status alphadisk_cmd_radial_verify(const double* alphas, size_t n_alphas,
                                                           const double* eps, size_t n_eps,
                                                           int svg, const char* out_dir,
                                                           alphadisk_log_fn log, void* user);

ALPHADISK_API alphadisk_status alphadisk_cmd_simulate(alphadisk_sim_kind kind,
                                                      const char* config_path,
                                                      const char* out_dir, alphadisk_log_fn log,
                                                      void* user);

ALPHADISK_API alphadisk_status alphadisk_cmd_converge(const char* config_path,
                                                      const char* out_dir, alphadisk_log_fn log,
                                                      void* user);

ALPHADISK_API alphadisk_status alphadisk_cmd_picard(const char* config_path, const char* out_dir,
                                                    alphadisk_log_fn log, void* user);

#ifdef __cplusplus
}
#endif

#endif /* ALPHADISK_ALPHADISK_H */
