/* C API of the total-Lagrangian SPH dynamic-relaxation solver.
 *
 * All entry points are exception-free: failures surface as status codes and
 * a thread-local message retrievable via tlsph_last_error(). Simulations are
 * opaque handles configured by "key=value" override strings using the same
 * schema as the config file (see README).
 */
#ifndef TLSPH_H
#define TLSPH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tlsph_status {
  TLSPH_OK = 0,
  TLSPH_ERR_INVALID_ARGUMENT = 1,
  TLSPH_ERR_PARSE = 2,
  TLSPH_ERR_DEGENERATE_GEOMETRY = 3,
  TLSPH_ERR_INVERTED_ELEMENT = 4,
  TLSPH_ERR_NUMERICAL_FAILURE = 5,
  TLSPH_ERR_IO = 6,
  TLSPH_ERR_INTERNAL = 7
} tlsph_status;

typedef struct tlsph_sim tlsph_sim;

const char* tlsph_version(void);
const char* tlsph_status_name(tlsph_status status);

/* Message of the most recent failing call on this thread; empty if none. */
const char* tlsph_last_error(void);

/* Creates a simulation from an optional config file plus overrides. Pass
 * NULL for config_path to configure from overrides alone. The "case" key is
 * required. On success *out_sim owns the handle; release it with
 * tlsph_sim_destroy. */
tlsph_status tlsph_sim_create(const char* config_path,
                              const char* const* overrides, size_t n_overrides,
                              tlsph_sim** out_sim);

void tlsph_sim_destroy(tlsph_sim* sim);

/* Runs the configured case to its end time, writing probe/snapshot/report
 * files when output.dir is non-empty. May be called once per handle. */
tlsph_status tlsph_sim_run(tlsph_sim* sim);

/* Post-run queries. Values are zero before a successful run. */
int tlsph_sim_dim(const tlsph_sim* sim);
int tlsph_sim_thread_count(const tlsph_sim* sim);
uint64_t tlsph_sim_step_count(const tlsph_sim* sim);
uint64_t tlsph_sim_damped_step_count(const tlsph_sim* sim);

/* phase is one of "neighbor", "elastic", "damping", "total". Unknown phases
 * return a negative value. */
double tlsph_sim_phase_seconds(const tlsph_sim* sim, const char* phase);

/* Writes the final probe displacement (dim components) into out. capacity
 * must be at least the case dimension. */
tlsph_status tlsph_sim_probe_displacement(const tlsph_sim* sim, double* out,
                                          size_t capacity);

/* 1 when the trailing-window settling criterion held at the end of the run. */
int tlsph_sim_settled(const tlsph_sim* sim);
double tlsph_sim_settle_time(const tlsph_sim* sim);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TLSPH_H */
