/* C interface to the atom-surface potential library.
 *
 * Every entry point returns a status code matching the CLI exit codes:
 *   0  success
 *   1  internal failure
 *   2  configuration error (bad JSON, unknown key, missing input)
 *   3  tolerance or verification failure
 *   4  physical-domain error (geometry, temperature, resonance hit)
 *
 * On any nonzero status an explanatory message is written to the caller's
 * error buffer, truncated to its length, always NUL terminated.
 */

#ifndef CPNEQ_H
#define CPNEQ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cpneq_ctx cpneq_ctx;

/* Parse a JSON run description (NULL or "" means all defaults) into a
 * context. The context owns every derived table and setting; it is
 * immutable after creation and safe to share across threads running
 * read-only calls. Free with cpneq_ctx_destroy. */
int cpneq_ctx_create(const char* config_json, cpneq_ctx** out, char* errbuf,
                     size_t errlen);
void cpneq_ctx_destroy(cpneq_ctx* ctx);

/* Run one named task:
 *   dispersion | split | imbalance | laser1 | laser2 | lattice | verify
 *
 * format: "csv", "json", or NULL to use the config's output.format.
 * threads: > 0 forces a worker count, <= 0 uses the config (0 = hardware).
 *
 * On success *out receives a malloc'd NUL-terminated table in the requested
 * format; release it with cpneq_string_free. A verify run that produced its
 * table but found failing checks sets *out AND returns 3. Any other nonzero
 * status leaves *out NULL. */
int cpneq_run(cpneq_ctx* ctx, const char* task, const char* format,
              int threads, char** out, char* errbuf, size_t errlen);
void cpneq_string_free(char* s);

const char* cpneq_version(void);

/* Diagnostics collected by the last cpneq_run on this context, one per
 * line, empty string when clean. Valid until the next run or destroy.
 * Contexts must not be shared across threads when using this. */
const char* cpneq_last_warnings(cpneq_ctx* ctx);

/* The config's output.path ("" = stdout) and output.format, so a shell
 * around this API never has to parse the JSON itself. */
const char* cpneq_output_path(cpneq_ctx* ctx);
const char* cpneq_output_format(cpneq_ctx* ctx);

/* Point evaluators on the configured scenario, energies in joules. */

/* Equilibrium surface potential for the configured atom at height L and
 * temperature T. */
int cpneq_equilibrium_energy(cpneq_ctx* ctx, double L, double T, double* U_J,
                             char* errbuf, size_t errlen);

/* Field/atom decomposition, two-level atom configs only:
 * out_J = { U_total, U_field, U_atom, delta }. */
int cpneq_split_energies(cpneq_ctx* ctx, double L, double T, double out_J[4],
                         char* errbuf, size_t errlen);

/* Full trap potential (surface part, bath imbalance if configured, plus all
 * configured beams) at height L and lateral position x. */
int cpneq_total_potential(cpneq_ctx* ctx, double L, double x, double* U_J,
                          char* errbuf, size_t errlen);

#ifdef __cplusplus
}
#endif

#endif /* CPNEQ_H */
