/* C API for the sed core: opaque handles plus integer status codes.
 * Everything the CLI needs goes through this surface. */

#ifndef SED_C_H
#define SED_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SED_OK = 0,
    SED_ERR_CONFIG = 1,
    SED_ERR_TOLERANCE = 2,
    SED_ERR_DOMAIN = 3,
    SED_ERR_IO = 4,
    SED_ERR_INTERNAL = 5
} sed_status;

/* Last error message of the calling thread (empty string when none). */
const char* sed_last_error(void);

/* ---- experiment harness ------------------------------------------------- */

/* Runs one experiment from an INI config file. `experiment` may be NULL when
 * the config names it. seed_override < 0 keeps the config seed. out_dir may
 * be NULL. Returns the exit-code contract: 0 / 1 / 2. */
int sed_run_experiment(const char* config_path, const char* experiment,
                       long long seed_override, const char* out_dir,
                       int check_mode);

/* Canonical default config for an experiment; returns required length
 * (excluding NUL), or -1 on error. Truncates to `cap`. */
long long sed_default_config(const char* experiment, char* buf, size_t cap);

/* ---- vacuum field ------------------------------------------------------- */

typedef struct sed_mode_set sed_mode_set;

sed_status sed_mode_set_build(size_t count, double omega_min, double omega_max,
                              int stratified, double omega0, double linewidth,
                              double uniform_mix, uint64_t seed,
                              sed_mode_set** out);
void sed_mode_set_free(sed_mode_set* ms);
size_t sed_mode_set_size(const sed_mode_set* ms);
sed_status sed_electric_field_at(const sed_mode_set* ms, const double r[3],
                                 double t, double out[3]);
sed_status sed_vector_potential_at(const sed_mode_set* ms, const double r[3],
                                   double t, double out[3]);

/* ---- oscillator --------------------------------------------------------- */

sed_status sed_radiation_time_constant(double e, double m, double c, double* tau);
sed_status sed_susceptibility(double omega, double omega0, double tau,
                              double* re, double* im);
/* Natural units, hbar = m = e = 1; cutoffs and law from the mode set. */
sed_status sed_commutator_mode_sum(const sed_mode_set* ms, double omega0,
                                   double tau, double* value);

/* ---- uncertainty / hydrogen --------------------------------------------- */

sed_status sed_angular_momentum_total(int l, double hbar, double* l2_total);
sed_status sed_hlike_ground(int z, double e, double m, double hbar, double* r_min,
                            double* e_min);

#ifdef __cplusplus
}
#endif

#endif /* SED_C_H */
