#ifndef DOFBC_H
#define DOFBC_H

/* C interface to the DoF / CSIT-feedback tradeoff library for the K-user
 * M-antenna MISO broadcast channel.
 *
 * Conventions:
 *  - Every function returns a dofbc_status; DOFBC_OK means success.
 *  - On failure, dofbc_last_error() returns a thread-local message valid
 *    until the next failing call on the same thread.
 *  - Exact rationals cross the boundary as strings "p/q" (or "p" when the
 *    denominator is 1); vectors as comma-separated lists such as
 *    "1/3,2/3,1". Exact decimals like "0.25" are accepted on input.
 *  - Strings returned through char** out-parameters are heap-allocated and
 *    must be released with dofbc_string_free().
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dofbc_status {
  DOFBC_OK = 0,
  DOFBC_ERR_PARSE = 1,         /* malformed input text */
  DOFBC_ERR_DOMAIN = 2,        /* arguments outside a function's domain */
  DOFBC_ERR_RANGE = 3,         /* value outside its permitted interval */
  DOFBC_ERR_INFEASIBLE = 4,    /* no feasible answer for these inputs */
  DOFBC_ERR_UNSUPPORTED = 5,   /* instance too large for this routine */
  DOFBC_ERR_VALIDATION = 6,    /* schedule structure violates an invariant */
  DOFBC_ERR_NULL_ARGUMENT = 7, /* required pointer argument was NULL */
  DOFBC_ERR_INTERNAL = 8       /* unexpected internal failure */
} dofbc_status;

/* Message for the most recent failure on this thread ("" if none). */
const char* dofbc_last_error(void);

/* Releases any string returned by this library. NULL is ignored. */
void dofbc_string_free(char* s);

/* ---- closed-form bounds -------------------------------------------- */

/* Sum DoF with delayed CSIT only: K / sum_{k=1..K} 1/min{k,M}. */
dofbc_status dofbc_mat_dof(int m, int k, char** out);

/* Delayed-CSIT sum DoF of the user-scaling scheme; requires m < k. */
dofbc_status dofbc_gamma_dof(int m, int k, char** out);

/* Full bound report for per-user quality exponents `alphas_csv` (K entries
 * in [0,1]). JSON fields: m, k, averages, lambda_mat, gamma (when m < k),
 * outer_sum_dof, outer_sum_dof_unclamped, inner_sum_dof, and
 * optimal_sum_dof when inner equals outer. */
dofbc_status dofbc_bound_report_json(int m, int k, const char* alphas_csv,
                                     char** out);

/* CSV "delta,outer,inner,optimal" over an even grid of `grid_points`
 * symmetric feedback fractions in [0,1]. mode: "alternating" or "delayed". */
dofbc_status dofbc_curve_csv(int m, int k, const char* mode, int grid_points,
                             char** out);

/* Minimum feedback cost. With target != NULL (m=2, k=3 only): least total
 * perfect-CSIT cost sustaining that sum DoF, as {"cost":"p/q"}. With
 * target == NULL: cost and active-user requirements for the maximum sum
 * DoF min{M,K}. */
dofbc_status dofbc_min_cost_json(int m, int k, const char* target, char** out);

/* ---- DoF region queries -------------------------------------------- */

/* Membership verdict for the DoF point `dof_csv` under exponent averages
 * `alphas_csv`: {"inside":bool,"slack":"p/q","tightest_permutation":[...]}.
 * The permutation is the lexicographically least minimum-slack ordering. */
dofbc_status dofbc_check_point_json(int m, int k, const char* alphas_csv,
                                    const char* dof_csv, char** out);

/* Exact maximum of sum_k d_k over the region (k <= 6):
 * {"value":"p/q","argmax":[...]}. */
dofbc_status dofbc_max_sum_dof_json(int m, int k, const char* alphas_csv,
                                    char** out);

/* ---- schedules ------------------------------------------------------ */

typedef struct dofbc_schedule dofbc_schedule;

/* Synthesizes a feedback schedule. scheme: "greedy" (budgeted user
 * selection; deltas_csv must sum to min{M,K}), "two-block" (m=2, k=3
 * perfect block + retrospective tail), "delayed-4/3" or "delayed-3/2"
 * (delayed-CSIT block schedules; deltas_csv is ignored and may be NULL). */
dofbc_status dofbc_schedule_synthesize(int m, int k, const char* deltas_csv,
                                       const char* scheme,
                                       dofbc_schedule** out);

/* Parses the JSON encoding produced by dofbc_schedule_to_json. */
dofbc_status dofbc_schedule_from_json(const char* json, dofbc_schedule** out);

/* Stable-field-order JSON encoding, including a fresh audit. */
dofbc_status dofbc_schedule_to_json(const dofbc_schedule* s, char** out);

/* Audit only: per-user perfect/delayed feedback fractions, sum DoF, and
 * total perfect cost. Validates the schedule structure. */
dofbc_status dofbc_schedule_audit_json(const dofbc_schedule* s, char** out);

/* Number of slots, or -1 if s is NULL. */
long dofbc_schedule_slot_count(const dofbc_schedule* s);

void dofbc_schedule_free(dofbc_schedule* s);

/* Time sharing between operating points (delta_a, dof_a) and (delta_b,
 * dof_b) to hit `target` in [delta_a, delta_b]:
 * {"fraction_a":"p/q","dof":"p/q"}. */
dofbc_status dofbc_time_share_json(const char* delta_a, const char* dof_a,
                                   const char* delta_b, const char* dof_b,
                                   const char* target, char** out);

/* ---- Monte Carlo ---------------------------------------------------- */

/* Zero-forcing sum-rate sweep. alphas_csv: K quality exponents; active_csv:
 * 1-based user ids or NULL for users 1..min{M,K}; snr_grid: "start:stop:step"
 * in dB. csv_out rows: snr_db,mean_value,stderr. json_out: slope fit summary.
 * Either output pointer may be NULL to skip it. */
dofbc_status dofbc_simulate_zf(int m, int k, const char* alphas_csv,
                               const char* active_csv, const char* snr_grid,
                               long trials, uint64_t seed, char** csv_out,
                               char** json_out);

/* Randomized verification suite: "lemma1", "lemma2", "lemma3", or "prop4".
 * trials <= 0 selects the suite default. pass_out receives 1/0. csv_out
 * (optional) receives per-point data for the slope suites; json_out
 * (optional) receives the summary. */
dofbc_status dofbc_verify(const char* check, long trials, uint64_t seed,
                          int* pass_out, char** csv_out, char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DOFBC_H */
