/*
 * coblab C API.
 *
 * Every fallible call returns a coblab_status; on anything but COBLAB_OK the
 * message is available from coblab_last_error() on the calling thread.
 * Strings returned through `char**` are heap-allocated and must be released
 * with coblab_string_free(). Strings returned as `const char*` from a handle
 * are owned by that handle.
 *
 * Words use lowercase letters for generators and uppercase for inverses; the
 * empty string is the identity. Cayley-tree vertices are words, finite-tree
 * vertices are decimal ids.
 */
#ifndef COBLAB_COBLAB_H
#define COBLAB_COBLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COBLAB_API __declspec(dllexport)
#else
#define COBLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coblab_status {
  COBLAB_OK = 0,
  COBLAB_ERR_INVALID_ARGUMENT = 1, /* null pointer, malformed word or vertex */
  COBLAB_ERR_CONFIG = 2,           /* bad campaign, tree selector or tree file */
  COBLAB_ERR_DOMAIN = 3,           /* tuple outside the operation's domain */
  COBLAB_ERR_UNSUPPORTED = 4,      /* needs path labels (Cayley tree only) */
  COBLAB_ERR_INTERNAL = 5
} coblab_status;

typedef struct coblab_tree coblab_tree;
typedef struct coblab_config coblab_config;
typedef struct coblab_report coblab_report;

COBLAB_API const char* coblab_version(void);
COBLAB_API const char* coblab_status_name(coblab_status status);
COBLAB_API const char* coblab_last_error(void);
COBLAB_API void coblab_string_free(char* s);

/* Free group. */
COBLAB_API coblab_status coblab_word_reduce(int rank, const char* word, char** out);
COBLAB_API coblab_status coblab_word_multiply(int rank, const char* g, const char* h, char** out);
COBLAB_API coblab_status coblab_word_inverse(int rank, const char* g, char** out);
COBLAB_API coblab_status coblab_count_occurrences(int rank, const char* w, const char* g,
                                                  uint64_t* out);
COBLAB_API coblab_status coblab_brooks_value(int rank, const char* w, const char* g, int64_t* out);
COBLAB_API coblab_status coblab_ball_size(int rank, int radius, uint64_t* out);
COBLAB_API coblab_status coblab_defect_search(int rank, const char* w, int radius, int64_t* max,
                                              char** witness_g, char** witness_h);

/* Trees. */
COBLAB_API coblab_status coblab_tree_open(const char* selector, coblab_tree** out);
/* Same text format as tree files: "n\nu v\n..." */
COBLAB_API coblab_status coblab_tree_parse(const char* text, coblab_tree** out);
COBLAB_API void coblab_tree_free(coblab_tree* tree);
COBLAB_API int coblab_tree_is_cayley(const coblab_tree* tree);
COBLAB_API coblab_status coblab_tree_distance(const coblab_tree* tree, const char* x, const char* y,
                                              uint64_t* out);
/* Comma-separated vertex list from x to y. */
COBLAB_API coblab_status coblab_tree_geodesic(const coblab_tree* tree, const char* x, const char* y,
                                              char** out);
COBLAB_API coblab_status coblab_tree_median(const coblab_tree* tree, const char* x0, const char* x1,
                                            const char* x2, char** out);
COBLAB_API coblab_status coblab_tree_is_aligned(const coblab_tree* tree, const char* const* xs,
                                                size_t n, int* out);
COBLAB_API coblab_status coblab_tree_is_coherent(const coblab_tree* tree, const char* const* xs,
                                                 size_t n, int* out);

/* Cochains evaluated at a tuple. Rationals are rendered "num/den". */
COBLAB_API int coblab_tau_sign(int q);
/* Debug serialization, one canonical path per line. */
COBLAB_API coblab_status coblab_eta_serialize(const coblab_tree* tree, const char* x0,
                                              const char* x1, char** out);
COBLAB_API coblab_status coblab_omega_serialize(const coblab_tree* tree, const char* x0,
                                                const char* x1, const char* x2, char** out);
COBLAB_API coblab_status coblab_omega_norm(const coblab_tree* tree, const char* x0, const char* x1,
                                           const char* x2, char** out);
/* xs has 4 entries and must be coherent. */
COBLAB_API coblab_status coblab_B_bound(const coblab_tree* tree, const char* const* xs, char** out);
/* xs has 5 entries and must be coherent; *holds is 1 or 0. */
COBLAB_API coblab_status coblab_verify_prop5(const coblab_tree* tree, const char* const* xs,
                                             int* holds);
COBLAB_API coblab_status coblab_verify_a_chain(const coblab_tree* tree, const char* const* xs,
                                               int* holds);
/* Cayley only. */
COBLAB_API coblab_status coblab_lambda_eta(const coblab_tree* tree, const char* w, const char* x0,
                                           const char* x1, char** out);
COBLAB_API coblab_status coblab_scalar_cup_primitive(const coblab_tree* tree, const char* w,
                                                     const char* w2, const char* const* xs,
                                                     char** out);

/* Campaigns. */
COBLAB_API size_t coblab_campaign_count(void);
COBLAB_API const char* coblab_campaign_name(size_t index);

COBLAB_API coblab_status coblab_config_create(const char* campaign, const char* tree_selector,
                                              coblab_config** out);
COBLAB_API void coblab_config_free(coblab_config* config);
COBLAB_API coblab_status coblab_config_set_samples(coblab_config* config, uint64_t samples);
COBLAB_API coblab_status coblab_config_set_radius(coblab_config* config, int radius);
COBLAB_API coblab_status coblab_config_set_seed(coblab_config* config, uint64_t seed);
COBLAB_API coblab_status coblab_config_add_word(coblab_config* config, const char* word);
COBLAB_API coblab_status coblab_config_set_word2(coblab_config* config, const char* word);
/* 0 selects one worker per hardware thread; never changes the report. */
COBLAB_API coblab_status coblab_config_set_workers(coblab_config* config, unsigned workers);

/* COBLAB_OK whenever the campaign ran, pass or fail; see coblab_report_passed. */
COBLAB_API coblab_status coblab_campaign_run(const coblab_config* config, coblab_report** out);
COBLAB_API void coblab_report_free(coblab_report* report);
COBLAB_API int coblab_report_passed(const coblab_report* report);
COBLAB_API uint64_t coblab_report_checks_run(const coblab_report* report);
COBLAB_API size_t coblab_report_failure_count(const coblab_report* report);
/* Valid until the next call on the same report or until it is freed. */
COBLAB_API const char* coblab_report_json(coblab_report* report, int include_timing);
COBLAB_API const char* coblab_report_text(coblab_report* report, int include_timing);

#ifdef __cplusplus
}
#endif

#endif /* COBLAB_COBLAB_H */
