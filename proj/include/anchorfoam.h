/* anchorfoam: exact evaluation of anchored gl_N foams, annular MOY webs,
 * universal-construction state spaces, and cubes of resolutions.
 *
 * C API over the C++ core. All objects are opaque handles; every function
 * that can fail returns a status code (or NULL for constructors) and leaves
 * a message retrievable with af_last_error(). Strings returned as char* are
 * heap-allocated; release them with af_string_free().
 */
#ifndef ANCHORFOAM_H
#define ANCHORFOAM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define AF_API __declspec(dllexport)
#else
#define AF_API __attribute__((visibility("default")))
#endif

typedef enum af_status {
    AF_OK = 0,
    AF_CHECK_FAILED = 1, /* a mathematical check failed (not an input error) */
    AF_INPUT_ERROR = 2,  /* parse, schema, or validation failure */
    AF_INTERNAL = 3
} af_status;

typedef struct af_foam af_foam;
typedef struct af_web af_web;
typedef struct af_diagram af_diagram;

AF_API const char* af_version(void);
AF_API const char* af_last_error(void);
AF_API void af_string_free(char* s);

/* --- parsing ----------------------------------------------------------- */

AF_API af_foam* af_foam_parse(const char* json_text, int n);
AF_API af_web* af_web_parse(const char* json_text, int n);
AF_API af_diagram* af_diagram_parse(const char* json_text, int n);
AF_API void af_foam_free(af_foam* f);
AF_API void af_web_free(af_web* w);
AF_API void af_diagram_free(af_diagram* d);

AF_API char* af_foam_serialize(const af_foam* f);
AF_API char* af_web_serialize(const af_web* w);
AF_API char* af_diagram_serialize(const af_diagram* d);

/* --- foam evaluation ---------------------------------------------------- */

/* Validation diagnostics as one line per finding; empty string when clean. */
AF_API char* af_foam_validate(const af_foam* f, int n);

/* Canonical polynomial string of the closed evaluation <F>. */
AF_API char* af_foam_evaluate(const af_foam* f, int n, af_status* status);

/* qdeg(F); adeg written into out[0..n-1]. */
AF_API af_status af_foam_qdeg(const af_foam* f, int n, int* out);
AF_API af_status af_foam_adeg(const af_foam* f, int n, int* out);

/* Number of admissible colorings. */
AF_API af_status af_foam_coloring_count(const af_foam* f, int n, long* out);

/* Per-coloring rows "facets=... s=... P=... Q=... Qtilde=... value=...",
 * one per line, in canonical coloring order. */
AF_API char* af_foam_colorings(const af_foam* f, int n, int per_coloring,
                               af_status* status);

/* Local-relation suite; one line per relation. Status is AF_CHECK_FAILED
 * when any relation fails. */
AF_API char* af_relations_run(int n, af_status* status);

/* --- webs --------------------------------------------------------------- */

AF_API char* af_web_validate(const af_web* w, int n);
AF_API char* af_web_evaluate(const af_web* w, int n, af_status* status);

/* --- state spaces -------------------------------------------------------- */

/* Gram matrix of the foams in `foams_json` (a JSON list), one row per line
 * of canonical polynomial strings separated by " | ". */
AF_API char* af_gram(const char* foams_json, int n, int threads, af_status* status);

/* Rank at a specialization given as comma-separated rationals ("1,2,3"), or
 * NULL for the standard x_i = i. Returns -1 on error. `degenerate` (optional)
 * is set to 1 when a random re-specialization found a higher rank. */
AF_API int af_rank(const char* foams_json, int n, const char* spec_csv, uint64_t seed,
                   int* degenerate);

/* probe-equal: pair_json = {"f":..., "g":..., "probes_in":[...],
 * "probes_out":[...]}. Result: 1 equal on probes, 0 not, -1 error. */
AF_API int af_probe_equal(const char* pair_json, int n);

/* --- complexes ----------------------------------------------------------- */

AF_API char* af_complex_euler(const af_diagram* d, int n, af_status* status);
AF_API char* af_complex_cube_dump(const af_diagram* d, int n, af_status* status);

/* d^2 probe check; one line per square. Status AF_CHECK_FAILED if a square
 * fails. `negate` runs the sign-flipped negative control, which is expected
 * to fail (status AF_OK then means the control behaved as expected). */
AF_API char* af_complex_d2_check(const af_diagram* d, int n, int negate,
                                 af_status* status);

#ifdef __cplusplus
}
#endif

#endif /* ANCHORFOAM_H */
