#ifndef HOMCT_H
#define HOMCT_H

/* C interface to the homct library: Tor, Ext, complete, stable and Tate
 * homology over finite-dimensional algebras over F_p.
 *
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Every fallible call returns a homct_status; on failure the
 * message is available from homct_last_error() on the same thread until the
 * next failing call. Strings returned through char** are heap-allocated and
 * released with homct_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HOMCT_API __declspec(dllexport)
#else
#define HOMCT_API __attribute__((visibility("default")))
#endif

typedef enum homct_status {
    HOMCT_OK = 0,
    HOMCT_ERR_INVALID_ARGUMENT = 1,
    HOMCT_ERR_DIMENSION_MISMATCH = 2,
    HOMCT_ERR_VALIDATION = 3,
    HOMCT_ERR_SCHEMA = 4,
    HOMCT_ERR_NOT_SUBMODULE_COMPATIBLE = 5,
    HOMCT_ERR_NOT_ACTION_STABLE = 6,
    HOMCT_ERR_UNSUPPORTED_ALGEBRA = 7,
    HOMCT_ERR_RADICAL_FAILED = 8,
    HOMCT_ERR_NOT_A_GROUP = 9,
    HOMCT_ERR_NOT_FINITE_DIMENSIONAL = 10,
    HOMCT_ERR_NO_CERTIFICATE = 11,
    HOMCT_ERR_WINDOW_EXHAUSTED = 12,
    HOMCT_ERR_NOT_STABLE_CYCLE = 13,
    HOMCT_ERR_LIFT_FAILED = 14,
    HOMCT_ERR_INTERNAL_MISMATCH = 15,
    HOMCT_ERR_INCONCLUSIVE = 16,
    HOMCT_ERR_IO = 17,
    HOMCT_ERR_NULL_ARGUMENT = 64,
    HOMCT_ERR_UNKNOWN = 99
} homct_status;

typedef enum homct_side { HOMCT_LEFT = 0, HOMCT_RIGHT = 1 } homct_side;

typedef enum homct_verdict {
    HOMCT_STABILIZED = 0,
    HOMCT_NOT_STABILIZED = 1,
    HOMCT_INCONCLUSIVE = 2
} homct_verdict;

typedef enum homct_format { HOMCT_FORMAT_JSON = 0, HOMCT_FORMAT_CSV = 1 } homct_format;

typedef struct homct_algebra homct_algebra;
typedef struct homct_module homct_module;

HOMCT_API const char* homct_version(void);
HOMCT_API const char* homct_last_error(void);
HOMCT_API void homct_string_free(char* s);

/* spec: a JSON file path or a fixture name A1..A4. */
HOMCT_API homct_status homct_algebra_open(const char* spec, homct_algebra** out);
HOMCT_API homct_status homct_algebra_from_json(const char* json, homct_algebra** out);
HOMCT_API homct_status homct_algebra_info(const homct_algebra* a, unsigned* p, size_t* dim);
HOMCT_API void homct_algebra_free(homct_algebra* a);

/* spec: a JSON file path or one of k, R, DR, R/(x,...). */
HOMCT_API homct_status homct_module_open(const homct_algebra* a, const char* spec, homct_side side,
                                         homct_module** out);
HOMCT_API homct_status homct_module_from_json(const homct_algebra* a, const char* json, homct_module** out);
HOMCT_API homct_status homct_module_dim(const homct_module* m, size_t* dim);
HOMCT_API void homct_module_free(homct_module* m);

/* m a right module, n a left module. */
HOMCT_API homct_status homct_tor_dim(const homct_module* m, const homct_module* n, long i, size_t* dim);
/* m, n modules on the same side. */
HOMCT_API homct_status homct_ext_dim(const homct_module* m, const homct_module* n, long i, size_t* dim);
/* Limit of the cosyzygy tower; limit_dim is set only when the verdict is HOMCT_STABILIZED. */
HOMCT_API homct_status homct_complete_homology(const homct_module* m, const homct_module* n, long i, size_t depth,
                                               size_t window, homct_verdict* verdict, size_t* limit_dim);
/* Tate homology from a certified complete resolution of m; HOMCT_ERR_NO_CERTIFICATE otherwise. */
HOMCT_API homct_status homct_tate_dim(const homct_module* m, const homct_module* n, long i, size_t depth,
                                      size_t* dim);

/* Request objects are JSON; see the report schema. ok is 1 iff the run found
 * no invariant violations and no internal mismatches. */
HOMCT_API homct_status homct_run_compute(const char* request_json, homct_format format, char** out, int* ok);
HOMCT_API homct_status homct_run_corpus(const char* request_json, homct_format format, char** out, int* ok);
HOMCT_API homct_status homct_dump_resolution(const char* algebra, const char* module, homct_side side,
                                             size_t depth, char** out);

#ifdef __cplusplus
}
#endif

#endif
