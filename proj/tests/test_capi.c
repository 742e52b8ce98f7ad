/* Exercises the shared library through its C header only. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "homct/homct.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

static void test_handles(void) {
    homct_algebra* a = NULL;
    EXPECT(homct_algebra_open("A1", &a) == HOMCT_OK);
    unsigned p = 0;
    size_t dim = 0;
    EXPECT(homct_algebra_info(a, &p, &dim) == HOMCT_OK);
    EXPECT(p == 2 && dim == 2);

    homct_module *m = NULL, *n = NULL;
    EXPECT(homct_module_open(a, "k", HOMCT_RIGHT, &m) == HOMCT_OK);
    EXPECT(homct_module_open(a, "k", HOMCT_LEFT, &n) == HOMCT_OK);
    EXPECT(homct_module_dim(n, &dim) == HOMCT_OK && dim == 1);

    for (long i = 0; i <= 3; ++i) {
        size_t t = 99;
        EXPECT(homct_tor_dim(m, n, i, &t) == HOMCT_OK && t == 1);
    }
    size_t t = 99;
    EXPECT(homct_tor_dim(m, n, -1, &t) == HOMCT_OK && t == 0);
    EXPECT(homct_ext_dim(n, n, 2, &t) == HOMCT_OK && t == 1);
    EXPECT(homct_ext_dim(m, n, 2, &t) == HOMCT_ERR_INVALID_ARGUMENT);

    for (long i = -4; i <= 4; ++i) {
        homct_verdict v = HOMCT_INCONCLUSIVE;
        size_t lim = 99, tate = 99;
        EXPECT(homct_complete_homology(m, n, i, 5, 2, &v, &lim) == HOMCT_OK);
        EXPECT(v == HOMCT_STABILIZED && lim == 1);
        EXPECT(homct_tate_dim(m, n, i, 6, &tate) == HOMCT_OK && tate == 1);
    }
    homct_module_free(m);
    homct_module_free(n);
    homct_algebra_free(a);

    homct_algebra* a2 = NULL;
    homct_module *k2r = NULL, *k2l = NULL;
    EXPECT(homct_algebra_open("A2", &a2) == HOMCT_OK);
    EXPECT(homct_module_open(a2, "k", HOMCT_RIGHT, &k2r) == HOMCT_OK);
    EXPECT(homct_module_open(a2, "k", HOMCT_LEFT, &k2l) == HOMCT_OK);
    EXPECT(homct_tate_dim(k2r, k2l, 0, 4, &t) == HOMCT_ERR_NO_CERTIFICATE);
    EXPECT(strstr(homct_last_error(), "no complete resolution certified") != NULL);
    homct_verdict v = HOMCT_STABILIZED;
    EXPECT(homct_complete_homology(k2r, k2l, 0, 3, 2, &v, NULL) == HOMCT_OK && v == HOMCT_NOT_STABILIZED);
    homct_module_free(k2r);
    homct_module_free(k2l);
    homct_algebra_free(a2);
}

static void test_errors(void) {
    homct_algebra* a = NULL;
    EXPECT(homct_algebra_open("no-such-algebra.json", &a) == HOMCT_ERR_IO);
    EXPECT(a == NULL);
    EXPECT(homct_algebra_open(NULL, &a) == HOMCT_ERR_NULL_ARGUMENT);
    EXPECT(homct_algebra_from_json("{\"p\":2,\"dim\":2,\"basis\":[\"1\",\"x\"],\"unit\":[1,0],"
                                   "\"mul\":[[[1,0],[0,1]],[[0,1]]]}",
                                   &a) == HOMCT_ERR_SCHEMA);
    EXPECT(strstr(homct_last_error(), "$.mul[1]") != NULL);
    EXPECT(homct_algebra_from_json("{not json", &a) == HOMCT_ERR_SCHEMA);

    EXPECT(homct_algebra_from_json("{\"p\":2,\"dim\":2,\"basis\":[\"1\",\"x\"],\"unit\":[1,0],"
                                   "\"mul\":[[[1,0],[0,1]],[[0,1],[0,0]]]}",
                                   &a) == HOMCT_OK);
    homct_module* m = NULL;
    EXPECT(homct_module_from_json(a, "{\"algebra\":\"a1.json\",\"side\":\"left\",\"dim\":1,\"action\":[[[0]],[[0]]]}",
                                  &m) == HOMCT_ERR_VALIDATION);
    EXPECT(strstr(homct_last_error(), "rho(unit) != id") != NULL);
    EXPECT(homct_module_from_json(a, "{\"algebra\":\"a1.json\",\"side\":\"left\",\"dim\":1,\"action\":[[[1]],[[0]]]}",
                                  &m) == HOMCT_OK);
    homct_module_free(m);
    homct_algebra_free(a);
}

static void test_reports(void) {
    char* out = NULL;
    int ok = 0;
    EXPECT(homct_run_compute("{\"algebra\":\"A1\",\"module_m\":\"k\",\"module_n\":\"k\",\"theory\":\"compare\","
                             "\"degrees\":[-2,2]}",
                             HOMCT_FORMAT_JSON, &out, &ok) == HOMCT_OK);
    EXPECT(ok == 1);
    EXPECT(out && strstr(out, "\"all_agree\": true") != NULL);
    homct_string_free(out);

    out = NULL;
    EXPECT(homct_run_compute("{\"algebra\":\"A1\",\"module_m\":\"k\",\"module_n\":\"k\",\"theory\":\"tor\","
                             "\"degrees\":[0,1]}",
                             HOMCT_FORMAT_CSV, &out, &ok) == HOMCT_OK);
    EXPECT(out && strstr(out, "tor,1,1") != NULL);
    homct_string_free(out);

    EXPECT(homct_run_compute("{\"algebra\":\"A1\"}", HOMCT_FORMAT_JSON, &out, &ok) == HOMCT_ERR_SCHEMA);

    out = NULL;
    EXPECT(homct_run_corpus("{\"seed\":3,\"count\":4,\"algebras\":[\"A4\"]}", HOMCT_FORMAT_CSV, &out, &ok) ==
           HOMCT_OK);
    EXPECT(ok == 1);
    EXPECT(out && strstr(out, "A4,vanishing") != NULL);
    homct_string_free(out);

    out = NULL;
    EXPECT(homct_dump_resolution("A2", "k", HOMCT_LEFT, 3, &out) == HOMCT_OK);
    EXPECT(out && strstr(out, "\"betti\"") != NULL);
    homct_string_free(out);
    EXPECT(homct_dump_resolution("A2", "k", HOMCT_LEFT, 0, &out) == HOMCT_ERR_INVALID_ARGUMENT);
}

int main(void) {
    EXPECT(strncmp(homct_version(), "homct ", 6) == 0);
    test_handles();
    test_errors();
    test_reports();
    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    return failures ? 1 : 0;
}
