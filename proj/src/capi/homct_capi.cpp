#include "homct/homct.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "complete.hpp"
#include "completion.hpp"
#include "derived.hpp"
#include "error.hpp"
#include "io.hpp"
#include "report.hpp"

struct homct_algebra {
    homct::AlgebraPtr a;
};

struct homct_module {
    homct::FdModule m;
};

namespace {

thread_local std::string last_error;

homct_status set_error(homct_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
homct_status guarded(F&& body) {
    try {
        body();
        return HOMCT_OK;
    } catch (const homct::Error& e) {
        return set_error(static_cast<homct_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(HOMCT_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return set_error(HOMCT_ERR_UNKNOWN, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

homct::Side to_side(homct_side s) { return s == HOMCT_RIGHT ? homct::Side::Right : homct::Side::Left; }

std::string render(const homct::Json& report, homct_format format) {
    return format == HOMCT_FORMAT_CSV ? homct::report_to_csv(report) : report.dump(2) + "\n";
}

homct::Json parse_request(const char* json) {
    try {
        return homct::Json::parse(json);
    } catch (const homct::Json::parse_error& e) {
        homct::fail(homct::ErrorCode::Schema, std::string("schema error in request: ") + e.what());
    }
}

}  // namespace

#define HOMCT_REQUIRE_ARGS(cond) \
    if (!(cond)) return set_error(HOMCT_ERR_NULL_ARGUMENT, "null argument")

extern "C" {

const char* homct_version(void) { return homct::kToolVersion; }

const char* homct_last_error(void) { return last_error.c_str(); }

void homct_string_free(char* s) { std::free(s); }

homct_status homct_algebra_open(const char* spec, homct_algebra** out) {
    HOMCT_REQUIRE_ARGS(spec && out);
    return guarded([&] { *out = new homct_algebra{homct::resolve_algebra(spec)}; });
}

homct_status homct_algebra_from_json(const char* json, homct_algebra** out) {
    HOMCT_REQUIRE_ARGS(json && out);
    return guarded([&] { *out = new homct_algebra{homct::algebra_from_json(parse_request(json))}; });
}

homct_status homct_algebra_info(const homct_algebra* a, unsigned* p, size_t* dim) {
    HOMCT_REQUIRE_ARGS(a);
    if (p) *p = a->a->p();
    if (dim) *dim = a->a->dim();
    return HOMCT_OK;
}

void homct_algebra_free(homct_algebra* a) { delete a; }

homct_status homct_module_open(const homct_algebra* a, const char* spec, homct_side side, homct_module** out) {
    HOMCT_REQUIRE_ARGS(a && spec && out);
    return guarded([&] { *out = new homct_module{homct::resolve_module(spec, a->a, to_side(side))}; });
}

homct_status homct_module_from_json(const homct_algebra* a, const char* json, homct_module** out) {
    HOMCT_REQUIRE_ARGS(a && json && out);
    return guarded([&] { *out = new homct_module{homct::module_from_json(parse_request(json), a->a)}; });
}

homct_status homct_module_dim(const homct_module* m, size_t* dim) {
    HOMCT_REQUIRE_ARGS(m && dim);
    *dim = m->m.dim();
    return HOMCT_OK;
}

void homct_module_free(homct_module* m) { delete m; }

homct_status homct_tor_dim(const homct_module* m, const homct_module* n, long i, size_t* dim) {
    HOMCT_REQUIRE_ARGS(m && n && dim);
    return guarded([&] { *dim = i < 0 ? 0 : homct::tor(m->m, n->m, i).dim(); });
}

homct_status homct_ext_dim(const homct_module* m, const homct_module* n, long i, size_t* dim) {
    HOMCT_REQUIRE_ARGS(m && n && dim);
    return guarded([&] { *dim = i < 0 ? 0 : homct::ext(m->m, n->m, i).dim(); });
}

homct_status homct_complete_homology(const homct_module* m, const homct_module* n, long i, size_t depth,
                                     size_t window, homct_verdict* verdict, size_t* limit_dim) {
    HOMCT_REQUIRE_ARGS(m && n && verdict);
    return guarded([&] {
        auto r = homct::complete_homology(m->m, n->m, i, depth, window);
        *verdict = static_cast<homct_verdict>(static_cast<int>(r.verdict));
        if (limit_dim && r.verdict == homct::Verdict::Stabilized) *limit_dim = r.limit_dim;
    });
}

homct_status homct_tate_dim(const homct_module* m, const homct_module* n, long i, size_t depth, size_t* dim) {
    HOMCT_REQUIRE_ARGS(m && n && dim);
    return guarded([&] {
        auto cr = homct::complete_resolution(m->m, depth);
        homct::require(cr.t != nullptr, homct::ErrorCode::NoCertificate,
                       "no complete resolution certified: " + cr.reason);
        *dim = homct::tate_tor(cr.t, n->m, i).dim();
    });
}

homct_status homct_run_compute(const char* request_json, homct_format format, char** out, int* ok) {
    HOMCT_REQUIRE_ARGS(request_json && out);
    return guarded([&] {
        auto r = homct::run_compute(homct::request_from_json(parse_request(request_json)));
        *out = copy_string(render(r.report, format));
        if (ok) *ok = r.ok ? 1 : 0;
    });
}

homct_status homct_run_corpus(const char* request_json, homct_format format, char** out, int* ok) {
    HOMCT_REQUIRE_ARGS(request_json && out);
    return guarded([&] {
        auto r = homct::run_corpus(homct::corpus_request_from_json(parse_request(request_json)));
        *out = copy_string(render(r.report, format));
        if (ok) *ok = r.ok ? 1 : 0;
    });
}

homct_status homct_dump_resolution(const char* algebra, const char* module, homct_side side, size_t depth,
                                   char** out) {
    HOMCT_REQUIRE_ARGS(algebra && module && out);
    return guarded([&] {
        *out = copy_string(homct::run_dump_resolution(algebra, module, to_side(side), depth).dump(2) + "\n");
    });
}

}  // extern "C"
