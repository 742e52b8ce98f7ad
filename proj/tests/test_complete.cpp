#include <doctest.h>

#include "complete.hpp"
#include "derived.hpp"
#include "fixtures.hpp"

using namespace homct;
using la::Matrix;

namespace {

FdModule k_right(const AlgebraPtr& a) { return trivial_module(a, Side::Right); }
FdModule k_left(const AlgebraPtr& a) { return trivial_module(a, Side::Left); }

// True if every summand component of d_j is the single element x.
bool all_components_equal(const CompletePtr& t, long j, const Vector& x) {
    for (const auto& row : t->components(j))
        for (const auto& c : row)
            if (c != x) return false;
    return true;
}

}  // namespace

TEST_CASE("k over A1 splices into multiplication by x") {
    auto a = algebra_a1();
    auto res = complete_resolution(k_right(a), 6);
    REQUIRE(res.t);
    CHECK(res.t->method() == CompleteMethod::Splice);
    CHECK(res.t->agreement() == 0);
    Vector x = element(a->opposite(), "x");
    for (long j = -5; j <= 5; ++j) {
        CHECK(res.t->types(j).size() == 1);
        CHECK(res.t->term(j).dim() == 2);
        CHECK(all_components_equal(res.t, j, x));
    }
    auto rep = check_total_acyclicity(res.t, 5);
    CHECK(rep.acyclic);
    CHECK(rep.hom_acyclic);
    CHECK(rep.complex);
    CHECK(rep.failures.empty());
}

TEST_CASE("k over A2 is not certified") {
    auto a = algebra_a2();
    auto res = complete_resolution(k_right(a), 5);
    CHECK_FALSE(res.t);
    CHECK(res.reason.find("no complete resolution certified") != std::string::npos);
}

TEST_CASE("R/(x) over A3 is periodic with multiplication by x") {
    auto a = algebra_a3();
    auto m = cyclic_quotient(a, {element(a, "x")}, Side::Right);
    auto res = complete_resolution(m, 4);
    REQUIRE(res.t);
    // A3 is self-injective, so the splice is preferred; the periodic tail still gives mult-by-x.
    CHECK(res.t->method() == CompleteMethod::Splice);
    Vector x = element(a->opposite(), "x");
    for (long j = -4; j <= 4; ++j) {
        CHECK(res.t->types(j).size() == 1);
        CHECK(all_components_equal(res.t, j, x));
    }
    CHECK(check_total_acyclicity(res.t, 5).failures.empty());
}

TEST_CASE("finite projective dimension gives the zero complete resolution") {
    auto a = make_upper_triangular(2);
    for (std::size_t s = 0; s < 2; ++s) {
        auto m = simple_module(a, s, Side::Right);
        auto res = complete_resolution(m, 4);
        REQUIRE(res.t);
        CHECK(res.t->method() == CompleteMethod::Periodic);
        CHECK(res.t->resolution()->syzygy(static_cast<std::size_t>(res.t->agreement())).dim() == 0);
        for (long j = -4; j <= 4; ++j)
            if (j <= res.t->agreement()) CHECK(res.t->types(j).empty());
        auto rep = check_total_acyclicity(res.t, 4);
        CHECK(rep.failures.empty());
        for (const auto& n : module_corpus(a, Side::Left, 4, 3))
            for (long i = -3; i <= 3; ++i) CHECK(tate_tor(res.t, n.module, i).dim() == 0);
    }
}

TEST_CASE("Tate homology values") {
    for (auto a : {algebra_a1(), algebra_a4()}) {
        auto t = complete_resolution(k_right(a), 6).t;
        REQUIRE(t);
        for (long i = -4; i <= 4; ++i) CHECK(tate_tor(t, k_left(a), i).dim() == 1);
    }
    auto a3 = algebra_a3();
    auto m = cyclic_quotient(a3, {element(a3, "x")}, Side::Right);
    auto n = cyclic_quotient(a3, {element(a3, "y")}, Side::Left);
    auto t = complete_resolution(m, 4).t;
    REQUIRE(t);
    for (long i = -4; i <= 4; ++i) CHECK(tate_tor(t, n, i).dim() == 0);
}

TEST_CASE("Tate homology agrees with Tor beyond the agreement degree") {
    for (auto a : {algebra_a1(), algebra_a3(), algebra_a4()}) {
        for (const auto& e : module_corpus(a, Side::Right, 5, 21)) {
            auto t = complete_resolution(e.module, 6).t;
            REQUIRE(t);
            for (const auto& n : module_corpus(a, Side::Left, 4, 22)) {
                auto tc = tate_complex(t, n.module);
                auto pc = tor_complex(e.module, n.module);
                for (long i = t->agreement() + 1; i <= t->agreement() + 3; ++i) {
                    auto th = tc->homology(i);
                    auto ph = pc->homology(i);
                    REQUIRE(th.dim() == ph.dim());
                    // Identity comparison: Tor representatives stay independent Tate classes.
                    std::vector<Vector> cols;
                    for (std::size_t c = 0; c < ph.dim(); ++c) cols.push_back(th.h.coords(ph.h.rep(c)));
                    if (!cols.empty()) CHECK(la::rank(Matrix::from_columns(cols, th.dim(), a->p())) == th.dim());
                }
            }
        }
    }
}
