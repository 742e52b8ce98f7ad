#include <doctest.h>

#include <random>

#include "derived.hpp"
#include "error.hpp"
#include "fixtures.hpp"

using namespace homct;
using la::Matrix;

namespace {

FdModule k_left(const AlgebraPtr& a) { return trivial_module(a, Side::Left); }
FdModule k_right(const AlgebraPtr& a) { return trivial_module(a, Side::Right); }

// Random proper submodule sequence of a corpus module.
ShortExactSeq random_sequence(const AlgebraPtr& a, std::mt19937_64& rng) {
    auto corpus = module_corpus(a, Side::Left, 12, rng());
    for (;;) {
        const auto& m = corpus[rng() % corpus.size()].module;
        if (m.dim() < 2) continue;
        Vector v(m.dim());
        for (auto& x : v) x = static_cast<Scalar>(rng() % a->p());
        if (la::is_zero(v)) continue;
        auto [sub, inc] = submodule(m, {v});
        return submodule_sequence(m, la::image_basis(inc.matrix));
    }
}

}  // namespace

TEST_CASE("Tor over the fixtures") {
    auto a1 = algebra_a1();
    for (long i = 0; i <= 6; ++i) CHECK(tor(k_right(a1), k_left(a1), i).dim() == 1);
    CHECK(tor(k_right(a1), k_left(a1), -1).dim() == 0);
    auto a2 = algebra_a2();
    for (long j = 0; j <= 4; ++j) CHECK(tor(k_right(a2), k_left(a2), j).dim() == (std::size_t{1} << (2 * j)) >> j);
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()})
        for (const auto& e : module_corpus(a, Side::Left, 8, 2))
            for (long i = 1; i <= 3; ++i) CHECK(tor(regular_module(a, Side::Right), e.module, i).dim() == 0);
}

TEST_CASE("Ext over the fixtures") {
    auto a1 = algebra_a1();
    for (long i = 0; i <= 6; ++i) CHECK(ext(k_left(a1), k_left(a1), i).dim() == 1);
    auto a2 = algebra_a2();
    for (long j = 0; j <= 4; ++j) CHECK(ext(k_left(a2), k_left(a2), j).dim() == (std::size_t{1} << j));
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()})
        for (const auto& e : module_corpus(a, Side::Left, 8, 4))
            for (long i = 1; i <= 3; ++i) CHECK(ext(regular_module(a, Side::Left), e.module, i).dim() == 0);
}

TEST_CASE("unit laws, balance and duality") {
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4(), make_upper_triangular(2)}) {
        auto rights = module_corpus(a, Side::Right, 6, 8);
        auto lefts = module_corpus(a, Side::Left, 6, 9);
        for (const auto& m : rights)
            for (const auto& n : lefts) {
                CHECK(tor(m.module, n.module, 0).dim() == tensor_over_algebra(m.module, n.module).dim);
                // Tor_i(m, D n') = D Ext^i(m, n') with n' = D n a right module.
                for (long i = 0; i <= 2; ++i) CHECK(tor(m.module, n.module, i).dim() == ext(m.module, dual(n.module), i).dim());
            }
        for (const auto& m : lefts)
            for (const auto& n : lefts) CHECK(ext(m.module, n.module, 0).dim() == hom_over_algebra(m.module, n.module).dim());
        if (!a->is_commutative()) continue;
        for (const auto& m : lefts)
            for (const auto& n : lefts)
                for (long i = 0; i <= 3; ++i) {
                    auto mr = FdModule(a, Side::Right, m.module.actions());
                    auto nr = FdModule(a, Side::Right, n.module.actions());
                    CHECK(tor(mr, n.module, i).dim() == tor(nr, m.module, i).dim());
                }
    }
}

TEST_CASE("connecting homomorphisms") {
    auto a1 = algebra_a1();
    auto reg = regular_module(a1, Side::Left);
    auto soc = submodule_sequence(reg, socle(reg));
    CHECK_FALSE(soc.check());
    CHECK_FALSE(soc.split());
    for (long i = 2; i <= 5; ++i) {
        Matrix d = connecting_tor(soc, k_right(a1), i);
        CHECK(d.rows() == 1);
        CHECK(d.cols() == 1);
        CHECK(la::rank(d) == 1);
    }
    // Split sequence: zero connecting maps.
    auto k = k_left(a1);
    auto sum = direct_sum(k, reg);
    auto split = submodule_sequence(sum, Subspace::span_vectors({Vector{1, 0, 0}}, 3, 2));
    CHECK(split.split());
    for (long i = 1; i <= 4; ++i) CHECK(connecting_tor(split, k_right(a1), i).is_zero());

    // 0 -> k -> E(k) -> Ω^1 k -> 0 over A2: rank δ_1 from the sequence itself.
    auto a2 = algebra_a2();
    auto ses = cosyzygy_sequence(k_left(a2), 0);
    CHECK_FALSE(ses.check());
    Matrix d1 = connecting_tor(ses, k_right(a2), 1);
    auto sc = ses_complexes(chain_of(resolution_of(k_right(a2))), ses, ComplexKind::Tensor);
    const std::size_t t1c = sc.c->homology(1).dim();
    CHECK(t1c == 4);
    CHECK(la::rank(d1) == t1c - la::rank(sc.g->on_homology(1)));
    // Chain chase by hand: lift each cycle through the projection with the full solver.
    for (std::size_t c = 0; c < t1c; ++c) {
        Vector z = sc.c->homology(1).h.rep(c);
        auto x = la::solve(sc.g->matrix(1), z);
        REQUIRE(x);
        Vector y = sc.b->out(1).apply(*x);
        auto w = la::solve(sc.f->matrix(0), y);
        REQUIRE(w);
        Vector col = d1.column(c);
        CHECK(sc.a->homology(0).h.coords(*w) == col);
    }
}

TEST_CASE("long exact sequences") {
    auto a1 = algebra_a1();
    auto reg = regular_module(a1, Side::Left);
    CHECK(les_check(submodule_sequence(reg, socle(reg)), k_right(a1), 0, 5).exact);
    auto a2 = algebra_a2();
    auto reg2 = regular_module(a2, Side::Left);
    CHECK(les_check(submodule_sequence(reg2, socle(reg2)), k_right(a2), 0, 4).exact);
    std::mt19937_64 rng(12);
    for (int s = 0; s < 20; ++s) {
        auto a = s % 2 ? algebra_a1() : algebra_a2();
        auto ses = random_sequence(a, rng);
        CHECK_FALSE(ses.check());
        auto rep = les_check(ses, k_right(a), 0, 4);
        CHECK(rep.exact);
        auto rm = module_corpus(a, Side::Right, 4, s).back().module;
        CHECK(les_check(ses, rm, 0, 3).exact);
    }
}
