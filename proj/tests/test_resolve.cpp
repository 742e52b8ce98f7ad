#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "resolve.hpp"

using namespace homct;
using la::Matrix;

namespace {

FdModule r_mod_x_a3() { return cyclic_quotient(algebra_a3(), {element(algebra_a3(), "x")}, Side::Left); }

}  // namespace

TEST_CASE("projective covers") {
    auto a1 = algebra_a1();
    auto c = projective_cover(trivial_module(a1, Side::Left));
    CHECK(c.projective.dim() == 2);
    CHECK(c.kernel == Subspace::span_vectors({element(a1, "x")}, 2, 2));

    auto reg = regular_module(a1, Side::Left);
    auto cr = projective_cover(reg);
    CHECK(cr.projective.dim() == 2);
    CHECK(cr.kernel.dim() == 0);

    auto a2 = algebra_a2();
    auto k2 = power(trivial_module(a2, Side::Left), 2);
    auto c2 = projective_cover(k2);
    CHECK(c2.projective.dim() == 6);
    CHECK(c2.kernel.dim() == 4);
    CHECK(radical_submodule(c2.projective.module).contains(c2.kernel));

    auto y = Vector{1};
    CHECK(c.map.apply(lift_through_cover(c, y)) == y);
}

TEST_CASE("injective envelopes") {
    // For a local algebra E(N) = D(A)^{dim soc N}.
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()})
        for (const auto& e : module_corpus(a, Side::Left, 10, 7)) {
            auto env = injective_envelope(e.module);
            CHECK(env.envelope.dim() == socle(e.module).dim() * a->dim());
            CHECK(la::rank(env.embedding) == e.module.dim());
            CHECK(ModuleMap::make(e.module, env.envelope, env.embedding).commutes());
            // Essential: the socle of the envelope lies in the image.
            CHECK(la::image_basis(env.embedding).contains(socle(env.envelope)));
        }
    CHECK(injective_envelope(trivial_module(algebra_a1(), Side::Left)).envelope.dim() == 2);
    CHECK(injective_envelope(trivial_module(algebra_a2(), Side::Left)).envelope.dim() == 3);
    auto dreg = dual(regular_module(algebra_a2(), Side::Right));
    CHECK(injective_envelope(dreg).envelope.dim() == 3);
}

TEST_CASE("minimal projective resolutions") {
    auto r1 = resolution_of(trivial_module(algebra_a1(), Side::Left));
    for (std::size_t j = 0; j <= 4; ++j) {
        CHECK(r1->betti(j) == 1);
        CHECK(is_isomorphic(r1->syzygy(j), r1->syzygy(0)).verdict == IsoVerdict::Isomorphic);
    }
    auto r2 = resolution_of(trivial_module(algebra_a2(), Side::Left));
    for (std::size_t j = 0; j <= 3; ++j) {
        CHECK(r2->betti(j) == (std::size_t{1} << j));
        CHECK(r2->syzygy(j).dim() == (std::size_t{1} << j));
    }
    CHECK(resolution_of(regular_module(algebra_a2(), Side::Left))->length(3) == std::optional<std::size_t>{1});
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4(), make_upper_triangular(2)})
        for (const auto& e : module_corpus(a, Side::Left, 12, 3)) {
            auto res = resolution_of(e.module);
            auto chk = check_resolution(*res, 3);
            CHECK_MESSAGE(chk.exact, chk.detail);
            CHECK_MESSAGE(chk.minimal, chk.detail);
            CHECK_MESSAGE(chk.complex, chk.detail);
            // Dimension count along the resolution.
            for (std::size_t j = 0; j <= 3; ++j)
                CHECK(res->projective(j).dim() == res->syzygy(j).dim() + res->syzygy(j + 1).dim());
        }
}

TEST_CASE("injective resolutions") {
    auto i1 = injective_resolution_of(trivial_module(algebra_a1(), Side::Left));
    for (std::size_t k = 0; k <= 4; ++k) CHECK(i1->cosyzygy(k).dim() == 1);
    auto i2 = injective_resolution_of(trivial_module(algebra_a2(), Side::Left));
    CHECK(i2->cosyzygy(1).dim() == 2);
    CHECK(i2->cosyzygy(2).dim() == 4);
    CHECK(is_isomorphic(i2->cosyzygy(1), power(trivial_module(algebra_a2(), Side::Left), 2)).verdict ==
          IsoVerdict::Isomorphic);
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a4()})
        for (const auto& e : module_corpus(a, Side::Left, 8, 9)) {
            auto inj = injective_resolution_of(e.module);
            auto dres = resolution_of(dual(e.module));
            for (std::size_t k = 0; k <= 3; ++k) {
                CHECK(inj->cosyzygy(k).dim() == dres->syzygy(k).dim());
                // 0 -> Ω^k -> I^k -> Ω^{k+1} -> 0 is exact.
                Matrix emb = inj->embedding(k), proj = inj->projection(k);
                CHECK((proj * emb).is_zero());
                CHECK(la::rank(emb) == inj->cosyzygy(k).dim());
                CHECK(la::rank(proj) == inj->cosyzygy(k + 1).dim());
                CHECK(ModuleMap::make(inj->cosyzygy(k), inj->injective(k), emb).commutes());
                CHECK(ModuleMap::make(inj->injective(k), inj->cosyzygy(k + 1), proj).commutes());
            }
            CHECK((inj->differential(1) * inj->differential(0)).is_zero());
        }
}

TEST_CASE("periodicity") {
    auto p1 = detect_periodicity(*resolution_of(trivial_module(algebra_a1(), Side::Left)), 4);
    REQUIRE(p1);
    CHECK(p1->offset == 0);
    CHECK(p1->period == 1);
    auto p3 = detect_periodicity(*resolution_of(r_mod_x_a3()), 4);
    REQUIRE(p3);
    CHECK(p3->offset == 0);
    CHECK(p3->period == 1);
    CHECK_FALSE(detect_periodicity(*resolution_of(trivial_module(algebra_a2(), Side::Left)), 6));
    auto p4 = detect_periodicity(*resolution_of(trivial_module(algebra_a4(), Side::Left)), 4);
    REQUIRE(p4);
    CHECK(p4->period == 2);
}

TEST_CASE("self-injectivity") {
    CHECK(is_self_injective(algebra_a1()).self_injective);
    CHECK_FALSE(is_self_injective(algebra_a2()).self_injective);
    CHECK(is_self_injective(algebra_a3()).self_injective);
    CHECK(is_self_injective(algebra_a4()).self_injective);
    CHECK_FALSE(is_self_injective(make_upper_triangular(2)).self_injective);
}

TEST_CASE("resolutions are deterministic") {
    auto m = module_corpus(algebra_a3(), Side::Left, 10, 21).back().module;
    ProjectiveResolution a(m), b(m);
    for (std::size_t j = 1; j <= 3; ++j) CHECK(a.differential(j) == b.differential(j));
}
