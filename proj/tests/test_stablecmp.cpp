#include <doctest.h>

#include <random>

#include "error.hpp"
#include "fixtures.hpp"
#include "stablecmp.hpp"

using namespace homct;
using la::Matrix;

namespace {

FdModule k_left(const AlgebraPtr& a) { return trivial_module(a, Side::Left); }
FdModule k_right(const AlgebraPtr& a) { return trivial_module(a, Side::Right); }

Vector random_vector(std::size_t n, Scalar p, std::mt19937_64& rng) {
    Vector v(n);
    for (auto& x : v) x = static_cast<Scalar>(rng() % p);
    return v;
}

Vector random_in(const la::Subspace& s, std::mt19937_64& rng) {
    return s.basis_columns().apply(random_vector(s.dim(), s.modulus(), rng));
}

// R/(x) and R/(y) over A3.
FdModule a3_quotient(const std::string& gen, Side side) {
    auto a = algebra_a3();
    return cyclic_quotient(a, {element(a, gen)}, side);
}

std::vector<AlgebraPtr> self_injective_fixtures() { return {algebra_a1(), algebra_a3(), algebra_a4()}; }

// A random element of degree `deg` supported on columns [lo, hi].
WindowElement random_element(const DoubleWindow& dw, long deg, std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
    WindowElement u{deg, {}};
    for (std::size_t n = lo; n <= hi; ++n) {
        const long m = deg + static_cast<long>(n);
        if (m < 0) continue;
        u = dw.add(u, WindowElement{deg, {{n, random_vector(dw.dim(static_cast<std::size_t>(m), n), dw.p(), rng)}}});
    }
    return u;
}

}  // namespace

TEST_CASE("copure vanishing certificates") {
    auto cert = copure_vanishing_certificate(k_right(algebra_a1()), 6);
    REQUIRE(cert.has_value());
    CHECK(cert->bound == 1);
    CHECK(cert->reason == CopureReason::SelfInjective);
    for (const auto& a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) {
        auto c = copure_vanishing_certificate(regular_module(a, Side::Right), 6);
        REQUIRE(c.has_value());
        CHECK(c->bound == 1);
        CHECK(c->reason == CopureReason::Projective);
    }
    // Tor_i(k, D(A2)) = D Ext^i(k, A2) does not vanish.
    CHECK_FALSE(copure_vanishing_certificate(k_right(algebra_a2()), 5).has_value());
    // Finite global dimension: every module has a finite resolution.
    auto ut = make_upper_triangular(2);
    for (std::size_t s = 0; s < 2; ++s) {
        auto c = copure_vanishing_certificate(simple_module(ut, s, Side::Right), 4);
        REQUIRE(c.has_value());
        CHECK(c->bound >= 1);
    }
}

TEST_CASE("stable homology via vanishing") {
    auto a1 = algebra_a1();
    auto cert = copure_vanishing_certificate(k_right(a1), 6);
    // Tor_1(k, Ω^3 k) = Tor_1(k, k).
    CHECK(stable_homology_via_vanishing(k_right(a1), k_left(a1), -2, cert).dim() == 1);
    for (const auto& a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) {
        auto r = regular_module(a, Side::Right);
        auto c = copure_vanishing_certificate(r, 4);
        for (long i = -3; i <= 3; ++i) CHECK(stable_homology_via_vanishing(r, k_left(a), i, c).dim() == 0);
    }
    auto c3 = copure_vanishing_certificate(a3_quotient("x", Side::Right), 6);
    CHECK(stable_homology_via_vanishing(a3_quotient("x", Side::Right), a3_quotient("y", Side::Left), -1, c3).dim() == 0);
    auto none = copure_vanishing_certificate(k_right(algebra_a2()), 4);
    CHECK_THROWS_AS(stable_homology_via_vanishing(k_right(algebra_a2()), k_left(algebra_a2()), 0, none), Error);
}

TEST_CASE("stable homology via duality agrees with the vanishing route") {
    auto a1 = algebra_a1();
    auto cert = copure_vanishing_certificate(k_right(a1), 6);
    for (long i = -3; i <= 3; ++i) {
        auto r = stable_homology_via_duality(k_right(a1), k_left(a1), i, 5);
        CHECK(r.verdict == Verdict::Stabilized);
        CHECK(r.limit_dim == 1);
        CHECK(r.limit_dim == stable_homology_via_vanishing(k_right(a1), k_left(a1), i, cert).dim());
    }
    auto a2 = algebra_a2();
    auto r = stable_homology_via_duality(k_right(a2), k_left(a2), 0, 3);
    CHECK(r.dims == std::vector<std::size_t>{1, 4, 16, 64});
    CHECK(r.dims == cosyzygy_tower(k_right(a2), k_left(a2), 0, 3).dims);
    // Injective n: D n is projective and the cotower dies after stage 0.
    for (const auto& a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) {
        auto inj = dual(regular_module(a, Side::Right));
        auto s = stable_homology_via_duality(k_right(a), inj, 0, 4);
        CHECK(s.verdict == Verdict::Stabilized);
        CHECK(s.limit_dim == 0);
    }
    // Both routes over the self-injective corpus.
    for (const auto& a : self_injective_fixtures()) {
        auto ms = module_corpus(a, Side::Right, 4, 17, 5);
        auto ns = module_corpus(a, Side::Left, 4, 19, 5);
        for (const auto& m : ms) {
            auto c = copure_vanishing_certificate(m.module, 6);
            REQUIRE(c.has_value());
            for (const auto& n : ns)
                for (long i = -2; i <= 2; ++i) {
                    auto d = stable_homology_via_duality(m.module, n.module, i, 5);
                    if (d.verdict != Verdict::Stabilized) continue;
                    CHECK_MESSAGE(d.limit_dim == stable_homology_via_vanishing(m.module, n.module, i, c).dim(),
                                  m.name, " ", n.name, " i=", i);
                }
        }
    }
}

TEST_CASE("double window invariants") {
    auto a1 = algebra_a1();
    auto dw = build_double_window(k_right(a1), k_left(a1), 6, 6);
    for (std::size_t m = 0; m <= 6; ++m)
        for (std::size_t n = 0; n <= 6; ++n) CHECK(dw.dim(m, n) == 2);
    CHECK(dw.check().pass());

    auto zero = FdModule::zero(a1, Side::Left);
    auto dz = build_double_window(k_right(a1), zero, 3, 3);
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t n = 0; n <= 3; ++n) CHECK(dz.dim(m, n) == 0);

    auto a3 = algebra_a3();
    auto d3 = build_double_window(k_right(a3), k_left(a3), 4, 4);
    auto c = d3.check();
    CHECK(c.anticommute);
    CHECK(c.pass());
    CHECK(build_double_window(k_right(algebra_a4()), k_left(algebra_a4()), 5, 5).check().pass());
    CHECK(build_double_window(k_right(algebra_a2()), k_left(algebra_a2()), 3, 3).check().pass());
}

TEST_CASE("compress_cycle edge cases and the two-column example") {
    auto a1 = algebra_a1();
    DoubleWindow dw(k_right(a1), k_left(a1), 8, 6);
    // Zero element.
    auto z = compress_cycle(dw, dw.zero(0), 2, 0);
    CHECK(z.u.is_zero());
    CHECK(z.result.is_zero());

    // Degree-0 cycle at column 2 from the generator of H_2(P ⊗ Ω^2 k).
    const auto& hs = dw.syzygy_column(2)->homology(2);
    REQUIRE(hs.dim() == 1);
    WindowElement w = dw.from_syzygy(0, 2, hs.h.rep(0));
    REQUIRE_FALSE(w.is_zero());
    auto same = compress_cycle(dw, w, 2, 0);
    CHECK(same.u.is_zero());
    CHECK(same.result.cols == w.cols);

    // Spread it over columns {2, 3} and compress back.
    std::mt19937_64 rng(3);
    WindowElement u = random_element(dw, 1, 2, 2, rng);
    WindowElement v = dw.add(w, dw.boundary(u));
    REQUIRE(v.top() == std::optional<std::size_t>(3));
    auto c = compress_cycle(dw, v, 2, 0);
    CHECK(c.result.bottom() == std::optional<std::size_t>(2));
    CHECK(c.result.top() == std::optional<std::size_t>(2));
    CHECK(dw.column_class(c.result, 2) == dw.column_class(w, 2));
    CHECK(dw.boundary(c.result).is_zero());

    // A top component that is not a row cycle is rejected.
    WindowElement bad{0, {{3, Vector{1, 0}}}};
    if (!la::is_zero(dw.horizontal(3, 3, bad.cols.at(3)))) CHECK_THROWS_AS(compress_cycle(dw, bad, 2, 0), Error);
    // A family deeper than the stored columns exhausts the window.
    DoubleWindow small(k_right(a1), k_left(a1), 8, 2);
    CosyzygySystem deep(small.chain(), k_left(a1), 0, 4);
    CHECK_THROWS_AS(family_from_tower(small, deep, Vector{1}), Error);
}

TEST_CASE("compression on 100 seeded window cycles") {
    std::mt19937_64 rng(20240601);
    std::vector<std::pair<FdModule, FdModule>> pairs;
    for (const auto& a : self_injective_fixtures()) pairs.emplace_back(k_right(a), k_left(a));
    pairs.emplace_back(a3_quotient("x", Side::Right), a3_quotient("y", Side::Left));
    pairs.emplace_back(k_right(algebra_a2()), k_left(algebra_a2()));
    std::vector<DoubleWindow> windows;
    for (const auto& [m, n] : pairs) windows.emplace_back(m, n, 7, 4);
    std::size_t done = 0, nonzero = 0;
    while (done < 100) {
        const auto& dw = windows[rng() % windows.size()];
        const bool a2 = dw.chain()->ring()->same_as(*algebra_a2()->opposite());
        const long i = static_cast<long>(rng() % 5) - 2;
        const std::size_t e = static_cast<std::size_t>(std::max(0L, -i)) + rng() % 2;
        const std::size_t hi = std::min<std::size_t>(e + (a2 ? 1 : 3), dw.max_column() - 1);
        if (i + static_cast<long>(hi) + 1 > static_cast<long>(dw.max_row())) continue;
        const auto& hs = dw.syzygy_column(e)->homology(i + static_cast<long>(e));
        Vector zc = random_in(hs.h.top(), rng);
        WindowElement w = dw.from_syzygy(i, e, zc);
        WindowElement v = dw.add(w, dw.boundary(random_element(dw, i + 1, e, hi, rng)));
        REQUIRE(dw.boundary(v).is_zero());
        auto c = compress_cycle(dw, v, e, e);
        CHECK(dw.add(v, c.result, dw.p() - 1).cols == dw.boundary(c.u).cols);
        for (const auto& [col, x] : c.result.cols) CHECK(col == e);
        CHECK(dw.column_class(c.result, e) == hs.h.coords(zc));
        nonzero += hs.h.coords(zc) != la::zero_vector(hs.dim()) ? 1 : 0;
        ++done;
    }
    CHECK(nonzero > 20);
}

TEST_CASE("A1 families, tau, eth and sigma") {
    auto a1 = algebra_a1();
    DoubleWindow dw(k_right(a1), k_left(a1), 10, 6);
    CosyzygySystem sys(dw.chain(), k_left(a1), 0, 6);
    auto lim = tower_limit(sys.tower(), 2);
    REQUIRE(lim.verdict == Verdict::Stabilized);
    REQUIRE(lim.limit_dim == 1);
    auto x = lift_to_top(sys, lim.stable_from, lim.limit_basis.column(0));
    REQUIRE(x.has_value());
    auto fam = family_from_tower(dw, sys, *x);
    CHECK(fam.start == 0);
    CHECK(fam.members.size() == 7);
    // τ of the constant family is the generator of Tor_0(k, k).
    CHECK(map_tau(dw, fam) == Vector{1});

    auto z = sigma_preimage(dw, fam);
    CHECK(z.degree == 1);
    auto back = map_sigma(dw, z, 5);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(back.classes[k] == fam.classes[k]);
    CHECK(map_eth(dw, z, 5) == Vector{1});
    CHECK(map_tau(dw, back) == map_eth(dw, z, 5));

    // Honest cycles and zero give zero.
    CHECK(map_eth(dw, dw.zero(1)) == Vector{0});
    WindowElement cyc = dw.from_syzygy(1, 1, dw.syzygy_column(1)->homology(2).h.rep(0));
    REQUIRE(dw.boundary(cyc).is_zero());
    CHECK(map_eth(dw, cyc, 3) == Vector{0});
    for (const auto& c : map_sigma(dw, cyc, 3).classes) CHECK(la::is_zero(c));

    // A finite truncation is an honest chain: ς of it vanishes, and ð agrees
    // with z on the columns where the truncation is exact.
    WindowElement trunc = z.restricted(0, 2);
    for (const auto& c : map_sigma(dw, trunc, 5).classes) CHECK(la::is_zero(c));
    CHECK(map_eth(dw, trunc, 2) == Vector{1});
    // Cutting one column early leaves boundary at the edge.
    CHECK_THROWS_AS(map_eth(dw, trunc, 3), Error);

    auto ev = injectivity_probe(dw, sys, lim);
    CHECK(ev.label == "evidence");
    CHECK(ev.eth_rank == 1);
}

TEST_CASE("families over injective coefficients vanish") {
    for (const auto& a : {algebra_a1(), algebra_a2()}) {
        auto inj = dual(regular_module(a, Side::Right));
        DoubleWindow dw(k_right(a), inj, 6, 4);
        CosyzygySystem sys(dw.chain(), inj, 0, 3);
        CHECK(sys.space(3).dim() == 0);
        auto fam = family_from_tower(dw, sys, Vector{});
        CHECK(la::is_zero(map_tau(dw, fam)));
    }
}

TEST_CASE("sigma preimages of stabilized generators") {
    // Every stabilized generator on the self-injective fixtures within window 6.
    std::size_t generators = 0;
    for (const auto& a : self_injective_fixtures()) {
        std::vector<std::pair<FdModule, FdModule>> pairs{{k_right(a), k_left(a)}};
        auto ms = module_corpus(a, Side::Right, 3, 29, 4);
        auto ns = module_corpus(a, Side::Left, 3, 31, 4);
        for (const auto& m : ms)
            for (const auto& n : ns) pairs.emplace_back(m.module, n.module);
        if (a->same_as(*algebra_a3())) pairs.emplace_back(a3_quotient("x", Side::Right), a3_quotient("y", Side::Left));
        for (const auto& [m, n] : pairs) {
            DoubleWindow dw(m, n, 10, 6);
            for (long i = -2; i <= 2; ++i) {
                const std::size_t K = 6;
                if (first_stage(i) + 3 > K) continue;
                CosyzygySystem sys(dw.chain(), n, i, K);
                auto lim = tower_limit(sys.tower(), 2);
                if (lim.verdict != Verdict::Stabilized) continue;
                for (std::size_t c = 0; c < lim.limit_dim; ++c) {
                    auto x = lift_to_top(sys, lim.stable_from, lim.limit_basis.column(c));
                    REQUIRE(x.has_value());
                    auto fam = family_from_tower(dw, sys, *x);
                    auto z = sigma_preimage(dw, fam);
                    const std::size_t ext = fam.start + fam.witnesses.size() - 1;
                    auto back = map_sigma(dw, z, ext);
                    for (std::size_t r = 0; r + 1 < back.classes.size(); ++r) CHECK(back.classes[r] == fam.classes[r]);
                    if (i >= 0) CHECK(map_tau(dw, back) == map_eth(dw, z, ext));
                    ++generators;
                }
            }
        }
    }
    CHECK(generators > 10);
}
