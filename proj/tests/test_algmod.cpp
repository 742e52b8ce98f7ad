#include <doctest.h>

#include <random>

#include "error.hpp"
#include "fixtures.hpp"
#include "module.hpp"
#include "resolve.hpp"

using namespace homct;
using la::Matrix;

namespace {

// All vectors of F_p^n.
std::vector<Vector> enumerate(std::size_t n, Scalar p) {
    std::vector<Vector> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    for (std::size_t idx = 0; idx < total; ++idx) {
        Vector v(n);
        std::size_t t = idx;
        for (auto& x : v) {
            x = static_cast<Scalar>(t % p);
            t /= p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Radical of a local algebra: the elements whose left multiplication is nilpotent.
std::size_t brute_radical_dim(const Algebra& a) {
    std::size_t count = 0;
    for (const auto& x : enumerate(a.dim(), a.p())) {
        Matrix l = a.left_mult(x), pw = l;
        for (std::size_t k = 0; k < a.dim(); ++k) pw = pw * l;
        if (pw.is_zero()) ++count;
    }
    std::size_t d = 0;
    for (std::size_t c = 1; c < count; c *= a.p()) ++d;
    return d;
}

// Number of module maps m -> n found by enumerating every matrix.
std::size_t brute_hom_count(const FdModule& m, const FdModule& n) {
    std::size_t count = 0;
    for (const auto& v : enumerate(m.dim() * n.dim(), m.p())) {
        Matrix x = unvec(v, n.dim(), m.dim(), m.p());
        bool ok = true;
        for (std::size_t i = 0; i < m.actions().size() && ok; ++i) ok = n.action(i) * x == x * m.action(i);
        if (ok) ++count;
    }
    return count;
}

std::size_t pow_size(Scalar p, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= p;
    return r;
}

}  // namespace

TEST_CASE("validate_algebra") {
    auto a1 = algebra_a1();
    std::vector<std::vector<Vector>> mul{{a1->product(0, 0), a1->product(0, 1)}, {a1->product(1, 0), a1->product(1, 1)}};
    CHECK_FALSE(validate_algebra(2, 2, a1->unit(), mul));
    auto bad = mul;
    bad[1][0] = Vector{0, 0};
    bad[1][1] = Vector{1, 0};
    auto err = validate_algebra(2, 2, a1->unit(), bad);
    REQUIRE(err);
    CHECK(err->find("associativity fails") != std::string::npos);
    // The triple (1,1,1) itself fails: (x x) x = x while x (x x) = x 1 = 0.
    auto x_times = [&](const Vector& v) { return v[0] ? bad[1][0] : (v[1] ? bad[1][1] : Vector{0, 0}); };
    CHECK(x_times(bad[1][1]) != Vector{0, 1});
    CHECK_FALSE(validate_algebra(3, 1, Vector{1}, {{Vector{1}}}));
    CHECK_THROWS_AS(Algebra::create(4, {"1"}, Vector{1}, {{Vector{1}}}), Error);
}

TEST_CASE("opposite algebra") {
    auto a1 = algebra_a1();
    CHECK(a1->opposite()->same_as(*a1));
    auto ut = make_upper_triangular(2);
    auto op = ut->opposite();
    CHECK_FALSE(op->same_as(*ut));
    // e11 e12 = e12 in A becomes e12 e11 = e12 in the opposite.
    CHECK(op->product(1, 0) == Vector{0, 1, 0});
    CHECK(op->opposite().get() == ut.get());
    CHECK(op->is_opposite_of(*ut));
}

TEST_CASE("radical") {
    CHECK(algebra_a1()->basic().radical.dim() == 1);
    CHECK(algebra_a1()->basic().radical.contains(element(algebra_a1(), "x")));
    auto f3 = make_monomial_quotient(1, {{1}}, 3);
    CHECK(f3->dim() == 1);
    CHECK(radical(*f3).dim() == 0);
    auto a2 = algebra_a2();
    CHECK(radical(*a2).dim() == 2);
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) CHECK(radical(*a).dim() == brute_radical_dim(*a));
    // Non-local: upper triangular matrices have radical span{e12} and two simples.
    auto ut = make_upper_triangular(3);
    CHECK(ut->basic().radical.dim() == 1);
    CHECK(ut->basic().num_simples() == 2);
    // Group algebra of C2 x C2 over F_2 has radical of codimension one.
    auto klein = make_group_algebra({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, 2);
    CHECK(radical(*klein).dim() == 3);
    // Semisimple group algebra: C2 over F_3 splits into two copies of F_3.
    auto c2f3 = make_group_algebra({{0, 1}, {1, 0}}, 3);
    CHECK(radical(*c2f3).dim() == 0);
    CHECK(c2f3->basic().num_simples() == 2);
}

TEST_CASE("group algebras") {
    auto c2 = make_group_algebra({{0, 1}, {1, 0}}, 2);
    CHECK(c2->dim() == 2);
    CHECK(radical(*c2).dim() == 1);
    auto triv = make_group_algebra({{0}}, 3);
    CHECK(triv->dim() == 1);
    auto c3 = make_group_algebra({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 3);
    // x = g - 1 satisfies x^3 = 0 and x^2 != 0.
    Vector x = la::sub(c3->basis_vector(1), c3->unit(), 3);
    Vector x2 = c3->multiply(x, x);
    CHECK_FALSE(la::is_zero(x2));
    CHECK(la::is_zero(c3->multiply(x2, x)));
    CHECK_THROWS_AS(make_group_algebra({{0, 1}, {1, 1}}, 2), Error);
}

TEST_CASE("monomial quotients") {
    CHECK(algebra_a1()->dim() == 2);
    CHECK(algebra_a2()->basis_names() == std::vector<std::string>{"1", "x", "y"});
    CHECK(algebra_a3()->basis_names() == std::vector<std::string>{"1", "x", "y", "xy"});
    CHECK_THROWS_AS(make_monomial_quotient(2, {{2, 0}}, 2, 10), Error);
}

TEST_CASE("dual modules") {
    auto a1 = algebra_a1();
    auto k = trivial_module(a1, Side::Left);
    auto dk = dual(k);
    CHECK(dk.side() == Side::Right);
    CHECK(dk.dim() == 1);
    auto a2 = algebra_a2();
    auto reg = regular_module(a2, Side::Left);
    auto dreg = dual(reg);
    CHECK(dreg.dim() == 3);
    CHECK(top(dreg).first.dim() == 2);
    CHECK(socle(reg).dim() == 2);
    CHECK_FALSE(validate_module(dreg.algebra(), dreg.side(), dreg.actions()));
}

TEST_CASE("tensor over the algebra") {
    auto a1 = algebra_a1();
    CHECK(tensor_over_algebra(trivial_module(a1, Side::Right), trivial_module(a1, Side::Left)).dim == 1);
    auto a2 = algebra_a2();
    auto reg = regular_module(a2, Side::Left);
    auto [rad, inc] = submodule_on(reg, radical_submodule(reg));
    CHECK(rad.dim() == 2);
    CHECK(tensor_over_algebra(trivial_module(a2, Side::Right), rad).dim == 2);
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) {
        for (const auto& e : module_corpus(a, Side::Left, 6, 3)) {
            CHECK(tensor_over_algebra(regular_module(a, Side::Right), e.module).dim == e.module.dim());
            // Hom-tensor adjunction in dimensions.
            auto dk = dual(e.module);
            for (const auto& f : module_corpus(a, Side::Right, 3, 5))
                CHECK(tensor_over_algebra(f.module, e.module).dim == hom_over_algebra(e.module, dual(f.module)).dim());
            (void)dk;
        }
    }
}

TEST_CASE("Hom and stable Hom") {
    auto a1 = algebra_a1();
    auto k = trivial_module(a1, Side::Left);
    auto reg = regular_module(a1, Side::Left);
    CHECK(hom_over_algebra(k, k).dim() == 1);
    CHECK(hom_over_algebra(k, reg).dim() == 1);
    CHECK(stable_hom(k, k).dim() == 1);
    CHECK(stable_hom(trivial_module(algebra_a2(), Side::Left), trivial_module(algebra_a2(), Side::Left)).dim() == 1);
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) {
        auto corpus = module_corpus(a, Side::Left, 6, 11, 4);
        auto r = regular_module(a, Side::Left);
        for (const auto& e : corpus) {
            CHECK(hom_over_algebra(r, e.module).dim() == e.module.dim());
            CHECK(stable_hom(r, e.module).dim() == 0);
            if (e.projective) CHECK(stable_hom(e.module, corpus.front().module).dim() == 0);
        }
        for (std::size_t i = 0; i < 3 && i < corpus.size(); ++i)
            for (std::size_t j = 0; j < 3 && j < corpus.size(); ++j) {
                const auto& m = corpus[i].module;
                const auto& n = corpus[j].module;
                if (m.dim() * n.dim() > 12) continue;
                CHECK(brute_hom_count(m, n) == pow_size(a->p(), hom_over_algebra(m, n).dim()));
            }
    }
}

TEST_CASE("socle, top, submodules and quotients") {
    auto a1 = algebra_a1();
    auto reg = regular_module(a1, Side::Left);
    CHECK(socle(reg).dim() == 1);
    CHECK(socle(reg).contains(Vector{0, 1}));
    CHECK(socle(regular_module(algebra_a2(), Side::Left)).dim() == 2);
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4()}) CHECK(top(regular_module(a, Side::Left)).first.dim() == 1);

    auto [sx, inc] = submodule(reg, {element(a1, "x")});
    CHECK(sx.dim() == 1);
    CHECK(is_isomorphic(sx, trivial_module(a1, Side::Left)).verdict == IsoVerdict::Isomorphic);
    auto [q, proj] = quotient(reg, la::image_basis(inc.matrix));
    CHECK(q.dim() == 1);
    CHECK(proj.commutes());
    CHECK(inc.commutes());
    CHECK(submodule(reg, {a1->unit()}).first.dim() == 2);
    CHECK_THROWS_AS(quotient(reg, Subspace::span_vectors({Vector{1, 0}}, 2, 2)), Error);
}

TEST_CASE("isomorphism certificates") {
    auto a1 = algebra_a1();
    auto k = trivial_module(a1, Side::Left);
    CHECK(is_isomorphic(k, k).verdict == IsoVerdict::Isomorphic);
    CHECK(is_isomorphic(k, regular_module(a1, Side::Left)).verdict == IsoVerdict::NotIsomorphic);
    auto res = resolution_of(k);
    auto iso = is_isomorphic(res->syzygy(1), res->syzygy(0));
    REQUIRE(iso.verdict == IsoVerdict::Isomorphic);
    CHECK(iso.witness->commutes());
}

TEST_CASE("module closure over the corpus") {
    for (auto a : {algebra_a1(), algebra_a2(), algebra_a3(), algebra_a4(), make_upper_triangular(2)}) {
        for (Side side : {Side::Left, Side::Right}) {
            for (const auto& e : module_corpus(a, side, 20, 17)) {
                CHECK_FALSE(validate_module(e.module.algebra(), e.module.side(), e.module.actions()));
                auto d = dual(e.module);
                CHECK(d.dim() == e.module.dim());
                CHECK_FALSE(validate_module(d.algebra(), d.side(), d.actions()));
                CHECK(socle(d).dim() == top(e.module).first.dim());
                auto dd = dual(d);
                CHECK(dd.actions() == e.module.actions());
            }
        }
    }
}
