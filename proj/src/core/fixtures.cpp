#include "fixtures.hpp"

#include <cctype>

#include <random>

#include "error.hpp"
#include "resolve.hpp"

namespace homct {

AlgebraPtr algebra_a1() {
    static const AlgebraPtr a = make_monomial_quotient(1, {{2}}, 2);
    return a;
}

AlgebraPtr algebra_a2() {
    static const AlgebraPtr a = make_monomial_quotient(2, {{2, 0}, {1, 1}, {0, 2}}, 2);
    return a;
}

AlgebraPtr algebra_a3() {
    static const AlgebraPtr a = make_monomial_quotient(2, {{2, 0}, {0, 2}}, 2);
    return a;
}

AlgebraPtr algebra_a4() {
    static const AlgebraPtr a = make_monomial_quotient(1, {{3}}, 3);
    return a;
}

AlgebraPtr algebra_by_name(const std::string& name) {
    std::string key = name;
    for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == "a1") return algebra_a1();
    if (key == "a2") return algebra_a2();
    if (key == "a3") return algebra_a3();
    if (key == "a4") return algebra_a4();
    fail(ErrorCode::InvalidArgument, "unknown fixture algebra: " + name);
}

FdModule trivial_module(const AlgebraPtr& a, Side side) {
    AlgebraPtr r = side == Side::Left ? a : a->opposite();
    require(r->basic().num_simples() == 1, ErrorCode::InvalidArgument, "trivial module needs a local algebra");
    return simple_module(a, 0, side);
}

FdModule cyclic_quotient(const AlgebraPtr& a, const std::vector<Vector>& relations, Side side) {
    FdModule reg = regular_module(a, side);
    auto [sub, inc] = submodule(reg, relations);
    return quotient(reg, la::image_basis(inc.matrix)).first;
}

Vector element(const AlgebraPtr& a, const std::string& name) {
    const auto& names = a->basis_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return a->basis_vector(i);
    fail(ErrorCode::InvalidArgument, "no basis element named " + name);
}

std::vector<CorpusEntry> module_corpus(const AlgebraPtr& a, Side side, std::size_t count, std::uint64_t seed,
                                       std::size_t max_dim) {
    std::mt19937_64 rng(seed);
    const Scalar p = a->p();
    AlgebraPtr r = side == Side::Left ? a : a->opposite();
    const std::size_t ns = r->basic().num_simples();
    const Subspace& rad = r->basic().radical;

    auto random_vector = [&](std::size_t n) {
        Vector v(n);
        for (auto& x : v) x = static_cast<Scalar>(rng() % p);
        return v;
    };
    auto random_radical_element = [&] {
        Vector v(a->dim(), 0);
        for (std::size_t i = 0; i < rad.dim(); ++i) la::axpy(v, static_cast<Scalar>(rng() % p), rad.basis().row(i), p);
        return v;
    };

    std::vector<CorpusEntry> out;
    auto push = [&](std::string name, FdModule m) {
        if (out.size() >= count || m.dim() == 0 || m.dim() > max_dim) return;
        CorpusEntry e{std::move(name), m, false, false};
        e.projective = projective_cover(m.left_view()).kernel.dim() == 0;
        e.injective = projective_cover(dual(m).left_view()).kernel.dim() == 0;
        out.push_back(std::move(e));
    };

    const FdModule reg = regular_module(a, side);
    const FdModule dreg = dual(regular_module(a, flip(side)));
    push("regular", reg);
    push("dual-regular", dreg);
    for (std::size_t s = 0; s < ns; ++s) {
        push("simple" + std::to_string(s), simple_module(a, s, side));
        if (ns > 1) {
            push("projective" + std::to_string(s), indecomposable_projective(a, s, side));
            push("injective" + std::to_string(s), dual(indecomposable_projective(a, s, flip(side))));
        }
    }
    std::vector<FdModule> small;
    for (const auto& e : out)
        if (e.module.dim() <= max_dim / 2) small.push_back(e.module);

    for (std::size_t round = 0; out.size() < count && round < 64 * count; ++round) {
        const std::size_t before = out.size();
        switch (round % 4) {
        case 0: {
            FdModule q = quotient(reg, action_closure(reg, Subspace::span_vectors({random_radical_element()}, reg.dim(), p))).first;
            push("quotient" + std::to_string(round), q);
            break;
        }
        case 1: {
            const FdModule& base = (rng() % 2) ? reg : dreg;
            FdModule sub = submodule(base, {random_vector(base.dim())}).first;
            push("submodule" + std::to_string(round), sub);
            break;
        }
        case 2: {
            FdModule q = quotient(dreg, action_closure(dreg, Subspace::span_vectors({random_vector(dreg.dim())}, dreg.dim(), p))).first;
            push("dual-quotient" + std::to_string(round), q);
            break;
        }
        default: {
            if (small.size() < 1) break;
            const FdModule& x = small[rng() % small.size()];
            const FdModule& y = small[rng() % small.size()];
            push("sum" + std::to_string(round), direct_sum(x, y));
            break;
        }
        }
        if (out.size() > before && out.back().module.dim() <= max_dim / 2) small.push_back(out.back().module);
    }
    return out;
}

}  // namespace homct
