#include "derived.hpp"

#include "error.hpp"

namespace homct {

ComplexPtr tor_complex(const FdModule& m, const FdModule& n) {
    return make_complex(chain_of(resolution_of(m)), n.left_view(), ComplexKind::Tensor);
}

ComplexPtr ext_complex(const FdModule& m, const FdModule& n) {
    require(m.same_ring_and_side(n), ErrorCode::InvalidArgument, "ext: modules must share ring and side");
    return make_complex(chain_of(resolution_of(m)), n.left_view(), ComplexKind::Hom);
}

HomologySpace tor(const FdModule& m, const FdModule& n, long i) { return tor_complex(m, n)->homology(i); }

HomologySpace ext(const FdModule& m, const FdModule& n, long i) { return ext_complex(m, n)->homology(i); }

std::optional<std::string> ShortExactSeq::check() const {
    if (!a.same_ring_and_side(b) || !b.same_ring_and_side(c)) return "modules differ in ring or side";
    if (f.rows() != b.dim() || f.cols() != a.dim() || g.rows() != c.dim() || g.cols() != b.dim())
        return "map shapes do not match the modules";
    if (!ModuleMap{a, b, f}.commutes() || !ModuleMap{b, c, g}.commutes()) return "maps are not module maps";
    if (la::rank(f) != a.dim()) return "first map is not injective";
    if (la::rank(g) != c.dim()) return "second map is not surjective";
    if (!(g * f).is_zero()) return "composite is not zero";
    if (a.dim() + c.dim() != b.dim()) return "image differs from kernel";
    return std::nullopt;
}

bool ShortExactSeq::split() const {
    Subspace hom = hom_over_algebra(c, b);
    std::vector<Vector> composed;
    for (std::size_t i = 0; i < hom.dim(); ++i) composed.push_back(vec(g * unvec(hom.basis_vector(i), b.dim(), c.dim(), b.p())));
    Matrix sys = Matrix::from_columns(composed, c.dim() * c.dim(), b.p());
    return la::solve(sys, vec(Matrix::identity(c.dim(), b.p()))).has_value();
}

ShortExactSeq submodule_sequence(const FdModule& m, const Subspace& sub) {
    auto [s, inc] = submodule_on(m, sub);
    auto [q, proj] = quotient(m, sub);
    return {s, m, q, inc.matrix, proj.matrix};
}

ShortExactSeq cosyzygy_sequence(const FdModule& n, std::size_t k) {
    auto inj = injective_resolution_of(n);
    auto side = [&](const FdModule& x) { return FdModule::from_left_view(x, n.algebra(), n.side()); };
    return {side(inj->cosyzygy(k)), side(inj->injective(k)), side(inj->cosyzygy(k + 1)), inj->embedding(k),
            inj->projection(k)};
}

ShortExactSeq syzygy_sequence(const FdModule& n, std::size_t k) {
    auto res = resolution_of(n);
    auto st = res->stage(k);
    auto side = [&](const FdModule& x) { return FdModule::from_left_view(x, n.algebra(), n.side()); };
    return {side(st->next), side(st->cover.projective.module), side(st->omega), st->inclusion, st->cover.map};
}

SesComplexes ses_complexes(const ChainPtr& chain, const ShortExactSeq& ses, ComplexKind kind) {
    SesComplexes out;
    out.a = make_complex(chain, ses.a.left_view(), kind);
    out.b = make_complex(chain, ses.b.left_view(), kind);
    out.c = make_complex(chain, ses.c.left_view(), kind);
    out.f = std::make_shared<InducedMap>(out.a, out.b, ses.f);
    out.g = std::make_shared<InducedMap>(out.b, out.c, ses.g);
    return out;
}

Matrix connecting_tor(const ShortExactSeq& ses, const FdModule& m, long i) {
    auto sc = ses_complexes(chain_of(resolution_of(m)), ses, ComplexKind::Tensor);
    return connecting_map(*sc.f, *sc.g, i);
}

Matrix connecting_ext(const FdModule& m, const ShortExactSeq& ses, long i) {
    require(m.same_ring_and_side(ses.a), ErrorCode::InvalidArgument, "connecting_ext: sides differ");
    auto sc = ses_complexes(chain_of(resolution_of(m)), ses, ComplexKind::Hom);
    return connecting_map(*sc.f, *sc.g, i);
}

namespace {

bool exact_at(const Matrix& in, const Matrix& out, std::size_t middle) {
    if (!(out * in).is_zero()) return false;
    return la::rank(in) + la::rank(out) == middle;
}

}  // namespace

LesReport les_check(const ShortExactSeq& ses, const FdModule& m, long lo, long hi) {
    auto err = ses.check();
    require(!err, ErrorCode::Validation, "les_check: " + err.value_or(""));
    auto sc = ses_complexes(chain_of(resolution_of(m)), ses, ComplexKind::Tensor);
    LesReport rep;
    auto add = [&](long deg, const char* pos, bool ok) {
        rep.joints.push_back({deg, pos, ok});
        rep.exact = rep.exact && ok;
    };
    for (long i = lo; i <= hi; ++i) {
        Matrix fi = sc.f->on_homology(i), gi = sc.g->on_homology(i);
        Matrix di = connecting_map(*sc.f, *sc.g, i);
        Matrix di1 = connecting_map(*sc.f, *sc.g, i + 1);
        add(i, "a", exact_at(di1, fi, sc.a->homology(i).dim()));
        add(i, "b", exact_at(fi, gi, sc.b->homology(i).dim()));
        add(i, "c", exact_at(gi, di, sc.c->homology(i).dim()));
    }
    return rep;
}

}  // namespace homct
