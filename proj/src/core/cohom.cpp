#include "cohom.hpp"

#include "error.hpp"

namespace homct {

namespace {

Matrix zero_matrix(std::size_t r, std::size_t c, Scalar p) { return Matrix(r, c, p); }

Scalar sign(long i, Scalar p) { return (i % 2 == 0) ? 1 : p - 1; }

// Matrix whose columns are the coordinates of the images of `cols` in `sq`.
Matrix class_columns(const la::Subquotient& sq, const std::vector<Vector>& cols) {
    Matrix m(sq.dim(), cols.size(), sq.modulus());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        require(sq.top().contains(cols[c]), ErrorCode::InternalMismatch, "image is not a cycle");
        Vector k = sq.coords(cols[c]);
        for (std::size_t r = 0; r < k.size(); ++r) m(r, c) = k[r];
    }
    return m;
}

CoTower make_cotower(TowerKind kind, long degree) {
    CoTower c;
    c.provenance = kind;
    c.degree = degree;
    return c;
}

// Left module map ⊕ R e_{s_u} -> Y with generator u sent to images[u] (each in e_{s_u} Y).
Matrix map_from_generators(const ProjectiveSum& p, const FdModule& y, const std::vector<Vector>& images) {
    Matrix out(y.dim(), p.dim(), y.p());
    for (std::size_t b = 0; b < p.dim(); ++b) {
        Vector v = la::zero_vector(p.dim());
        v[b] = 1;
        Vector acc = la::zero_vector(y.dim());
        for (std::size_t u = 0; u < p.types.size(); ++u) {
            Vector a = p.component(v, u);
            if (la::is_zero(a)) continue;
            acc = la::add(acc, y.act(a).apply(images[u]), y.p());
        }
        for (std::size_t r = 0; r < y.dim(); ++r) out(r, b) = acc[r];
    }
    return out;
}

}  // namespace

ExtSystem::ExtSystem(const FdModule& m, const FdModule& n, long i, std::size_t depth)
    : ExtSystem(chain_of(resolution_of(m)), n, i, depth) {}

ExtSystem::ExtSystem(ChainPtr chain, const FdModule& n, long i, std::size_t depth)
    : i_(i), depth_(depth), chain_(std::move(chain)), res_n_(resolution_of(n)) {
    require(res_n_->ring()->same_as(*chain_->ring()), ErrorCode::InvalidArgument,
            "Ext system: modules over different rings");
    const Scalar p = chain_->ring()->p();
    for (std::size_t t = 0; t <= depth_ + 1; ++t)
        omega_.push_back(make_complex(chain_, res_n_->syzygy(t), ComplexKind::Hom));
    for (std::size_t t = 0; t <= depth_; ++t) {
        auto st = res_n_->stage(t);
        cover_.push_back(make_complex(chain_, st->cover.projective.module, ComplexKind::Hom));
        proj_.push_back(std::make_shared<InducedMap>(cover_[t], omega_[t], st->cover.map));
        incl_.push_back(std::make_shared<InducedMap>(omega_[t + 1], cover_[t], st->inclusion));
    }
    for (std::size_t t = 0; t <= depth_; ++t) {
        const long j = ext_degree(t);
        const auto& e = ext_space(t);
        // Maps into Ω_t n that factor through the cover Q_t.
        la::Subspace zq = la::kernel_basis(cover_[t]->out(j));
        la::Subspace ph = la::image_basis(proj_[t]->matrix(j) * zq.basis_columns());
        phom_.push_back(ph);
        uhom_.emplace_back(e.h.top(), ph);
        compare_.push_back(class_columns(uhom_[t], [&] {
            std::vector<Vector> v;
            for (std::size_t c = 0; c < e.dim(); ++c) v.push_back(e.h.rep(c));
            return v;
        }()));
        if (t == 0) {
            delta_.push_back(zero_matrix(e.dim(), 0, p));
            sdelta_.push_back(zero_matrix(uhom_[0].dim(), 0, p));
            sat_.push_back(la::Subspace::full(e.dim(), p));
            continue;
        }
        delta_.push_back(connecting_map(*incl_[t - 1], *proj_[t - 1], j - 1));
        std::vector<Vector> reps;
        for (std::size_t c = 0; c < uhom_[t - 1].dim(); ++c) reps.push_back(uhom_[t - 1].rep(c));
        sdelta_.push_back(class_columns(uhom_[t], connecting_cycles(*incl_[t - 1], *proj_[t - 1], j - 1, reps)));
        sat_.push_back(la::kernel_basis(incl_[t - 1]->on_homology(j)));
    }
}

Vector ExtSystem::q_differential(std::size_t t, long j, const Vector& v) const {
    return incl_[t]->apply(j, proj_[t + 1]->apply(j, v));
}

const HomologySpace& ExtSystem::ext_space(std::size_t t) const { return omega_[t]->homology(ext_degree(t)); }

CoTower ExtSystem::truncated() const {
    CoTower c = make_cotower(TowerKind::DualExt, i_);
    for (std::size_t t = 0; t <= depth_; ++t) {
        c.dims.push_back(ext_space(t).dim());
        c.maps.push_back(delta_[t]);
    }
    return c;
}

CoTower ExtSystem::satellite_cotower() const {
    CoTower c = make_cotower(TowerKind::Satellite, i_);
    const Scalar p = chain_->ring()->p();
    for (std::size_t t = 0; t <= depth_; ++t) {
        c.dims.push_back(sat_[t].dim());
        if (t == 0) {
            c.maps.push_back(zero_matrix(sat_[0].dim(), 0, p));
            continue;
        }
        Matrix m(sat_[t].dim(), sat_[t - 1].dim(), p);
        for (std::size_t col = 0; col < sat_[t - 1].dim(); ++col) {
            Vector img = delta_[t].apply(sat_[t - 1].basis_vector(col));
            require(sat_[t].contains(img), ErrorCode::InternalMismatch, "internal Lemma B.5 mismatch");
            Vector k = sat_[t].coords(img);
            for (std::size_t r = 0; r < k.size(); ++r) m(r, col) = k[r];
        }
        c.maps.push_back(std::move(m));
    }
    return c;
}

CoTower ExtSystem::benson_carlson() const {
    CoTower c = make_cotower(TowerKind::DualExt, i_);
    for (std::size_t t = 0; t <= depth_; ++t) {
        c.dims.push_back(uhom_[t].dim());
        c.maps.push_back(sdelta_[t]);
    }
    return c;
}

StabilizationReport bc_ext(const FdModule& m, const FdModule& n, long i, std::size_t depth, std::size_t w) {
    ExtSystem sys(m, n, i, depth);
    auto rep = cotower_limit(sys.benson_carlson(), w);
    rep.note = "stable Hom colimit uHom(Ω_{t+i} m, Ω_t n)";
    return rep;
}

StabilizationReport pcomp_ext(const FdModule& m, const FdModule& n, long i, std::size_t depth, std::size_t w) {
    ExtSystem sys(m, n, i, depth);
    // The satellite at t is the image of the previous connecting map.
    for (std::size_t t = 1; t <= depth; ++t)
        require(la::image_basis(sys.delta(t)) == sys.satellite(t), ErrorCode::InternalMismatch,
                "internal Lemma B.5 mismatch at stage " + std::to_string(t));
    auto trunc = cotower_limit(sys.truncated(), w);
    auto sat = cotower_limit(sys.satellite_cotower(), w);
    // The satellite family lags one stage behind, so the finite verdicts may
    // differ; two stabilized windows must give the same colimit.
    require(!(trunc.verdict == Verdict::Stabilized && sat.verdict == Verdict::Stabilized) ||
                trunc.limit_dim == sat.limit_dim,
            ErrorCode::InternalMismatch, "internal Lemma B.5 mismatch: the satellite and truncated colimits differ");
    trunc.note = "colimit of Ext^{t+i}(m, Ω_t n); satellite family agrees";
    return trunc;
}

CohomAgreement cohom_agreement(const ExtSystem& sys) {
    CohomAgreement rep;
    for (std::size_t t = 0; t <= sys.depth(); ++t) {
        const std::size_t de = sys.ext_space(t).dim(), ds = sys.stable_hom(t).dim();
        rep.ext_dims.push_back(de);
        rep.stable_dims.push_back(ds);
        rep.satellite_dims.push_back(sys.satellite(t).dim());
        const std::size_t r = la::rank(sys.comparison(t));
        const bool bijective_expected = t >= 1 && sys.ext_degree(t) >= 1;
        if (r != ds) rep.failures.push_back("stage " + std::to_string(t) + ": comparison not surjective");
        if (bijective_expected && de != ds)
            rep.failures.push_back("stage " + std::to_string(t) + ": Ext and stable Hom dims differ");
        if (t >= 1 && !(sys.stable_delta(t) * sys.comparison(t - 1) == sys.comparison(t) * sys.delta(t)))
            rep.failures.push_back("stage " + std::to_string(t) + ": comparison square does not commute");
    }
    rep.pass = rep.failures.empty();
    return rep;
}

std::vector<Matrix> syzygy_lift(const ModuleMap& alpha, std::size_t depth) {
    auto rs = resolution_of(alpha.source), rt = resolution_of(alpha.target);
    const FdModule src = alpha.source.left_view();
    std::vector<Matrix> out{alpha.matrix};
    for (std::size_t t = 0; t < depth; ++t) {
        auto ss = rs->stage(t), st = rt->stage(t);
        const ProjectiveSum& q = ss->cover.projective;
        std::vector<Vector> imgs;
        for (std::size_t u = 0; u < q.types.size(); ++u) {
            Vector y = out[t].apply(ss->cover.images[u]);
            Vector x = lift_through_cover(st->cover, y);
            // Keep the lift inside e_s Q' so that it defines a module map.
            const auto& e = q.ring->basic().idempotents[q.types[u]];
            imgs.push_back(st->cover.projective.module.act(e).apply(x));
        }
        Matrix beta = map_from_generators(q, st->cover.projective.module, imgs);
        require((st->cover.map * beta) == (out[t] * ss->cover.map), ErrorCode::LiftFailed,
                "syzygy lift: square does not commute");
        Matrix restricted = beta * ss->inclusion;
        const std::size_t dn = st->next.dim();
        Matrix next(dn, ss->next.dim(), src.p());
        for (std::size_t c = 0; c < ss->next.dim(); ++c) {
            auto k = st->inclusion_solver.solve(restricted.column(c));
            require(k.has_value(), ErrorCode::LiftFailed, "syzygy lift: image leaves the syzygy");
            for (std::size_t r = 0; r < dn; ++r) next(r, c) = (*k)[r];
        }
        out.push_back(std::move(next));
    }
    return out;
}

CotowerMorphism cotower_morphism(const ExtSystem& src, const ExtSystem& dst, const ModuleMap& alpha) {
    require(src.chain() == dst.chain(), ErrorCode::InvalidArgument, "cotower morphism: systems on different chains");
    require(src.degree() == dst.degree() && src.depth() == dst.depth(), ErrorCode::InvalidArgument,
            "cotower morphism: systems differ in degree or depth");
    CotowerMorphism out;
    auto lifts = syzygy_lift(alpha, src.depth());
    for (std::size_t t = 0; t <= src.depth(); ++t) {
        InducedMap f(src.syzygy_complex(t), dst.syzygy_complex(t), lifts[t]);
        out.maps.push_back(f.on_homology(src.ext_degree(t)));
        if (t >= 1 && !(dst.delta(t) * out.maps[t - 1] == out.maps[t] * src.delta(t))) out.commutes = false;
    }
    return out;
}

bool is_chain_segment(const ExtSystem& sys, const StableMapClass& s) {
    const long i = s.degree;
    const Scalar p = sys.chain()->ring()->p();
    for (std::size_t r = 0; r + 1 < s.phi.size(); ++r) {
        const long j = static_cast<long>(s.start + r);
        const std::size_t t = static_cast<std::size_t>(j - i);
        Vector lhs = sys.q_differential(t, j + 1, s.phi[r + 1]);
        Vector rhs = la::scale(sys.cover_complex(t)->out(j).apply(s.phi[r]), sign(i, p), p);
        if (lhs != rhs) return false;
    }
    return true;
}

Vector mu_forward_map(const ExtSystem& sys, const StableMapClass& s, std::size_t k) {
    require(k >= s.start && k < s.end(), ErrorCode::InvalidArgument, "mu_forward: degree outside the segment");
    require(static_cast<long>(k) >= s.degree, ErrorCode::InvalidArgument, "mu_forward: k - i must be non-negative");
    const long j = static_cast<long>(k);
    const std::size_t t = static_cast<std::size_t>(j - s.degree);
    Vector f = sys.projection(t).apply(j, s.phi[k - s.start]);
    // Well defined on Ω_k m when the next square commutes.
    require(la::is_zero(sys.syzygy_complex(t)->out(j).apply(f)), ErrorCode::InvalidArgument,
            "mu_forward: the segment does not vanish on the next syzygy");
    return f;
}

Vector mu_forward(const ExtSystem& sys, const StableMapClass& s, std::size_t k) {
    const std::size_t t = static_cast<std::size_t>(static_cast<long>(k) - s.degree);
    return sys.stable_hom(t).coords(mu_forward_map(sys, s, k));
}

StableMapClass mu_backward(const ExtSystem& sys, std::size_t t, const Vector& f, std::size_t len) {
    require(len >= 1, ErrorCode::InvalidArgument, "mu_backward: empty segment");
    require(t + len - 1 <= sys.depth(), ErrorCode::WindowExhausted, "mu_backward: segment leaves the system depth");
    const long i = sys.degree();
    const long k = static_cast<long>(t) + i;
    require(k >= 0, ErrorCode::InvalidArgument, "mu_backward: negative start degree");
    require(sys.stable_hom(t).top().contains(f), ErrorCode::InvalidArgument, "mu_backward: not a map of syzygies");
    const Scalar p = sys.chain()->ring()->p();
    StableMapClass s;
    s.degree = i;
    s.start = static_cast<std::size_t>(k);
    auto first = sys.projection(t).solve(k, f);
    require(first.has_value(), ErrorCode::LiftFailed, "lift failed through the cover");
    s.phi.push_back(*first);
    for (std::size_t r = 1; r < len; ++r) {
        const long j = k + static_cast<long>(r);
        const std::size_t tj = t + r;
        Vector psi = la::scale(sys.cover_complex(tj - 1)->out(j - 1).apply(s.phi.back()), sign(i, p), p);
        auto w = sys.inclusion(tj - 1).solve(j, psi);
        require(w.has_value(), ErrorCode::LiftFailed, "lift failed: image leaves the syzygy");
        auto next = sys.projection(tj).solve(j, *w);
        require(next.has_value(), ErrorCode::LiftFailed, "lift failed through the cover");
        s.phi.push_back(*next);
    }
    return s;
}

std::optional<NullHomotopy> null_homotopy(const ExtSystem& sys, const StableMapClass& s) {
    require(!s.phi.empty(), ErrorCode::InvalidArgument, "null_homotopy: empty segment");
    const long i = s.degree;
    const long k = static_cast<long>(s.start);
    const std::size_t t = static_cast<std::size_t>(k - i);
    require(t + s.phi.size() <= sys.depth(), ErrorCode::WindowExhausted, "null_homotopy: segment leaves the depth");
    const Scalar p = sys.chain()->ring()->p();
    Vector ft = mu_forward_map(sys, s, s.start);
    // s with π s = φ̃ exactly, among cycles of Hom(P, Q_t).
    Matrix zq = la::kernel_basis(sys.cover_complex(t)->out(k)).basis_columns();
    auto c = la::solve(sys.projection(t).matrix(k) * zq, ft);
    if (!c) return std::nullopt;
    NullHomotopy h;
    h.correction = zq.apply(*c);
    Vector rhs = la::sub(s.phi[0], h.correction, p);
    for (std::size_t r = 0; r < s.phi.size(); ++r) {
        const long j = k + static_cast<long>(r);
        const std::size_t tj = t + r;
        if (r > 0) {
            Vector back = sys.cover_complex(tj)->out(j - 1).apply(h.sigma.back());
            rhs = la::sub(s.phi[r], la::scale(back, sign(i, p), p), p);
        }
        auto w = sys.inclusion(tj).solve(j, rhs);
        require(w.has_value(), ErrorCode::InternalMismatch, "null homotopy: obstruction does not vanish");
        auto sig = sys.projection(tj + 1).solve(j, *w);
        require(sig.has_value(), ErrorCode::LiftFailed, "null homotopy: lift failed");
        require(sys.q_differential(tj, j, *sig) == rhs, ErrorCode::InternalMismatch, "null homotopy: check failed");
        h.sigma.push_back(*sig);
    }
    return h;
}

StableMapClass homotopy_boundary(const ExtSystem& sys, long i, std::size_t start, const std::vector<Vector>& sigma) {
    require(!sigma.empty(), ErrorCode::InvalidArgument, "homotopy_boundary: empty homotopy");
    const Scalar p = sys.chain()->ring()->p();
    StableMapClass s;
    s.degree = i;
    s.start = start;
    // sigma[0] is σ_{start-1}.
    for (std::size_t r = 1; r < sigma.size(); ++r) {
        const long j = static_cast<long>(start + r - 1);
        const std::size_t tj = static_cast<std::size_t>(j - i);
        Vector a = sys.q_differential(tj, j, sigma[r]);
        Vector b = sys.cover_complex(tj)->out(j - 1).apply(sigma[r - 1]);
        s.phi.push_back(la::add(a, la::scale(b, sign(i, p), p), p));
    }
    return s;
}

DualityBridgeReport duality_bridge_check(const FdModule& m, const FdModule& n, long i, std::size_t depth) {
    require(m.side() == Side::Right && n.side() == Side::Right, ErrorCode::InvalidArgument,
            "duality bridge: m and n must be right modules");
    DualityBridgeReport rep;
    auto chain = chain_of(resolution_of(m));
    const FdModule dn = dual(n);
    CosyzygySystem tor(chain, dn, i, depth);
    ExtSystem ext(chain, n, i, depth);
    const Scalar p = m.p();
    std::vector<Matrix> pairing;
    for (std::size_t k = 0; k <= depth; ++k) {
        const long j = static_cast<long>(k) + i;
        const FdModule x = tor.injective()->cosyzygy(k);
        const FdModule y = ext.coefficient_resolution()->syzygy(k);
        bool literal = x.dim() == y.dim();
        for (std::size_t b = 0; literal && b < x.actions().size(); ++b)
            literal = x.action(b) == y.action(b).transpose();
        if (!literal) {
            rep.literal_duality = false;
            rep.failures.push_back("stage " + std::to_string(k) + ": cosyzygy is not the dual syzygy");
        }
        const auto& v = tor.space(k);
        const auto& e = ext.ext_space(k);
        rep.tor_dims.push_back(v.dim());
        rep.ext_dims.push_back(e.dim());
        // Q minimal means Hom(Q_k, k) is exactly the injective I^k.
        const std::size_t qk = ext.coefficient_resolution()->projective(k).dim();
        const std::size_t ik = tor.injective()->injective(k).dim();
        rep.acyclic_dims.push_back(ik >= qk ? ik - qk : qk - ik);
        if (ik != qk) rep.failures.push_back("stage " + std::to_string(k) + ": injective term is not D(Q_k)");
        if (v.dim() != e.dim()) rep.failures.push_back("stage " + std::to_string(k) + ": dims differ");
        Matrix g(v.dim(), e.dim(), p);
        if (literal) {
            for (std::size_t a = 0; a < v.dim(); ++a) {
                Vector va = tor.stage_complex(k)->embed(j, v.h.rep(a));
                for (std::size_t b = 0; b < e.dim(); ++b)
                    g(a, b) = la::dot(va, ext.syzygy_complex(k)->embed(j, e.h.rep(b)), p);
            }
        }
        if (g.rows() != g.cols() || la::rank(g) != g.rows()) {
            rep.pairing_perfect = false;
            rep.failures.push_back("stage " + std::to_string(k) + ": pairing is degenerate");
        }
        if (k >= 1 && !(tor.delta(k).transpose() * pairing[k - 1] == g * ext.delta(k))) {
            rep.squares_commute = false;
            rep.failures.push_back("stage " + std::to_string(k) + ": connecting maps are not adjoint");
        }
        pairing.push_back(std::move(g));
    }
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace homct
