#include "completion.hpp"

#include <algorithm>

#include "error.hpp"

namespace homct {

const char* tower_kind_name(TowerKind k) {
    switch (k) {
        case TowerKind::Cosyzygy: return "cosyzygy";
        case TowerKind::Satellite: return "satellite";
        case TowerKind::DualExt: return "dual-ext";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stabilized: return "Stabilized";
        case Verdict::NotStabilized: return "NotStabilized";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Tower transpose(const CoTower& c) {
    Tower t;
    t.provenance = c.provenance;
    t.degree = c.degree;
    t.dims = c.dims;
    for (const auto& m : c.maps) t.maps.push_back(m.transpose());
    return t;
}

StabilizationReport tower_limit(const Tower& t, std::size_t w) {
    require(!t.dims.empty() && t.maps.size() == t.dims.size(), ErrorCode::InvalidArgument, "tower_limit: malformed tower");
    const std::size_t K = t.depth();
    require(K >= w, ErrorCode::InvalidArgument, "tower_limit: depth must be at least the window");
    const Scalar p = t.maps[0].modulus();
    for (std::size_t k = 1; k <= K; ++k)
        require(t.maps[k].rows() == t.dims[k - 1] && t.maps[k].cols() == t.dims[k], ErrorCode::DimensionMismatch,
                "tower_limit: map shape does not match the stage dimensions");

    StabilizationReport rep;
    rep.window = w;
    rep.dims = t.dims;
    rep.image_chain.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        Matrix comp = Matrix::identity(t.dims[k], p);
        rep.image_chain[k].push_back(t.dims[k]);
        for (std::size_t j = 1; k + j <= K; ++j) {
            comp = comp * t.maps[k + j];
            rep.image_chain[k].push_back(la::rank(comp));
        }
    }

    // Stable images I_k = Im(V_K -> V_k).
    std::vector<la::Subspace> stable(K + 1);
    Matrix from_top = Matrix::identity(t.dims[K], p);
    stable[K] = la::Subspace::full(t.dims[K], p);
    for (std::size_t k = K; k-- > 0;) {
        from_top = t.maps[k + 1] * from_top;
        stable[k] = la::image_basis(from_top);
    }

    const std::size_t L = K - w;
    bool ok = true;
    for (std::size_t k = L; k <= K; ++k) ok = ok && t.dims[k] == t.dims[L];
    const std::size_t top = K > L ? K - 1 : K;
    for (std::size_t k = L; k <= top; ++k) ok = ok && stable[k].dim() == stable[L].dim();
    for (std::size_t k = L + 1; k <= top && ok; ++k) {
        Matrix restricted = t.maps[k] * stable[k].basis_columns();
        ok = la::rank(restricted) == stable[k].dim() && la::image_basis(restricted) == stable[k - 1];
    }
    if (ok) {
        rep.verdict = Verdict::Stabilized;
        rep.limit_dim = stable[L].dim();
        rep.stable_from = L;
        rep.stable_to = K;
        rep.limit_basis = stable[L].basis_columns();
        rep.note = "certified on the last " + std::to_string(w) + " stages";
        return rep;
    }
    bool growing = true;
    for (std::size_t k = L + 1; k <= K; ++k) growing = growing && t.dims[k] > t.dims[k - 1];
    if (growing && w > 0) {
        rep.verdict = Verdict::NotStabilized;
        rep.lower_bound = t.dims[K];
        rep.note = "dimensions strictly increase on the last " + std::to_string(w + 1) + " stages";
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.note = "neither constant nor strictly growing on the window";
    return rep;
}

StabilizationReport cotower_limit(const CoTower& c, std::size_t w) { return tower_limit(transpose(c), w); }

CosyzygySystem::CosyzygySystem(const FdModule& m, const FdModule& n, long i, std::size_t depth)
    : CosyzygySystem(chain_of(resolution_of(m)), n, i, depth) {}

CosyzygySystem::CosyzygySystem(ChainPtr chain, const FdModule& n, long i, std::size_t depth)
    : i_(i), depth_(depth), inj_(injective_resolution_of(n)), chain_(std::move(chain)) {
    for (std::size_t k = 0; k <= depth_; ++k) {
        c_.push_back(make_complex(chain_, inj_->cosyzygy(k), ComplexKind::Tensor));
        const long deg = static_cast<long>(k) + i_;
        if (k == 0) {
            delta_.emplace_back(0, c_[0]->homology(deg).dim(), chain_->ring()->p());
            from_inj_.emplace_back(c_[0]->homology(deg).dim(), 0, chain_->ring()->p());
            continue;
        }
        auto b = make_complex(chain_, inj_->injective(k - 1), ComplexKind::Tensor);
        InducedMap incl(c_[k - 1], b, inj_->embedding(k - 1));
        InducedMap proj(b, c_[k], inj_->projection(k - 1));
        delta_.push_back(connecting_map(incl, proj, deg));
        from_inj_.push_back(proj.on_homology(deg));
    }
}

const HomologySpace& CosyzygySystem::space(std::size_t k) const {
    return c_[k]->homology(static_cast<long>(k) + i_);
}

la::Subspace CosyzygySystem::satellite_relations(std::size_t k) const {
    if (k == 0) return la::Subspace::zero(space(0).dim(), chain_->ring()->p());
    return la::image_basis(from_inj_[k]);
}

Tower CosyzygySystem::tower() const {
    Tower t;
    t.provenance = TowerKind::Cosyzygy;
    t.degree = i_;
    for (std::size_t k = 0; k <= depth_; ++k) {
        t.dims.push_back(space(k).dim());
        t.maps.push_back(delta_[k]);
    }
    return t;
}

Tower cosyzygy_tower(const FdModule& m, const FdModule& n, long i, std::size_t depth) {
    return CosyzygySystem(m, n, i, depth).tower();
}

RightSatellite right_satellite(const FdModule& m, long j, std::size_t steps, const FdModule& n) {
    auto chain = chain_of(resolution_of(m));
    auto inj = injective_resolution_of(n);
    auto c = make_complex(chain, inj->cosyzygy(steps), ComplexKind::Tensor);
    RightSatellite out;
    out.tor = c->homology(j);
    const std::size_t d = out.tor.dim();
    const Scalar p = chain->ring()->p();
    la::Subspace rel = la::Subspace::zero(d, p);
    if (steps > 0) {
        auto b = make_complex(chain, inj->injective(steps - 1), ComplexKind::Tensor);
        rel = la::image_basis(InducedMap(b, c, inj->projection(steps - 1)).on_homology(j));
    }
    out.space = la::Subquotient(la::Subspace::full(d, p), rel);
    return out;
}

SatelliteSystem satellite_system(const CosyzygySystem& sys) {
    SatelliteSystem out;
    out.tower.provenance = TowerKind::Satellite;
    out.tower.degree = sys.degree();
    const Scalar p = sys.chain()->ring()->p();
    for (std::size_t k = 0; k <= sys.depth(); ++k) {
        SatelliteStage st;
        const std::size_t d = sys.space(k).dim();
        st.space = la::Subquotient(la::Subspace::full(d, p), sys.satellite_relations(k));
        if (k == 0) {
            st.phi = Matrix(0, st.space.dim(), p);
            out.tower.maps.emplace_back(0, st.space.dim(), p);
        } else {
            st.well_defined = (sys.delta(k) * sys.from_injective(k)).is_zero();
            std::vector<Vector> reps;
            for (std::size_t c = 0; c < st.space.dim(); ++c) reps.push_back(st.space.rep(c));
            st.phi = sys.delta(k) * Matrix::from_columns(reps, d, p);
            st.injective = la::rank(st.phi) == st.space.dim();
            // s_k = (projection onto S^{k-1}) ∘ φ^k.
            const auto& prev = out.stages[k - 1];
            std::vector<Vector> tcols;
            for (std::size_t c = 0; c < st.phi.cols(); ++c) tcols.push_back(prev.space.coords(st.phi.column(c)));
            Matrix s = Matrix::from_columns(tcols, prev.space.dim(), p);
            if (k >= 2) st.square_commutes = prev.phi * s == sys.delta(k - 1) * st.phi;
            out.tower.maps.push_back(std::move(s));
        }
        out.tower.dims.push_back(st.space.dim());
        out.stages.push_back(std::move(st));
    }
    return out;
}

Tower satellite_tower(const FdModule& m, const FdModule& n, long i, std::size_t depth) {
    return satellite_system(CosyzygySystem(m, n, i, depth)).tower;
}

SatelliteCrossCheck satellite_cross_check(const FdModule& m, const FdModule& n, long i, std::size_t depth,
                                          std::size_t w) {
    CosyzygySystem sys(m, n, i, first_stage(i) + depth);
    auto sat = satellite_system(sys);
    auto cos = sys.tower();
    SatelliteCrossCheck rep;
    rep.cosyzygy_dims = cos.dims;
    rep.satellite_dims = sat.tower.dims;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.failures.push_back(std::move(why));
    };
    if (sat.tower.dims[0] != cos.dims[0]) fail("stage 0: satellite differs from Tor");
    for (std::size_t k = 1; k <= sys.depth(); ++k) {
        const auto& st = sat.stages[k];
        const std::string at = "stage " + std::to_string(k) + ": ";
        if (!st.well_defined) fail(at + "connecting map does not vanish on the relations");
        if (!st.injective) fail(at + "phi is not injective");
        if (!st.square_commutes) fail(at + "transition square does not commute");
        if (st.space.dim() != la::rank(sys.delta(k))) fail(at + "satellite dimension differs from rank of delta");
    }
    auto lc = tower_limit(cos, w), ls = tower_limit(sat.tower, w);
    rep.cosyzygy_verdict = lc.verdict;
    rep.satellite_verdict = ls.verdict;
    if (lc.verdict != ls.verdict) fail("limit verdicts differ");
    else if (lc.verdict == Verdict::Stabilized && lc.limit_dim != ls.limit_dim) fail("limit dimensions differ");
    return rep;
}

std::size_t first_stage(long i) { return i < 0 ? static_cast<std::size_t>(-i) : 0; }

StabilizationReport complete_homology(const FdModule& m, const FdModule& n, long i, std::size_t depth,
                                      std::size_t w) {
    return tower_limit(cosyzygy_tower(m, n, i, first_stage(i) + depth), w);
}

DimensionShiftReport dimension_shift_check(const FdModule& m, const FdModule& n, long i, std::size_t steps,
                                           std::size_t depth, std::size_t w) {
    DimensionShiftReport rep;
    auto inj = injective_resolution_of(n);
    FdModule shifted = FdModule::from_left_view(inj->cosyzygy(steps), n.algebra(), n.side());
    rep.shifted = complete_homology(m, shifted, i, depth, w);
    rep.reference = complete_homology(m, n, i - static_cast<long>(steps), depth + steps, w);
    rep.conclusive = rep.shifted.verdict == Verdict::Stabilized && rep.reference.verdict == Verdict::Stabilized;
    bool stagewise = true;
    for (std::size_t k = 0; k < rep.shifted.dims.size(); ++k) {
        stagewise = stagewise && rep.shifted.dims[k] == rep.reference.dims[k + steps];
        const auto& a = rep.shifted.image_chain[k];
        const auto& b = rep.reference.image_chain[k + steps];
        const std::size_t len = std::min(a.size(), b.size());
        stagewise = stagewise && std::equal(a.begin(), a.begin() + static_cast<long>(len), b.begin());
    }
    if (!rep.conclusive) {
        rep.detail = "inconclusive: a side did not stabilize";
        return rep;
    }
    rep.pass = stagewise && rep.shifted.limit_dim == rep.reference.limit_dim;
    rep.detail = stagewise ? "stage-wise reindexing matches" : "stage-wise reindexing differs";
    return rep;
}

LeftSatelliteReport left_satellite_check(const FdModule& m, long i, std::size_t k, const FdModule& n) {
    require(i >= 0, ErrorCode::InvalidArgument, "left_satellite_check: degree must be non-negative");
    LeftSatelliteReport rep;
    rep.tor_dim = tor(m, n, static_cast<long>(k) + i).dim();
    if (k == 0) {
        rep.satellite_dim = tor(m, n, i).dim();
        rep.connecting_rank = rep.satellite_dim;
        rep.pass = rep.satellite_dim == rep.tor_dim;
        return rep;
    }
    auto ses = syzygy_sequence(n, k - 1);
    auto sc = ses_complexes(chain_of(resolution_of(m)), ses, ComplexKind::Tensor);
    Matrix f = sc.f->on_homology(i);
    rep.satellite_dim = sc.a->homology(i).dim() - la::rank(f);
    Matrix d = connecting_map(*sc.f, *sc.g, i + 1);
    rep.connecting_rank = la::rank(d);
    rep.pass = rep.satellite_dim == rep.tor_dim && rep.connecting_rank == rep.satellite_dim && (f * d).is_zero();
    return rep;
}

InducedIsoReport induced_iso_check(const CompletePtr& t, const FdModule& m, const std::vector<FdModule>& corpus,
                                   long lo, long hi, std::size_t depth, std::size_t w) {
    InducedIsoReport rep;
    auto fail = [&](bool& flag, std::string why) {
        flag = false;
        rep.pass = false;
        rep.failures.push_back(std::move(why));
    };
    for (std::size_t c = 0; c < corpus.size(); ++c) {
        const FdModule& n = corpus[c];
        const std::string tag = "module " + std::to_string(c) + ", degree ";
        FdModule e = FdModule::from_left_view(injective_envelope(n.left_view()).envelope, n.algebra(), n.side());
        auto te = tate_complex(t, e);
        for (long i = lo; i <= hi; ++i) {
            if (te->homology(i).dim() != 0) fail(rep.vanishes_on_injectives, tag + std::to_string(i) + ": Tate homology of an injective");
            auto ce = complete_homology(m, e, i, depth, w);
            if (ce.verdict != Verdict::Stabilized || ce.limit_dim != 0)
                fail(rep.vanishes_on_injectives, tag + std::to_string(i) + ": complete homology of an injective");
        }
        auto tn = tate_complex(t, n);
        auto pn = tor_complex(m, n);
        for (long i = t->agreement() + 1; i <= std::max(hi, t->agreement() + 2); ++i) {
            const auto& th = tn->homology(i);
            const auto& ph = pn->homology(i);
            bool ok = th.dim() == ph.dim();
            if (ok && ph.dim() > 0) {
                std::vector<Vector> cols;
                for (std::size_t r = 0; r < ph.dim(); ++r) cols.push_back(th.h.coords(ph.h.rep(r)));
                ok = la::rank(Matrix::from_columns(cols, th.dim(), m.p())) == th.dim();
            }
            if (!ok) fail(rep.agrees_with_tor, tag + std::to_string(i) + ": comparison with Tor is not bijective");
        }
        for (long i = lo; i <= hi; ++i) {
            auto ch = complete_homology(m, n, i, depth, w);
            if (ch.verdict != Verdict::Stabilized || ch.limit_dim != tn->homology(i).dim())
                fail(rep.agrees_with_complete, tag + std::to_string(i) + ": Tate and complete homology differ");
        }
    }
    return rep;
}

std::vector<Matrix> cosyzygy_lift(const ModuleMap& alpha, std::size_t depth) {
    auto inj = injective_resolution_of(alpha.source);
    auto inj2 = injective_resolution_of(alpha.target);
    const Scalar p = alpha.matrix.modulus();
    std::vector<Matrix> out{alpha.matrix};
    for (std::size_t k = 1; k <= depth; ++k) {
        FdModule i1 = inj->injective(k - 1), i2 = inj2->injective(k - 1);
        Matrix emb = inj->embedding(k - 1), emb2 = inj2->embedding(k - 1);
        la::Subspace hom = hom_over_algebra(i1, i2);
        std::vector<Vector> cols;
        std::vector<Matrix> basis;
        for (std::size_t b = 0; b < hom.dim(); ++b) {
            basis.push_back(unvec(hom.basis_vector(b), i2.dim(), i1.dim(), p));
            cols.push_back(vec(basis.back() * emb));
        }
        Matrix sys = Matrix::from_columns(cols, i2.dim() * emb.cols(), p);
        auto coef = la::solve(sys, vec(emb2 * out.back()));
        require(coef.has_value(), ErrorCode::LiftFailed, "cosyzygy_lift: no extension to the injective term");
        Matrix beta(i2.dim(), i1.dim(), p);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if ((*coef)[b] != 0) beta = beta + basis[b].scaled((*coef)[b]);
        Matrix proj = inj->projection(k - 1), proj2 = inj2->projection(k - 1);
        la::LinearSolver lift(proj);
        const std::size_t dk = proj.rows();
        Matrix ak(proj2.rows(), dk, p);
        for (std::size_t c = 0; c < dk; ++c) {
            Vector y(dk, 0);
            y[c] = 1;
            auto x = lift.solve(y);
            require(x.has_value(), ErrorCode::InternalMismatch, "cosyzygy_lift: projection is not surjective");
            Vector img = proj2.apply(beta.apply(*x));
            for (std::size_t r = 0; r < img.size(); ++r) ak(r, c) = img[r];
        }
        out.push_back(std::move(ak));
    }
    return out;
}

std::vector<Matrix> tower_morphism(const CosyzygySystem& src, const CosyzygySystem& dst, const ModuleMap& alpha) {
    require(src.chain() == dst.chain() && src.degree() == dst.degree(), ErrorCode::InvalidArgument,
            "tower_morphism: systems must share the chain and degree");
    const std::size_t depth = std::min(src.depth(), dst.depth());
    auto lifts = cosyzygy_lift(alpha, depth);
    std::vector<Matrix> out;
    for (std::size_t k = 0; k <= depth; ++k)
        out.push_back(InducedMap(src.stage_complex(k), dst.stage_complex(k), lifts[k])
                          .on_homology(static_cast<long>(k) + src.degree()));
    return out;
}

}  // namespace homct
