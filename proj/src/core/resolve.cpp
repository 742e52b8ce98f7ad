#include "resolve.hpp"

#include <map>

#include "error.hpp"

namespace homct {

std::size_t ProjectiveSum::summand_dim(std::size_t t) const {
    return ring->basic().projectives[types[t]].span.dim();
}

Vector ProjectiveSum::generator(std::size_t t) const {
    Vector v(dim(), 0);
    const auto& g = ring->basic().projectives[types[t]].generator;
    std::copy(g.begin(), g.end(), v.begin() + offsets[t]);
    return v;
}

Vector ProjectiveSum::component(const Vector& v, std::size_t t) const {
    const auto& span = ring->basic().projectives[types[t]].span;
    Vector a(ring->dim(), 0);
    for (std::size_t r = 0; r < span.dim(); ++r) la::axpy(a, v[offsets[t] + r], span.basis().row(r), ring->p());
    return a;
}

ProjectiveSum make_projective_sum(const AlgebraPtr& ring, std::vector<std::size_t> types) {
    ProjectiveSum ps;
    ps.ring = ring;
    ps.types = std::move(types);
    std::vector<FdModule> parts;
    std::size_t off = 0;
    for (auto s : ps.types) {
        ps.offsets.push_back(off);
        parts.push_back(indecomposable_projective(ring, s, Side::Left));
        off += parts.back().dim();
    }
    ps.module = parts.empty() ? FdModule::zero(ring, Side::Left) : direct_sum(parts);
    return ps;
}

Cover projective_cover(const FdModule& m) {
    require(m.side() == Side::Left, ErrorCode::InvalidArgument, "projective_cover expects a left module view");
    const AlgebraPtr& r = m.algebra();
    const auto& bs = r->basic();
    const Scalar p = m.p();
    std::vector<std::size_t> types;
    std::vector<Vector> images;
    if (m.dim() > 0) {
        Subspace acc = radical_submodule(m);
        const std::size_t top_dim = m.dim() - acc.dim();
        for (std::size_t s = 0; s < bs.num_simples() && images.size() < top_dim; ++s) {
            Subspace es = la::image_basis(m.act(bs.idempotents[s]));
            for (std::size_t k = 0; k < es.dim(); ++k) {
                Vector v = es.basis_vector(k);
                if (acc.contains(v)) continue;
                types.push_back(s);
                images.push_back(v);
                acc = acc.sum(Subspace::span_vectors({v}, m.dim(), p));
            }
        }
        require(images.size() == top_dim, ErrorCode::InternalMismatch, "top generators do not span the top");
    }
    Cover c;
    c.projective = make_projective_sum(r, types);
    c.images = images;
    c.map = Matrix(m.dim(), c.projective.dim(), p);
    for (std::size_t t = 0; t < types.size(); ++t) {
        const auto& span = bs.projectives[types[t]].span;
        std::vector<Vector> rho_y;
        for (std::size_t i = 0; i < r->dim(); ++i) rho_y.push_back(m.action(i).apply(images[t]));
        for (std::size_t j = 0; j < span.dim(); ++j) {
            Vector col(m.dim(), 0);
            auto b = span.basis().row(j);
            for (std::size_t i = 0; i < r->dim(); ++i) la::axpy(col, b[i], rho_y[i], p);
            for (std::size_t row = 0; row < m.dim(); ++row) c.map(row, c.projective.offsets[t] + j) = col[row];
        }
    }
    require(la::rank(c.map) == m.dim(), ErrorCode::InternalMismatch, "projective cover is not surjective");
    c.kernel = la::kernel_basis(c.map);
    return c;
}

Vector lift_through_cover(const Cover& c, const Vector& y) {
    auto x = la::solve(c.map, y);
    require(x.has_value(), ErrorCode::LiftFailed, "lift failed: vector not in the image of the cover");
    return *x;
}

ProjectiveResolution::ProjectiveResolution(FdModule m_left) : module_(std::move(m_left)) {
    require(module_.side() == Side::Left, ErrorCode::InvalidArgument, "resolutions are built from left views");
}

std::shared_ptr<const Stage> ProjectiveResolution::stage(std::size_t j) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (stages_.size() <= j) {
        auto st = std::make_shared<Stage>();
        st->omega = stages_.empty() ? module_ : stages_.back()->next;
        st->cover = projective_cover(st->omega);
        auto [sub, inc] = submodule_on(st->cover.projective.module, st->cover.kernel);
        st->next = sub;
        st->inclusion = inc.matrix;
        st->inclusion_solver = la::LinearSolver(st->inclusion);
        stages_.push_back(std::move(st));
        components_.push_back(nullptr);
    }
    return stages_[j];
}

Matrix ProjectiveResolution::differential(std::size_t j) const {
    require(j >= 1, ErrorCode::InvalidArgument, "differential index must be at least 1");
    auto cur = stage(j);
    auto prev = stage(j - 1);
    return prev->inclusion * cur->cover.map;
}

const std::vector<std::vector<Vector>>& ProjectiveResolution::components(std::size_t j) const {
    require(j >= 1, ErrorCode::InvalidArgument, "component index must be at least 1");
    auto cur = stage(j);
    auto prev = stage(j - 1);
    std::lock_guard<std::mutex> lock(mu_);
    if (!components_[j]) {
        const ProjectiveSum& target = prev->cover.projective;
        auto comp = std::make_shared<std::vector<std::vector<Vector>>>();
        for (const auto& img : cur->cover.images) {
            Vector v = prev->inclusion.apply(img);
            std::vector<Vector> row;
            for (std::size_t u = 0; u < target.types.size(); ++u) row.push_back(target.component(v, u));
            comp->push_back(std::move(row));
        }
        components_[j] = std::move(comp);
    }
    return *components_[j];
}

std::optional<std::size_t> ProjectiveResolution::length(std::size_t limit) const {
    for (std::size_t j = 0; j <= limit; ++j)
        if (syzygy(j).dim() == 0) return j;
    return std::nullopt;
}

ResolutionPtr resolution_of(const FdModule& m) {
    static std::mutex mu;
    static std::map<std::string, ResolutionPtr> cache;
    FdModule left = m.left_view();
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[left.key()];
    if (!slot) slot = std::make_shared<ProjectiveResolution>(left);
    return slot;
}

namespace {

FdModule dual_over(const AlgebraPtr& target_ring, const FdModule& m_left) {
    std::vector<Matrix> act;
    for (const auto& x : m_left.actions()) act.push_back(x.transpose());
    return FdModule(target_ring, Side::Left, std::move(act), true);
}

}  // namespace

FdModule dual_left(const FdModule& m_left) {
    return dual_over(m_left.algebra()->opposite(), m_left);
}

InjectiveResolution::InjectiveResolution(const FdModule& n) : n_left_(n.left_view()) {
    dual_ = resolution_of(dual_left(n_left_));
}

FdModule InjectiveResolution::cosyzygy(std::size_t k) const {
    if (k == 0) return n_left_;
    return dual_over(n_left_.algebra(), dual_->syzygy(k));
}

FdModule InjectiveResolution::injective(std::size_t k) const {
    return dual_over(n_left_.algebra(), dual_->projective(k).module);
}

Matrix InjectiveResolution::embedding(std::size_t k) const { return dual_->stage(k)->cover.map.transpose(); }

Matrix InjectiveResolution::projection(std::size_t k) const { return dual_->stage(k)->inclusion.transpose(); }

Matrix InjectiveResolution::differential(std::size_t k) const { return embedding(k + 1) * projection(k); }

InjectivePtr injective_resolution_of(const FdModule& n) {
    static std::mutex mu;
    static std::map<std::string, InjectivePtr> cache;
    FdModule left = n.left_view();
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[left.key()];
    if (!slot) slot = std::make_shared<InjectiveResolution>(left);
    return slot;
}

InjectiveEnvelope injective_envelope(const FdModule& m) {
    auto inj = injective_resolution_of(m);
    FdModule e = FdModule::from_left_view(inj->injective(0), m.algebra(), m.side());
    return {e, inj->embedding(0)};
}

std::optional<Periodicity> detect_periodicity(const ProjectiveResolution& res, std::size_t depth, std::uint64_t seed) {
    for (std::size_t total = 1; total <= depth; ++total)
        for (std::size_t q = 0; q < total; ++q) {
            const std::size_t s = total - q;
            FdModule a = res.syzygy(q + s), b = res.syzygy(q);
            if (a.dim() != b.dim()) continue;
            auto iso = is_isomorphic(a, b, seed);
            if (iso.verdict == IsoVerdict::Isomorphic) return Periodicity{q, s, iso.witness->matrix};
        }
    return std::nullopt;
}

SelfInjectivity is_self_injective(const AlgebraPtr& a) {
    FdModule reg = regular_module(a, Side::Left);
    auto env = injective_envelope(reg);
    SelfInjectivity out;
    out.self_injective = env.envelope.dim() == reg.dim();
    if (out.self_injective) out.witness = env.embedding;
    return out;
}

ResolutionCheck check_resolution(const ProjectiveResolution& res, std::size_t depth) {
    ResolutionCheck out;
    for (std::size_t j = 0; j <= depth; ++j) {
        auto st = res.stage(j);
        // Exactness at P_j: kernel of the cover is exactly the image of d_{j+1}.
        Matrix next_map = st->inclusion * res.stage(j + 1)->cover.map;
        if (!(la::image_basis(next_map) == st->cover.kernel)) {
            out.exact = false;
            out.detail = "inexact at degree " + std::to_string(j);
        }
        if (j >= 1 && !(res.differential(j) * next_map).is_zero()) {
            out.complex = false;
            out.detail = "d^2 != 0 at degree " + std::to_string(j);
        }
        Subspace jp = radical_submodule(st->cover.projective.module);
        if (!jp.contains(st->cover.kernel)) {
            out.minimal = false;
            out.detail = "kernel of cover leaves the radical at degree " + std::to_string(j);
        }
    }
    return out;
}

}  // namespace homct
