#include "complexes.hpp"

#include "error.hpp"

namespace homct {

std::vector<std::size_t> ResolutionChain::types(long j) const {
    if (j < 0) return {};
    return res_->projective(static_cast<std::size_t>(j)).types;
}

std::vector<std::vector<Vector>> ResolutionChain::components(long j) const {
    if (j <= 0) return {};
    return res_->components(static_cast<std::size_t>(j));
}

ChainPtr chain_of(const ResolutionPtr& res) { return std::make_shared<ResolutionChain>(res); }

Vector Piece::coords(std::span<const Scalar> v) const {
    Vector c(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) c[i] = v[pivots[i]];
    return c;
}

namespace {

Piece make_piece(const FdModule& x, const Vector& idempotent) {
    Subspace s = la::image_basis(x.act(idempotent));
    return Piece{s.basis_columns(), s.pivots()};
}

// C_to X.act(a) B_from.
Matrix block_of(const FdModule& x, const Vector& a, const Piece& from, const Piece& to) {
    Matrix out(to.dim(), from.dim(), x.p());
    if (la::is_zero(a) || to.dim() == 0 || from.dim() == 0) return out;
    Matrix full = x.act(a) * from.basis;
    for (std::size_t r = 0; r < to.dim(); ++r)
        for (std::size_t c = 0; c < from.dim(); ++c) out(r, c) = full(to.pivots[r], c);
    return out;
}

}  // namespace

FunctorComplex::FunctorComplex(ChainPtr chain, FdModule x, ComplexKind kind)
    : chain_(std::move(chain)), x_(std::move(x)), kind_(kind) {
    const AlgebraPtr& r = chain_->ring();
    require(x_.side() == Side::Left, ErrorCode::InvalidArgument, "complex coefficients must be a left view");
    if (kind_ == ComplexKind::Hom)
        require(x_.algebra()->same_as(*r), ErrorCode::InvalidArgument, "Hom complex: module over a different ring");
    else
        require(x_.algebra()->same_as(*r->opposite()), ErrorCode::InvalidArgument,
                "tensor complex: module must live over the opposite ring");
    for (const auto& e : r->basic().idempotents) pieces_.push_back(make_piece(x_, e));
}

std::size_t FunctorComplex::dim(long j) const {
    std::size_t d = 0;
    for (auto s : types(j)) d += pieces_[s].dim();
    return d;
}

std::vector<std::size_t> FunctorComplex::offsets(long j) const {
    std::vector<std::size_t> off;
    std::size_t d = 0;
    for (auto s : types(j)) {
        off.push_back(d);
        d += pieces_[s].dim();
    }
    return off;
}

const Matrix& FunctorComplex::out(long j) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = out_.find(j);
        if (it != out_.end()) return it->second;
    }
    const long n = next(j);
    Matrix m(dim(n), dim(j), p());
    // Components of the chain differential between degree hi and lo = hi - 1.
    const long hi = kind_ == ComplexKind::Tensor ? j : n;
    const long lo = hi - 1;
    auto thi = types(hi), tlo = types(lo);
    if (!thi.empty() && !tlo.empty()) {
        auto comps = chain_->components(hi);
        auto ohi = offsets(hi), olo = offsets(lo);
        for (std::size_t t = 0; t < thi.size(); ++t)
            for (std::size_t u = 0; u < tlo.size(); ++u) {
                const Vector& a = comps[t][u];
                if (la::is_zero(a)) continue;
                if (kind_ == ComplexKind::Tensor)
                    m.set_block(olo[u], ohi[t], block_of(x_, a, pieces_[thi[t]], pieces_[tlo[u]]));
                else
                    m.set_block(ohi[t], olo[u], block_of(x_, a, pieces_[tlo[u]], pieces_[thi[t]]));
            }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return out_.emplace(j, std::move(m)).first->second;
}

const HomologySpace& FunctorComplex::homology(long j) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = hom_.find(j);
        if (it != hom_.end()) return *it->second;
    }
    auto h = std::make_shared<HomologySpace>();
    h->degree = j;
    h->h = la::Subquotient(la::kernel_basis(out(j)), la::image_basis(in(j)));
    std::lock_guard<std::mutex> lock(mu_);
    return *hom_.emplace(j, std::move(h)).first->second;
}

Vector FunctorComplex::embed(long j, const Vector& c) const {
    auto ts = types(j);
    const std::size_t dx = x_.dim();
    Vector out(ts.size() * dx, 0);
    std::size_t off = 0;
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const Piece& pc = pieces_[ts[t]];
        for (std::size_t r = 0; r < dx; ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c2 = 0; c2 < pc.dim(); ++c2) acc += std::uint64_t(pc.basis(r, c2)) * c[off + c2];
            out[t * dx + r] = static_cast<Scalar>(acc % p());
        }
        off += pc.dim();
    }
    return out;
}

Vector FunctorComplex::restrict_to(long j, const Vector& ambient) const {
    auto ts = types(j);
    const std::size_t dx = x_.dim();
    Vector out;
    out.reserve(dim(j));
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const Piece& pc = pieces_[ts[t]];
        for (auto pv : pc.pivots) out.push_back(ambient[t * dx + pv]);
    }
    return out;
}

ComplexPtr make_complex(ChainPtr chain, FdModule x, ComplexKind kind) {
    return std::make_shared<FunctorComplex>(std::move(chain), std::move(x), kind);
}

InducedMap::InducedMap(ComplexPtr src, ComplexPtr dst, const Matrix& f) : src_(std::move(src)), dst_(std::move(dst)) {
    require(src_->chain_ptr() == dst_->chain_ptr(), ErrorCode::InvalidArgument, "induced map across different chains");
    require(f.rows() == dst_->module().dim() && f.cols() == src_->module().dim(), ErrorCode::DimensionMismatch,
            "induced map: module map has the wrong shape");
    for (std::size_t s = 0; s < src_->num_types(); ++s) {
        const Piece& a = src_->piece(s);
        const Piece& b = dst_->piece(s);
        Matrix full = f * a.basis;
        Matrix blk(b.dim(), a.dim(), f.modulus());
        for (std::size_t r = 0; r < b.dim(); ++r)
            for (std::size_t c = 0; c < a.dim(); ++c) blk(r, c) = full(b.pivots[r], c);
        solvers_.emplace_back(blk);
        blocks_.push_back(std::move(blk));
    }
}

Vector InducedMap::apply(long j, const Vector& v) const {
    auto ts = src_->types(j);
    Vector out;
    out.reserve(dst_->dim(j));
    std::size_t off = 0;
    for (auto s : ts) {
        const Matrix& b = blocks_[s];
        Vector part = b.apply(std::span<const Scalar>(v.data() + off, b.cols()));
        out.insert(out.end(), part.begin(), part.end());
        off += b.cols();
    }
    return out;
}

Matrix InducedMap::matrix(long j) const {
    auto ts = src_->types(j);
    Matrix m(dst_->dim(j), src_->dim(j), src_->p());
    std::size_t r = 0, c = 0;
    for (auto s : ts) {
        m.set_block(r, c, blocks_[s]);
        r += blocks_[s].rows();
        c += blocks_[s].cols();
    }
    return m;
}

std::optional<Vector> InducedMap::solve(long j, const Vector& y) const {
    auto ts = src_->types(j);
    Vector out;
    out.reserve(src_->dim(j));
    std::size_t off = 0;
    for (auto s : ts) {
        const Matrix& b = blocks_[s];
        auto x = solvers_[s].solve(std::span<const Scalar>(y.data() + off, b.rows()));
        if (!x) return std::nullopt;
        out.insert(out.end(), x->begin(), x->end());
        off += b.rows();
    }
    return out;
}

Matrix classes_matrix(const HomologySpace& dst, const std::vector<Vector>& cycles, std::size_t src_dim) {
    Matrix m(dst.dim(), src_dim, dst.h.modulus());
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        require(dst.h.top().contains(cycles[c]), ErrorCode::InternalMismatch, "image is not a cycle");
        Vector k = dst.h.coords(cycles[c]);
        for (std::size_t r = 0; r < k.size(); ++r) m(r, c) = k[r];
    }
    return m;
}

Matrix InducedMap::on_homology(long j) const {
    const auto& hs = src_->homology(j);
    std::vector<Vector> imgs;
    for (std::size_t c = 0; c < hs.dim(); ++c) imgs.push_back(apply(j, hs.h.rep(c)));
    return classes_matrix(dst_->homology(j), imgs, hs.dim());
}

std::vector<Vector> connecting_cycles(const InducedMap& incl, const InducedMap& proj, long j,
                                      const std::vector<Vector>& zs) {
    const FunctorComplex& mid = proj.source();
    const Matrix& d = mid.out(j);
    std::vector<Vector> lifts;
    for (const auto& z : zs) {
        auto x = proj.solve(j, z);
        require(x.has_value(), ErrorCode::LiftFailed, "connecting map: cycle does not lift");
        lifts.push_back(std::move(*x));
    }
    // One product against the sparse differential instead of a dense apply per cycle.
    const Matrix ys = d * Matrix::from_columns(lifts, d.cols(), d.modulus());
    std::vector<Vector> out;
    for (std::size_t c = 0; c < zs.size(); ++c) {
        auto w = incl.solve(mid.next(j), ys.column(c));
        require(w.has_value(), ErrorCode::InternalMismatch, "connecting map: boundary is not in the subcomplex");
        out.push_back(std::move(*w));
    }
    return out;
}

Vector connecting_cycle(const InducedMap& incl, const InducedMap& proj, long j, const Vector& z) {
    return connecting_cycles(incl, proj, j, {z}).front();
}

Matrix connecting_map(const InducedMap& incl, const InducedMap& proj, long j) {
    const auto& hs = proj.target().homology(j);
    std::vector<Vector> reps;
    for (std::size_t c = 0; c < hs.dim(); ++c) reps.push_back(hs.h.rep(c));
    return classes_matrix(incl.source().homology(proj.source().next(j)), connecting_cycles(incl, proj, j, reps),
                          hs.dim());
}

}  // namespace homct
