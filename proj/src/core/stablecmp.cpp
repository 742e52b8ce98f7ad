#include "stablecmp.hpp"

#include "error.hpp"

namespace homct {

namespace {

Scalar sign_of(long e, Scalar p) { return (e % 2 == 0) ? 1 : p - 1; }

long row_of(long degree, std::size_t n) { return degree + static_cast<long>(n); }

}  // namespace

const char* copure_reason_name(CopureReason r) {
    switch (r) {
        case CopureReason::SelfInjective: return "self-injective";
        case CopureReason::Projective: return "projective";
        case CopureReason::FiniteLength: return "finite-length";
        case CopureReason::Periodic: return "periodic";
    }
    return "?";
}

std::optional<CopureCertificate> copure_vanishing_certificate(const FdModule& m, std::size_t depth) {
    require(m.side() == Side::Right, ErrorCode::InvalidArgument, "copure certificate: m must be a right module");
    const AlgebraPtr& a = m.algebra();
    auto res = resolution_of(m);
    if (res->length(1).has_value()) return CopureCertificate{1, CopureReason::Projective, depth};
    if (is_self_injective(a).self_injective) return CopureCertificate{1, CopureReason::SelfInjective, depth};

    // Tor_i(m, E_s) for the indecomposable injectives E_s.
    std::vector<FdModule> envelopes;
    for (std::size_t s = 0; s < a->basic().idempotents.size(); ++s)
        envelopes.push_back(injective_envelope(simple_module(a, s, Side::Left)).envelope);
    std::vector<bool> vanish(depth + 1, true);
    for (std::size_t i = 0; i <= depth; ++i)
        for (const auto& e : envelopes)
            if (tor(m, e, static_cast<long>(i)).dim() != 0) vanish[i] = false;
    std::optional<std::size_t> bound;
    for (std::size_t n = 0; n <= depth; ++n) {
        bool all = true;
        for (std::size_t i = n; i <= depth; ++i) all = all && vanish[i];
        if (all) {
            bound = n;
            break;
        }
    }
    if (!bound) return std::nullopt;
    const std::size_t n = std::max<std::size_t>(*bound, 1);
    if (auto len = res->length(depth)) {
        // Tor_i vanishes beyond the length; the computed range covers the rest.
        if (*len <= depth) return CopureCertificate{n, CopureReason::FiniteLength, depth};
    }
    if (auto per = detect_periodicity(*res, depth)) {
        // Tor_i(m, E) = Tor_{i+s}(m, E) for i > q, so one full period past both bounds suffices.
        if (std::max(per->offset + 1, n) + per->period <= depth)
            return CopureCertificate{n, CopureReason::Periodic, depth};
    }
    return std::nullopt;
}

HomologySpace stable_homology_via_vanishing(const FdModule& m, const FdModule& n, long i,
                                            const std::optional<CopureCertificate>& cert) {
    require(cert.has_value(), ErrorCode::NoCertificate, "no certificate");
    const long b = static_cast<long>(cert->bound);
    const std::size_t k = static_cast<std::size_t>(std::max(0L, b - i));
    auto chain = chain_of(resolution_of(m));
    auto inj = injective_resolution_of(n);
    auto at = [&](std::size_t s) {
        return make_complex(chain, inj->cosyzygy(s), ComplexKind::Tensor)->homology(i + static_cast<long>(s));
    };
    HomologySpace h = at(k);
    require(at(k + 1).dim() == h.dim(), ErrorCode::InternalMismatch,
            "stable homology via vanishing depends on the shift");
    return h;
}

StabilizationReport stable_homology_via_duality(const FdModule& m, const FdModule& n, long i, std::size_t depth,
                                                std::size_t w) {
    require(m.side() == Side::Right && n.side() == Side::Left, ErrorCode::InvalidArgument,
            "stable homology: m must be a right module and n a left module");
    auto rep = pcomp_ext(m, dual(n), i, first_stage(i) + depth, w);
    rep.note = "dual of the Ext cotower of (m, D n) over the opposite algebra";
    return rep;
}

bool WindowElement::is_zero() const {
    for (const auto& [n, v] : cols)
        if (!la::is_zero(v)) return false;
    return true;
}

std::optional<std::size_t> WindowElement::top() const {
    for (auto it = cols.rbegin(); it != cols.rend(); ++it)
        if (!la::is_zero(it->second)) return it->first;
    return std::nullopt;
}

std::optional<std::size_t> WindowElement::bottom() const {
    for (const auto& [n, v] : cols)
        if (!la::is_zero(v)) return n;
    return std::nullopt;
}

WindowElement WindowElement::restricted(std::size_t lo, std::size_t hi) const {
    WindowElement out{degree, {}};
    for (const auto& [n, v] : cols)
        if (n >= lo && n <= hi && !la::is_zero(v)) out.cols.emplace(n, v);
    return out;
}

DoubleWindow::DoubleWindow(const FdModule& m, const FdModule& n, std::size_t rows, std::size_t columns)
    : rows_(rows), columns_(columns), chain_(chain_of(resolution_of(m))), inj_(injective_resolution_of(n)) {
    require(m.side() == Side::Right && n.side() == Side::Left, ErrorCode::InvalidArgument,
            "double window: m must be a right module and n a left module");
    for (std::size_t c = 0; c <= columns_ + 1; ++c) {
        cols_.push_back(make_complex(chain_, inj_->injective(c), ComplexKind::Tensor));
        omega_.push_back(make_complex(chain_, inj_->cosyzygy(c), ComplexKind::Tensor));
        emb_.push_back(std::make_shared<InducedMap>(omega_[c], cols_[c], inj_->embedding(c)));
    }
    for (std::size_t c = 0; c <= columns_; ++c) {
        hor_.push_back(std::make_shared<InducedMap>(cols_[c], cols_[c + 1], inj_->differential(c)));
        proj_.push_back(std::make_shared<InducedMap>(cols_[c], omega_[c + 1], inj_->projection(c)));
    }
}

void DoubleWindow::require_cell(long m, std::size_t n) const {
    require(m <= static_cast<long>(rows_) && n <= columns_ + 1, ErrorCode::WindowExhausted, "window exhausted");
}

std::size_t DoubleWindow::dim(std::size_t m, std::size_t n) const { return cols_[n]->dim(static_cast<long>(m)); }

Vector DoubleWindow::vertical(std::size_t m, std::size_t n, const Vector& v) const {
    return cols_[n]->out(static_cast<long>(m)).apply(v);
}

Vector DoubleWindow::horizontal(std::size_t m, std::size_t n, const Vector& v) const {
    require(n <= columns_, ErrorCode::WindowExhausted, "window exhausted");
    return la::scale(hor_[n]->apply(static_cast<long>(m), v), sign_of(static_cast<long>(m), p()), p());
}

std::optional<Vector> DoubleWindow::horizontal_preimage(std::size_t m, std::size_t n, const Vector& v) const {
    require(n >= 1 && n - 1 <= columns_, ErrorCode::WindowExhausted, "window exhausted");
    return hor_[n - 1]->solve(static_cast<long>(m), la::scale(v, sign_of(static_cast<long>(m), p()), p()));
}

WindowElement DoubleWindow::add(const WindowElement& a, const WindowElement& b, Scalar scale) const {
    require(a.degree == b.degree, ErrorCode::InvalidArgument, "window elements of different degrees");
    WindowElement out{a.degree, {}};
    auto put = [&](std::size_t n, const Vector& v, Scalar s) {
        auto it = out.cols.find(n);
        if (it == out.cols.end()) it = out.cols.emplace(n, la::zero_vector(v.size())).first;
        la::axpy(it->second, s, v, p());
    };
    for (const auto& [n, v] : a.cols) put(n, v, 1);
    for (const auto& [n, v] : b.cols) put(n, v, scale % p());
    for (auto it = out.cols.begin(); it != out.cols.end();) it = la::is_zero(it->second) ? out.cols.erase(it) : ++it;
    return out;
}

WindowElement DoubleWindow::boundary(const WindowElement& v) const {
    WindowElement out{v.degree - 1, {}};
    for (const auto& [n, x] : v.cols) {
        if (la::is_zero(x)) continue;
        const long m = row_of(v.degree, n);
        require(m >= 0, ErrorCode::InvalidArgument, "window element below row 0");
        require_cell(m, n);
        require(x.size() == dim(static_cast<std::size_t>(m), n), ErrorCode::DimensionMismatch,
                "window element component has the wrong size");
        const std::size_t mm = static_cast<std::size_t>(m);
        WindowElement part{v.degree - 1, {}};
        if (m >= 1) part.cols.emplace(n, vertical(mm, n, x));
        part.cols.emplace(n + 1, horizontal(mm, n, x));
        out = add(out, part);
    }
    return out;
}

DoubleWindow::Checks DoubleWindow::check() const {
    Checks c;
    auto hmat = [&](std::size_t m, std::size_t n) {
        return hor_[n]->matrix(static_cast<long>(m)).scaled(sign_of(static_cast<long>(m), p()));
    };
    auto vmat = [&](std::size_t m, std::size_t n) { return cols_[n]->out(static_cast<long>(m)); };
    for (std::size_t m = 0; m <= rows_; ++m)
        for (std::size_t n = 0; n <= columns_; ++n) {
            Matrix h = hmat(m, n);
            if (n + 1 <= columns_ && !(hmat(m, n + 1) * h).is_zero()) c.horizontal_square_zero = false;
            if (m >= 2 && !(vmat(m - 1, n) * vmat(m, n)).is_zero()) c.vertical_square_zero = false;
            if (m >= 1 && !(vmat(m, n + 1) * h + hmat(m - 1, n) * vmat(m, n)).is_zero()) c.anticommute = false;
            if (n >= 1 && la::rank(h) + la::rank(hmat(m, n - 1)) != dim(m, n)) c.rows_exact = false;
        }
    return c;
}

Vector DoubleWindow::column_class(const WindowElement& w, std::size_t e) const {
    const long deg = row_of(w.degree, e);
    const auto& hs = omega_[e]->homology(deg);
    for (const auto& [n, v] : w.cols)
        require(n == e || la::is_zero(v), ErrorCode::InvalidArgument, "column_class: element is not single-column");
    if (deg < 0) return {};
    auto it = w.cols.find(e);
    Vector x = it == w.cols.end() ? la::zero_vector(dim(static_cast<std::size_t>(deg), e)) : it->second;
    auto z = emb_[e]->solve(deg, x);
    require(z.has_value(), ErrorCode::InvalidArgument, "column_class: not in the image of the cosyzygy");
    require(hs.h.top().contains(*z), ErrorCode::InvalidArgument, "column_class: not a cycle");
    return hs.h.coords(*z);
}

WindowElement DoubleWindow::from_syzygy(long degree, std::size_t e, const Vector& z, Scalar sign) const {
    WindowElement w{degree, {}};
    const long deg = row_of(degree, e);
    if (deg < 0) return w;
    Vector x = la::scale(emb_[e]->apply(deg, z), sign, p());
    if (!la::is_zero(x)) w.cols.emplace(e, std::move(x));
    return w;
}

DoubleWindow build_double_window(const FdModule& m, const FdModule& n, std::size_t rows, std::size_t columns) {
    DoubleWindow dw(m, n, rows, columns);
    auto c = dw.check();
    require(c.horizontal_square_zero, ErrorCode::InternalMismatch, "double window: horizontal maps do not square to zero");
    require(c.vertical_square_zero, ErrorCode::InternalMismatch, "double window: vertical maps do not square to zero");
    require(c.anticommute, ErrorCode::InternalMismatch, "double window: squares do not anti-commute");
    require(c.rows_exact, ErrorCode::InternalMismatch, "double window: rows are not exact");
    return dw;
}

Compression compress_cycle(const DoubleWindow& dw, const WindowElement& v, std::size_t e, std::size_t k) {
    require(e >= k, ErrorCode::InvalidArgument, "compress_cycle: target column below the truncation");
    require(row_of(v.degree, e) >= 0, ErrorCode::InvalidArgument, "compress_cycle: target column below row 0");
    if (auto lo = v.bottom()) require(*lo >= k, ErrorCode::InvalidArgument, "compress_cycle: element outside the truncation");
    const Scalar p = dw.p();
    Compression out{dw.zero(v.degree + 1), v.restricted(0, static_cast<std::size_t>(-1))};
    while (auto t = out.result.top()) {
        const std::size_t j = *t;
        if (j <= e) break;
        const Vector& x = out.result.cols.at(j);
        const long m = row_of(v.degree, j);
        require(j <= dw.max_column() && m <= static_cast<long>(dw.max_row()), ErrorCode::WindowExhausted,
                "window exhausted");
        const std::size_t mm = static_cast<std::size_t>(m);
        require(la::is_zero(dw.horizontal(mm, j, x)), ErrorCode::InvalidArgument,
                "compress_cycle: the last component is not a row cycle");
        auto pre = dw.horizontal_preimage(mm, j, x);
        require(pre.has_value(), ErrorCode::InternalMismatch, "compress_cycle: row is not exact");
        WindowElement step{v.degree + 1, {{j - 1, *pre}}};
        out.u = dw.add(out.u, step);
        out.result = dw.add(out.result, dw.boundary(step), p - 1);
    }
    WindowElement diff = dw.add(v, out.result, p - 1);
    require(diff.cols == dw.boundary(out.u).cols, ErrorCode::InternalMismatch, "compress_cycle: v - v' != ∂u");
    return out;
}

std::optional<Vector> lift_to_top(const CosyzygySystem& sys, std::size_t level, const Vector& y) {
    const std::size_t K = sys.depth();
    require(level <= K, ErrorCode::InvalidArgument, "lift_to_top: level beyond the depth");
    Matrix comp = Matrix::identity(sys.space(K).dim(), sys.chain()->ring()->p());
    for (std::size_t k = K; k > level; --k) comp = sys.delta(k) * comp;
    return la::solve(comp, y);
}

CompatibleFamily family_from_tower(const DoubleWindow& dw, const CosyzygySystem& sys, const Vector& x_top) {
    require(sys.chain() == dw.chain(), ErrorCode::InvalidArgument, "family: system and window on different chains");
    const long i = sys.degree();
    const std::size_t K = sys.depth(), d = first_stage(i);
    require(K > d, ErrorCode::InvalidArgument, "family: depth must exceed the first stage");
    require(K <= dw.max_column() && row_of(i, K) <= static_cast<long>(dw.max_row()), ErrorCode::WindowExhausted,
            "window exhausted");
    const Scalar p = dw.p();
    std::vector<Vector> x(K + 1), z(K + 1);
    x[K] = x_top;
    for (std::size_t k = K; k > d; --k) x[k - 1] = sys.delta(k).apply(x[k]);
    for (std::size_t k = d; k <= K; ++k) z[k] = dw.syzygy_column(k)->homology(row_of(i, k)).h.element(x[k]);
    std::vector<Scalar> sigma(K + 1, 1);
    for (std::size_t k = d; k < K; ++k) sigma[k + 1] = static_cast<Scalar>(sigma[k] * sign_of(row_of(i, k), p) % p);

    CompatibleFamily fam;
    fam.degree = i;
    fam.start = d;
    for (std::size_t k = d; k <= K; ++k) {
        fam.members.push_back(dw.from_syzygy(i, k, z[k], sigma[k]));
        fam.classes.push_back(la::scale(x[k], sigma[k], p));
    }
    for (std::size_t k = d; k < K; ++k) {
        const long row = row_of(i, k) + 1;
        auto lift = dw.projection(k).solve(row, z[k + 1]);
        require(lift.has_value(), ErrorCode::LiftFailed, "family: cycle does not lift through the cosyzygy");
        Vector below = dw.column(k)->out(row).apply(*lift);
        auto zk = dw.embedding(k).solve(row - 1, below);
        require(zk.has_value(), ErrorCode::InternalMismatch, "family: boundary leaves the cosyzygy");
        // z'_k - z_k is a boundary b in P ⊗ Ω^k N.
        auto b = la::solve(dw.syzygy_column(k)->out(row), la::sub(*zk, z[k], p));
        require(b.has_value(), ErrorCode::InternalMismatch, "family: stages are not compatible");
        Vector v = la::scale(la::sub(*lift, dw.embedding(k).apply(row, *b), p), sigma[k], p);
        WindowElement wit{i + 1, {}};
        if (!la::is_zero(v)) wit.cols.emplace(k, std::move(v));
        WindowElement expect = dw.add(fam.members[k - d], fam.members[k + 1 - d], p - 1);
        require(dw.boundary(wit).cols == expect.cols, ErrorCode::InternalMismatch, "family: witness equation fails");
        fam.witnesses.push_back(std::move(wit));
    }
    return fam;
}

Vector map_tau(const DoubleWindow& dw, const CompatibleFamily& fam) {
    if (fam.degree < 0) return {};
    require(fam.start == 0 && !fam.members.empty(), ErrorCode::InvalidArgument, "map_tau: family must start at 0");
    return dw.column_class(fam.members[0], 0);
}

namespace {

// ∂z on columns <= extent, where z is known through column `extent`.
WindowElement known_boundary(const DoubleWindow& dw, const WindowElement& z, std::size_t extent) {
    WindowElement b = dw.boundary(z.restricted(0, extent)).restricted(0, extent);
    auto t = b.cols.find(extent);
    require(t == b.cols.end() || la::is_zero(t->second), ErrorCode::NotStableCycle,
            "not a stable cycle in window: the boundary reaches the edge");
    require(dw.boundary(b).is_zero(), ErrorCode::NotStableCycle, "not a stable cycle in window");
    return b;
}

std::size_t extent_of(const WindowElement& z, std::optional<std::size_t> extent) {
    if (extent) return *extent;
    return z.top().value_or(0);
}

}  // namespace

Vector map_eth(const DoubleWindow& dw, const WindowElement& z, std::optional<std::size_t> extent) {
    const long i = z.degree - 1;
    const std::size_t ext = extent_of(z, extent);
    WindowElement b = known_boundary(dw, z, ext);
    if (i < 0) return {};
    auto c = compress_cycle(dw, b, 0, 0);
    return dw.column_class(c.result, 0);
}

CompatibleFamily map_sigma(const DoubleWindow& dw, const WindowElement& z, std::optional<std::size_t> extent) {
    const long i = z.degree - 1;
    const std::size_t ext = extent_of(z, extent), d = first_stage(i);
    const Scalar p = dw.p();
    WindowElement b = known_boundary(dw, z, ext);
    CompatibleFamily fam;
    fam.degree = i;
    fam.start = d;
    std::vector<WindowElement> raw;
    std::vector<WindowElement> us;
    for (std::size_t k = d; k <= std::max(ext, d); ++k) {
        // ∂(z^{≥k}) = (∂z)^{≥k} - ∂^h z^{k-1}.
        WindowElement member = b.restricted(k, ext);
        if (k >= 1) {
            auto prev = z.cols.find(k - 1);
            if (prev != z.cols.end() && !la::is_zero(prev->second)) {
                WindowElement tail = dw.boundary(WindowElement{z.degree, {{k - 1, prev->second}}}).restricted(k, k);
                member = dw.add(member, tail, p - 1);
            }
        }
        require(dw.boundary(member).is_zero(), ErrorCode::InternalMismatch, "map_sigma: member is not a cycle");
        auto c = compress_cycle(dw, member, k, k);
        fam.members.push_back(c.result);
        fam.classes.push_back(dw.column_class(c.result, k));
        raw.push_back(std::move(member));
        us.push_back(std::move(c.u));
    }
    // Witnesses z^k - u_k + u_{k+1} for the compressed members.
    for (std::size_t r = 0; r + 1 < fam.members.size(); ++r) {
        const std::size_t k = d + r;
        WindowElement wit{z.degree, {}};
        auto zk = z.cols.find(k);
        if (zk != z.cols.end()) wit.cols.emplace(k, zk->second);
        wit = dw.add(dw.add(wit, us[r], p - 1), us[r + 1]);
        WindowElement expect = dw.add(fam.members[r], fam.members[r + 1], p - 1);
        require(dw.boundary(wit).cols == expect.cols, ErrorCode::InternalMismatch, "map_sigma: witness equation fails");
        fam.witnesses.push_back(std::move(wit));
    }
    // τς = ð at the chain level.
    if (i >= 0) {
        WindowElement diff = dw.add(raw[0], b, p - 1);
        require(diff.is_zero(), ErrorCode::InternalMismatch, "map_sigma: τς differs from ð");
        require(map_tau(dw, fam) == map_eth(dw, z, ext), ErrorCode::InternalMismatch, "map_sigma: τς differs from ð");
    }
    return fam;
}

WindowElement sigma_preimage(const DoubleWindow& dw, const CompatibleFamily& fam) {
    require(fam.witnesses.size() + 1 == fam.members.size(), ErrorCode::InvalidArgument,
            "sigma_preimage: a witness is needed between consecutive members");
    const Scalar p = dw.p();
    WindowElement z{fam.degree + 1, {}};
    for (std::size_t r = 0; r < fam.witnesses.size(); ++r) {
        const std::size_t k = fam.start + r;
        // Claim (a): move the witness to the single column k.
        auto c = compress_cycle(dw, fam.witnesses[r], k, k);
        const WindowElement& v = c.result;
        for (const auto& [n, x] : v.cols)
            require(n == k, ErrorCode::InternalMismatch, "sigma_preimage: witness does not compress to its column");
        WindowElement expect = dw.add(fam.members[r], fam.members[r + 1], p - 1);
        require(dw.boundary(v).cols == expect.cols, ErrorCode::InternalMismatch,
                "sigma_preimage: witness equation fails");
        z = dw.add(z, v);
    }
    if (fam.witnesses.size() < 2) return z;
    const std::size_t ext = fam.start + fam.witnesses.size() - 1;
    auto back = map_sigma(dw, z, ext);
    for (std::size_t r = 0; r < back.classes.size() && r < fam.classes.size(); ++r)
        require(back.classes[r] == fam.classes[r], ErrorCode::InternalMismatch, "sigma_preimage: round trip fails");
    return z;
}

InjectivityEvidence injectivity_probe(const DoubleWindow& dw, const CosyzygySystem& sys,
                                      const StabilizationReport& limit) {
    require(limit.verdict == Verdict::Stabilized, ErrorCode::Inconclusive, "injectivity probe: no stabilized limit");
    InjectivityEvidence ev;
    ev.limit_dim = limit.limit_dim;
    std::vector<Vector> images;
    for (std::size_t c = 0; c < limit.limit_basis.cols(); ++c) {
        auto x = lift_to_top(sys, limit.stable_from, limit.limit_basis.column(c));
        require(x.has_value(), ErrorCode::InternalMismatch, "injectivity probe: limit element does not lift");
        auto fam = family_from_tower(dw, sys, *x);
        auto z = sigma_preimage(dw, fam);
        images.push_back(map_eth(dw, z, fam.start + fam.witnesses.size() - 1));
    }
    if (!images.empty() && !images[0].empty())
        ev.eth_rank = la::rank(Matrix::from_columns(images, images[0].size(), dw.p()));
    return ev;
}

}  // namespace homct
