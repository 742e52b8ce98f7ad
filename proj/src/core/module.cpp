#include "module.hpp"

#include <random>

#include "error.hpp"
#include "hash.hpp"

namespace homct {

using la::axpy;

FdModule::FdModule(AlgebraPtr algebra, Side side, std::vector<Matrix> action, bool trusted) {
    require(algebra != nullptr, ErrorCode::InvalidArgument, "module without algebra");
    require(action.size() == algebra->dim(), ErrorCode::Validation,
            "module has " + std::to_string(action.size()) + " action matrices, algebra has dimension " +
                std::to_string(algebra->dim()));
    const std::size_t d = action.empty() ? 0 : action.front().rows();
    for (const auto& m : action)
        require(m.rows() == d && m.cols() == d && m.modulus() == algebra->p(), ErrorCode::Validation,
                "action matrices must be square, of equal size and over the algebra's field");
    if (!trusted)
        if (auto err = validate_module(algebra, side, action)) fail(ErrorCode::Validation, *err);
    auto data = std::make_shared<Data>();
    data->algebra = std::move(algebra);
    data->side = side;
    data->dim = d;
    data->action = std::move(action);
    d_ = std::move(data);
}

FdModule FdModule::zero(AlgebraPtr algebra, Side side) {
    const std::size_t n = algebra->dim();
    const Scalar p = algebra->p();
    return FdModule(std::move(algebra), side, std::vector<Matrix>(n, Matrix(0, 0, p)), true);
}

AlgebraPtr FdModule::ring() const { return side() == Side::Left ? algebra() : algebra()->opposite(); }

Matrix FdModule::act(const Vector& a) const {
    Matrix out(dim(), dim(), p());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]) out = out + d_->action[i].scaled(a[i]);
    return out;
}

FdModule FdModule::left_view() const {
    if (side() == Side::Left) return *this;
    return FdModule(ring(), Side::Left, d_->action, true);
}

FdModule FdModule::from_left_view(const FdModule& left, const AlgebraPtr& algebra, Side side) {
    require(left.side() == Side::Left, ErrorCode::InvalidArgument, "from_left_view expects a left module");
    if (side == Side::Left) {
        require(left.algebra()->same_as(*algebra), ErrorCode::InvalidArgument, "algebra mismatch");
    } else {
        require(left.algebra()->is_opposite_of(*algebra), ErrorCode::InvalidArgument,
                "right module must come from a left module over the opposite algebra");
    }
    return FdModule(algebra, side, left.actions(), true);
}

const std::string& FdModule::key() const {
    std::call_once(d_->key_once, [this] {
        std::string buf = d_->algebra->key();
        buf.push_back(d_->side == Side::Left ? 'L' : 'R');
        auto put = [&buf](std::uint32_t v) { buf.append(reinterpret_cast<const char*>(&v), sizeof v); };
        put(static_cast<std::uint32_t>(d_->dim));
        for (const auto& m : d_->action)
            for (Scalar x : m.data()) put(x);
        d_->key = sha256_raw(buf);
    });
    return d_->key;
}

std::optional<std::string> validate_module(const AlgebraPtr& algebra, Side side, const std::vector<Matrix>& action) {
    const std::size_t n = algebra->dim();
    const Scalar p = algebra->p();
    if (action.size() != n) return "wrong number of action matrices";
    const std::size_t d = n ? action[0].rows() : 0;
    Matrix unit(d, d, p);
    for (std::size_t i = 0; i < n; ++i)
        if (algebra->unit()[i]) unit = unit + action[i].scaled(algebra->unit()[i]);
    if (!unit.is_identity()) return "action of the unit is not the identity (rho(unit) != id)";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Left: rho_i rho_j = rho(e_i e_j). Right: rho_i rho_j = rho(e_j e_i).
            const Vector& c = side == Side::Left ? algebra->product(i, j) : algebra->product(j, i);
            Matrix rhs(d, d, p);
            for (std::size_t k = 0; k < n; ++k)
                if (c[k]) rhs = rhs + action[k].scaled(c[k]);
            if (!(action[i] * action[j] == rhs))
                return "action does not respect the product of basis elements " + std::to_string(i) + " and " +
                       std::to_string(j);
        }
    return std::nullopt;
}

ModuleMap ModuleMap::make(FdModule source, FdModule target, Matrix matrix) {
    require(source.same_ring_and_side(target), ErrorCode::InvalidArgument, "module map between different rings or sides");
    require(matrix.rows() == target.dim() && matrix.cols() == source.dim(), ErrorCode::DimensionMismatch,
            "module map has wrong shape");
    ModuleMap f{std::move(source), std::move(target), std::move(matrix)};
    require(f.commutes(), ErrorCode::Validation, "linear map does not commute with the action");
    return f;
}

ModuleMap ModuleMap::identity(const FdModule& m) { return {m, m, Matrix::identity(m.dim(), m.p())}; }

bool ModuleMap::commutes() const {
    for (std::size_t i = 0; i < source.actions().size(); ++i)
        if (!(target.action(i) * matrix == matrix * source.action(i))) return false;
    return true;
}

ModuleMap ModuleMap::compose_after(const ModuleMap& first) const {
    return {first.source, target, matrix * first.matrix};
}

FdModule regular_module(const AlgebraPtr& a, Side side) {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i)
        act.push_back(side == Side::Left ? a->left_mult(a->basis_vector(i)) : a->right_mult(a->basis_vector(i)));
    return FdModule(a, side, std::move(act), true);
}

FdModule simple_module(const AlgebraPtr& a, std::size_t s, Side side) {
    AlgebraPtr r = side == Side::Left ? a : a->opposite();
    const auto& bs = r->basic();
    require(s < bs.num_simples(), ErrorCode::InvalidArgument, "simple index out of range");
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        Matrix m(1, 1, a->p());
        m(0, 0) = bs.characters[s][i];
        act.push_back(std::move(m));
    }
    return FdModule(a, side, std::move(act), true);
}

FdModule indecomposable_projective(const AlgebraPtr& a, std::size_t s, Side side) {
    AlgebraPtr r = side == Side::Left ? a : a->opposite();
    const auto& bs = r->basic();
    require(s < bs.num_simples(), ErrorCode::InvalidArgument, "projective index out of range");
    return FdModule(a, side, bs.projectives[s].action, true);
}

FdModule direct_sum(const std::vector<FdModule>& parts) {
    require(!parts.empty(), ErrorCode::InvalidArgument, "direct sum of nothing");
    std::size_t d = 0;
    for (const auto& m : parts) {
        require(m.same_ring_and_side(parts.front()), ErrorCode::InvalidArgument, "direct sum across rings");
        d += m.dim();
    }
    const auto& a = parts.front().algebra();
    std::vector<Matrix> act(a->dim(), Matrix(d, d, a->p()));
    std::size_t off = 0;
    for (const auto& m : parts) {
        for (std::size_t i = 0; i < a->dim(); ++i) act[i].set_block(off, off, m.action(i));
        off += m.dim();
    }
    return FdModule(a, parts.front().side(), std::move(act), true);
}

FdModule direct_sum(const FdModule& a, const FdModule& b) { return direct_sum(std::vector<FdModule>{a, b}); }

FdModule power(const FdModule& m, std::size_t copies) {
    if (copies == 0) return FdModule::zero(m.algebra(), m.side());
    return direct_sum(std::vector<FdModule>(copies, m));
}

FdModule dual(const FdModule& m) {
    std::vector<Matrix> act;
    for (const auto& x : m.actions()) act.push_back(x.transpose());
    return FdModule(m.algebra(), flip(m.side()), std::move(act), true);
}

ModuleMap dual(const ModuleMap& f) { return {dual(f.target), dual(f.source), f.matrix.transpose()}; }

TensorResult tensor_over_algebra(const FdModule& m, const FdModule& n) {
    require(m.side() == Side::Right && n.side() == Side::Left, ErrorCode::InvalidArgument,
            "tensor product needs a right module and a left module");
    require(m.algebra()->same_as(*n.algebra()), ErrorCode::InvalidArgument, "tensor product across algebras");
    const Scalar p = m.p();
    const std::size_t dm = m.dim(), dn = n.dim();
    const Matrix im = Matrix::identity(dm, p), in = Matrix::identity(dn, p);
    Matrix rel(0, dm * dn, p);
    for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
        Matrix r = la::kron(m.action(i), in) - la::kron(im, n.action(i));
        rel = Matrix::vstack(rel, r.transpose());
    }
    Subspace relations = Subspace::span_rows(rel);
    TensorResult out;
    out.projection = relations.quotient_map();
    out.dim = out.projection.rows();
    return out;
}

Vector vec(const Matrix& m) { return Vector(m.data().begin(), m.data().end()); }

Matrix unvec(const Vector& v, std::size_t rows, std::size_t cols, Scalar p) {
    require(v.size() == rows * cols, ErrorCode::DimensionMismatch, "unvec: length mismatch");
    Matrix out(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = v[r * cols + c];
    return out;
}

Subspace hom_over_algebra(const FdModule& m, const FdModule& n) {
    require(m.same_ring_and_side(n), ErrorCode::InvalidArgument, "Hom between different rings or sides");
    const Scalar p = m.p();
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return Subspace::zero(dm * dn, p);
    const auto& gens = m.ring()->basic().generators;
    const Matrix im = Matrix::identity(dm, p), in = Matrix::identity(dn, p);
    Matrix eq(0, dm * dn, p);
    for (const auto& g : gens) {
        // vec(rho_n X - X rho_m) for row-major vec.
        Matrix e = la::kron(n.act(g), im) - la::kron(in, m.act(g).transpose());
        eq = Matrix::vstack(eq, e);
    }
    return la::kernel_basis(eq);
}

std::vector<Matrix> hom_from_projective(const AlgebraPtr& ring, std::size_t s, const FdModule& n_left) {
    const auto& bs = ring->basic();
    const auto& pd = bs.projectives[s];
    Subspace es_n = la::image_basis(n_left.act(bs.idempotents[s]));
    std::vector<Matrix> rho_b;
    for (std::size_t j = 0; j < pd.span.dim(); ++j) rho_b.push_back(n_left.act(pd.span.basis_vector(j)));
    std::vector<Matrix> out;
    for (std::size_t t = 0; t < es_n.dim(); ++t) {
        const Vector y = es_n.basis_vector(t);
        Matrix x(n_left.dim(), pd.span.dim(), n_left.p());
        for (std::size_t j = 0; j < rho_b.size(); ++j) {
            Vector col = rho_b[j].apply(y);
            for (std::size_t r = 0; r < col.size(); ++r) x(r, j) = col[r];
        }
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

Subspace projective_maps(const FdModule& m, const FdModule& n) {
    const Scalar p = m.p();
    const FdModule ml = m.left_view(), nl = n.left_view();
    const AlgebraPtr r = ml.algebra();
    std::vector<Vector> vs;
    for (std::size_t s = 0; s < r->basic().num_simples(); ++s) {
        const FdModule ps = indecomposable_projective(r, s, Side::Left);
        Subspace h = hom_over_algebra(ml, ps);
        auto g = hom_from_projective(r, s, nl);
        for (std::size_t a = 0; a < h.dim(); ++a) {
            Matrix hm = unvec(h.basis_vector(a), ps.dim(), ml.dim(), p);
            for (const auto& gm : g) vs.push_back(vec(gm * hm));
        }
    }
    return Subspace::span_vectors(vs, m.dim() * n.dim(), p);
}

}  // namespace

StableHom stable_hom(const FdModule& m, const FdModule& n) {
    StableHom out;
    out.hom = hom_over_algebra(m, n);
    out.projective = projective_maps(m, n);
    out.quotient = la::Subquotient(out.hom, out.projective);
    return out;
}

bool factors_through_projective(const FdModule& m, const FdModule& n, const Matrix& f) {
    return projective_maps(m, n).contains(vec(f));
}

Subspace radical_submodule(const FdModule& m) {
    const Scalar p = m.p();
    const auto& j = m.ring()->basic().radical;
    std::vector<Vector> vs;
    for (std::size_t r = 0; r < j.dim(); ++r) {
        Matrix a = m.act(j.basis_vector(r));
        for (std::size_t c = 0; c < m.dim(); ++c) vs.push_back(a.column(c));
    }
    return Subspace::span_vectors(vs, m.dim(), p);
}

Subspace socle(const FdModule& m) {
    const auto& j = m.ring()->basic().radical;
    Matrix stacked(0, m.dim(), m.p());
    for (std::size_t r = 0; r < j.dim(); ++r) stacked = Matrix::vstack(stacked, m.act(j.basis_vector(r)));
    return la::kernel_basis(stacked);
}

std::pair<FdModule, ModuleMap> top(const FdModule& m) { return quotient(m, radical_submodule(m)); }

Subspace action_closure(const FdModule& m, const Subspace& s) {
    const auto& gens = m.ring()->basic().generators;
    std::vector<Matrix> rho;
    for (const auto& g : gens) rho.push_back(m.act(g));
    Subspace cur = s;
    for (;;) {
        std::vector<Vector> vs;
        for (std::size_t r = 0; r < cur.dim(); ++r) {
            vs.push_back(cur.basis_vector(r));
            for (const auto& a : rho) vs.push_back(a.apply(cur.basis().row(r)));
        }
        Subspace next = Subspace::span_vectors(vs, m.dim(), m.p());
        if (next.dim() == cur.dim()) return cur;
        cur = std::move(next);
    }
}

namespace {

// Images of the basis of s under each action, one column per basis vector.
std::vector<Matrix> action_images(const FdModule& m, const Subspace& s) {
    const Matrix cols = s.basis_columns();
    std::vector<Matrix> out;
    for (const auto& a : m.actions()) out.push_back(a * cols);
    return out;
}

bool images_in(const std::vector<Matrix>& imgs, const Subspace& s) {
    for (const auto& x : imgs)
        for (std::size_t c = 0; c < x.cols(); ++c)
            if (!s.contains(x.column(c))) return false;
    return true;
}

}  // namespace

bool is_action_stable(const FdModule& m, const Subspace& s) { return images_in(action_images(m, s), s); }

std::pair<FdModule, ModuleMap> submodule_on(const FdModule& m, const Subspace& s) {
    const auto imgs = action_images(m, s);
    require(images_in(imgs, s), ErrorCode::NotActionStable, "subspace is not action-stable");
    const std::size_t d = s.dim();
    std::vector<Matrix> act;
    for (const auto& img : imgs) {
        Matrix x(d, d, m.p());
        for (std::size_t c = 0; c < d; ++c) {
            Vector col = s.coords(img.column(c));
            for (std::size_t r = 0; r < d; ++r) x(r, c) = col[r];
        }
        act.push_back(std::move(x));
    }
    FdModule sub(m.algebra(), m.side(), std::move(act), true);
    ModuleMap inc{sub, m, s.basis_columns()};
    return {sub, inc};
}

std::pair<FdModule, ModuleMap> submodule(const FdModule& m, const std::vector<Vector>& generators) {
    return submodule_on(m, action_closure(m, Subspace::span_vectors(generators, m.dim(), m.p())));
}

std::pair<FdModule, ModuleMap> quotient(const FdModule& m, const Subspace& sub) {
    require(sub.ambient_dim() == m.dim(), ErrorCode::DimensionMismatch, "quotient: subspace size mismatch");
    require(is_action_stable(m, sub), ErrorCode::NotActionStable, "not action-stable: cannot form quotient");
    std::vector<Matrix> act;
    for (const auto& a : m.actions()) act.push_back(la::quotient_and_induced(a, sub, sub));
    FdModule q(m.algebra(), m.side(), std::move(act), true);
    ModuleMap proj{m, q, sub.quotient_map()};
    return {q, proj};
}

IsoResult is_isomorphic(const FdModule& m, const FdModule& n, std::uint64_t seed, std::size_t attempts) {
    require(m.same_ring_and_side(n), ErrorCode::InvalidArgument, "isomorphism test across rings or sides");
    IsoResult out;
    if (m.dim() != n.dim()) {
        out.verdict = IsoVerdict::NotIsomorphic;
        return out;
    }
    const std::size_t d = m.dim();
    if (d == 0) {
        out.verdict = IsoVerdict::Isomorphic;
        out.witness = ModuleMap{m, n, Matrix(0, 0, m.p())};
        return out;
    }
    Subspace h = hom_over_algebra(m, n);
    if (h.dim() != hom_over_algebra(m, m).dim() || h.dim() != hom_over_algebra(n, n).dim()) {
        out.verdict = IsoVerdict::NotIsomorphic;
        return out;
    }
    auto accept = [&](const Vector& v) {
        Matrix x = unvec(v, d, d, m.p());
        if (la::rank(x) != d) return false;
        out.verdict = IsoVerdict::Isomorphic;
        out.witness = ModuleMap{m, n, std::move(x)};
        return true;
    };
    for (std::size_t i = 0; i < h.dim(); ++i)
        if (accept(h.basis_vector(i))) return out;
    std::mt19937_64 rng(seed);
    const Scalar p = m.p();
    for (std::size_t t = 0; t < attempts; ++t) {
        Vector v(d * d, 0);
        for (std::size_t i = 0; i < h.dim(); ++i) axpy(v, static_cast<Scalar>(rng() % p), h.basis().row(i), p);
        if (accept(v)) return out;
    }
    out.verdict = IsoVerdict::NotCertified;
    return out;
}

}  // namespace homct
