#include "complete.hpp"

#include "error.hpp"

namespace homct {

namespace {

long floor_mod(long a, long b) {
    long r = a % b;
    return r < 0 ? r + b : r;
}

Matrix invert(const Matrix& m, const char* what) {
    auto inv = la::inverse(m);
    require(inv.has_value(), ErrorCode::InternalMismatch, std::string(what) + " is not invertible");
    return *inv;
}

}  // namespace

struct CompleteBuilder {
    static CompletePtr splice(const FdModule& m_left) {
        auto t = std::make_shared<CompleteResolution>();
        t->module_ = m_left;
        t->method_ = CompleteMethod::Splice;
        t->agreement_ = 0;
        t->res_ = resolution_of(m_left);
        t->inj_ = injective_resolution_of(m_left);
        return t;
    }
    static CompletePtr periodic(const FdModule& m_left, ResolutionPtr res, Periodicity per) {
        auto t = std::make_shared<CompleteResolution>();
        t->module_ = m_left;
        t->method_ = CompleteMethod::Periodic;
        t->agreement_ = static_cast<long>(per.offset);
        t->res_ = std::move(res);
        t->theta_inverse_ = invert(per.iso, "periodicity certificate");
        t->period_ = std::move(per);
        return t;
    }
};

std::shared_ptr<const Cover> CompleteResolution::injective_cover(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& c = covers_[k];
    if (!c) {
        auto cover = std::make_shared<Cover>(projective_cover(inj_->injective(k)));
        require(cover->kernel.dim() == 0, ErrorCode::InternalMismatch, "injective term is not projective");
        c = cover;
    }
    return c;
}

std::size_t CompleteResolution::periodic_index(long j) const {
    const long q = static_cast<long>(period_->offset), s = static_cast<long>(period_->period);
    if (j >= q) return static_cast<std::size_t>(j);
    return static_cast<std::size_t>(q + floor_mod(j - q, s));
}

ProjectiveSum CompleteResolution::term(long j) const {
    if (method_ == CompleteMethod::Periodic) return res_->projective(periodic_index(j));
    if (j >= 0) return res_->projective(static_cast<std::size_t>(j));
    return injective_cover(static_cast<std::size_t>(-1 - j))->projective;
}

std::vector<std::size_t> CompleteResolution::types(long j) const { return term(j).types; }

Matrix CompleteResolution::differential(long j) const {
    if (method_ == CompleteMethod::Periodic) {
        const long q = static_cast<long>(period_->offset), s = static_cast<long>(period_->period);
        if (j > q) return res_->differential(static_cast<std::size_t>(j));
        const long r = floor_mod(j - q, s);
        if (r != 0) return res_->differential(static_cast<std::size_t>(q + r));
        // Glue P_q -> Ω_q -> Ω_{q+s} -> P_{q+s-1}.
        auto top = res_->stage(static_cast<std::size_t>(q));
        auto bottom = res_->stage(static_cast<std::size_t>(q + s - 1));
        return bottom->inclusion * theta_inverse_ * top->cover.map;
    }
    if (j >= 1) return res_->differential(static_cast<std::size_t>(j));
    if (j == 0) {
        auto c0 = injective_cover(0);
        return invert(c0->map, "cover of I^0") * inj_->embedding(0) * res_->stage(0)->cover.map;
    }
    const std::size_t k = static_cast<std::size_t>(-1 - j);
    auto ck = injective_cover(k), ck1 = injective_cover(k + 1);
    return invert(ck1->map, "cover of an injective term") * inj_->differential(k) * ck->map;
}

std::vector<std::vector<Vector>> CompleteResolution::components(long j) const {
    ProjectiveSum src = term(j), dst = term(j - 1);
    Matrix d = differential(j);
    std::vector<std::vector<Vector>> comps;
    for (std::size_t t = 0; t < src.types.size(); ++t) {
        Vector v = d.apply(src.generator(t));
        std::vector<Vector> row;
        for (std::size_t u = 0; u < dst.types.size(); ++u) row.push_back(dst.component(v, u));
        comps.push_back(std::move(row));
    }
    return comps;
}

CompleteResult complete_resolution(const FdModule& m, std::size_t depth) {
    FdModule left = m.left_view();
    if (is_self_injective(left.algebra()).self_injective) return {CompleteBuilder::splice(left), ""};
    auto res = resolution_of(left);
    if (auto per = detect_periodicity(*res, depth)) return {CompleteBuilder::periodic(left, res, *per), ""};
    return {nullptr, "no complete resolution certified: the algebra is not self-injective and no periodicity "
                     "certificate was found within depth " + std::to_string(depth)};
}

AcyclicityReport check_total_acyclicity(const CompletePtr& t, long window) {
    AcyclicityReport rep;
    const AlgebraPtr& s = t->ring();
    auto self = make_complex(t, regular_module(s->opposite(), Side::Left), ComplexKind::Tensor);
    auto hom = make_complex(t, regular_module(s, Side::Left), ComplexKind::Hom);
    for (long i = -window; i <= window; ++i) {
        bool ok = true;
        if (!(t->differential(i) * t->differential(i + 1)).is_zero()) {
            rep.complex = false;
            ok = false;
        }
        if (self->homology(i).dim() != 0) {
            rep.acyclic = false;
            ok = false;
        }
        if (hom->homology(i).dim() != 0) {
            rep.hom_acyclic = false;
            ok = false;
        }
        if (!ok) rep.failures.push_back(i);
    }
    return rep;
}

ComplexPtr tate_complex(const CompletePtr& t, const FdModule& n) {
    return make_complex(t, n.left_view(), ComplexKind::Tensor);
}

HomologySpace tate_tor(const CompletePtr& t, const FdModule& n, long i) { return tate_complex(t, n)->homology(i); }

}  // namespace homct
