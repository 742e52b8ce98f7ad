#pragma once
// Complexes P ⊗_R X and Hom_R(P, X) for a chain P of projectives ⊕_t e_{s_t}R.
//
// Each component is ⊕_t e_{s_t} X, so differentials and induced maps are
// block matrices between the pieces e_s X. Tensor complexes are homological
// (d: C_j -> C_{j-1}); Hom complexes are cohomological (δ: C^j -> C^{j+1}).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "resolve.hpp"

namespace homct {

/// A chain of finitely generated projective left modules over ring(), in
/// every integer degree. d_j(g_t) has summand-u part components(j)[t][u].
class ProjectiveChain {
public:
    virtual ~ProjectiveChain() = default;
    virtual const AlgebraPtr& ring() const = 0;
    virtual std::vector<std::size_t> types(long j) const = 0;
    virtual std::vector<std::vector<Vector>> components(long j) const = 0;
};

using ChainPtr = std::shared_ptr<const ProjectiveChain>;

/// A minimal projective resolution, zero in negative degrees.
class ResolutionChain : public ProjectiveChain {
public:
    explicit ResolutionChain(ResolutionPtr res) : res_(std::move(res)) {}
    const AlgebraPtr& ring() const override { return res_->ring(); }
    std::vector<std::size_t> types(long j) const override;
    std::vector<std::vector<Vector>> components(long j) const override;
    const ResolutionPtr& resolution() const { return res_; }

private:
    ResolutionPtr res_;
};

ChainPtr chain_of(const ResolutionPtr& res);

/// e_s X with a basis (columns of `basis`) and coordinates read at `pivots`.
struct Piece {
    Matrix basis;
    std::vector<std::size_t> pivots;
    std::size_t dim() const { return basis.cols(); }
    Vector coords(std::span<const Scalar> v) const;
};

struct HomologySpace {
    long degree = 0;
    la::Subquotient h;
    std::size_t dim() const { return h.dim(); }
};

enum class ComplexKind { Tensor, Hom };

class FunctorComplex {
public:
    /// Tensor: X is a left module over the opposite of chain->ring().
    /// Hom: X is a left module over chain->ring().
    FunctorComplex(ChainPtr chain, FdModule x, ComplexKind kind);

    ComplexKind kind() const { return kind_; }
    const FdModule& module() const { return x_; }
    const ProjectiveChain& chain() const { return *chain_; }
    const ChainPtr& chain_ptr() const { return chain_; }
    Scalar p() const { return x_.p(); }

    /// Degree that the differential leaves from j lands in, and the one it enters from.
    long next(long j) const { return kind_ == ComplexKind::Tensor ? j - 1 : j + 1; }
    long prev(long j) const { return kind_ == ComplexKind::Tensor ? j + 1 : j - 1; }

    std::vector<std::size_t> types(long j) const { return chain_->types(j); }
    std::size_t dim(long j) const;
    std::vector<std::size_t> offsets(long j) const;
    const Piece& piece(std::size_t s) const { return pieces_[s]; }
    std::size_t num_types() const { return pieces_.size(); }

    /// Differential out of degree j: C_j -> C_{next(j)}.
    const Matrix& out(long j) const;
    /// Differential into degree j: C_{prev(j)} -> C_j.
    const Matrix& in(long j) const { return out(prev(j)); }
    const HomologySpace& homology(long j) const;

    /// Block vector -> vector of ⊕_t X (each block expanded through its basis).
    Vector embed(long j, const Vector& c) const;
    /// Inverse of embed on vectors of ⊕_t e_{s_t} X.
    Vector restrict_to(long j, const Vector& ambient) const;

private:
    ChainPtr chain_;
    FdModule x_;
    ComplexKind kind_;
    std::vector<Piece> pieces_;
    mutable std::mutex mu_;
    mutable std::map<long, Matrix> out_;
    mutable std::map<long, std::shared_ptr<HomologySpace>> hom_;
};

using ComplexPtr = std::shared_ptr<const FunctorComplex>;
ComplexPtr make_complex(ChainPtr chain, FdModule x, ComplexKind kind);

/// Blockwise map C(X) -> C(Y) induced by a module map f: X -> Y.
class InducedMap {
public:
    InducedMap(ComplexPtr src, ComplexPtr dst, const Matrix& f);

    const FunctorComplex& source() const { return *src_; }
    const FunctorComplex& target() const { return *dst_; }
    Vector apply(long j, const Vector& v) const;
    Matrix matrix(long j) const;
    /// Some x with apply(j, x) = y, free variables zero; nullopt if none.
    std::optional<Vector> solve(long j, const Vector& y) const;
    /// H_j(src) -> H_j(dst) in class coordinates.
    Matrix on_homology(long j) const;

private:
    ComplexPtr src_, dst_;
    std::vector<Matrix> blocks_;  // per type s: e_s X -> e_s Y
    std::vector<la::LinearSolver> solvers_;
};

/// Matrix of a linear map given by its values on a basis of H_j(src),
/// expressed as class coordinates in H_{j'}(dst).
Matrix classes_matrix(const HomologySpace& dst, const std::vector<Vector>& cycles, std::size_t src_dim);

/// Connecting map H_j(C'') -> H_{next(j)}(C') of 0 -> C' -> C -> C'' -> 0.
Matrix connecting_map(const InducedMap& incl, const InducedMap& proj, long j);
/// Chain-level version on one cycle of C''_j; returns a cycle of C'_{next(j)}.
Vector connecting_cycle(const InducedMap& incl, const InducedMap& proj, long j, const Vector& z);
/// connecting_cycle on several cycles at once.
std::vector<Vector> connecting_cycles(const InducedMap& incl, const InducedMap& proj, long j,
                                      const std::vector<Vector>& zs);

}  // namespace homct
