#pragma once
// Stable cohomology at window scale: the truncated and left-satellite
// P-completions of Ext, the stable Hom colimit uHom(Ω_{t+i} M, Ω_t N), the
// comparison μ between chain-map segments and syzygy maps, and the pairing
// with the cosyzygy towers of Tor.
//
// Everything is indexed by the truncation index t: stage t concerns maps
// Ω_{t+i} m -> Ω_t n and Ext^{t+i}(m, Ω_t n). Elements of Hom(Ω_j m, X) are
// cycles of Hom(P, X) in degree j, i.e. the images of the generators of P_j.

#include <string>
#include <vector>

#include "completion.hpp"

namespace homct {

/// Hom(P, Ω_t n) and Hom(P, Q_t) for the minimal resolutions P of m and Q of n
/// (m, n on the same side), t = 0..depth+1.
class ExtSystem {
public:
    ExtSystem(const FdModule& m, const FdModule& n, long i, std::size_t depth);
    /// Over a given chain (a resolution of m), so that systems can share it.
    ExtSystem(ChainPtr chain, const FdModule& n, long i, std::size_t depth);

    long degree() const { return i_; }
    std::size_t depth() const { return depth_; }
    const ChainPtr& chain() const { return chain_; }
    const ResolutionPtr& coefficient_resolution() const { return res_n_; }
    /// Cohomological degree t + i of stage t.
    long ext_degree(std::size_t t) const { return static_cast<long>(t) + i_; }

    /// Hom(P, Ω_t n).
    const ComplexPtr& syzygy_complex(std::size_t t) const { return omega_[t]; }
    /// Hom(P, Q_t).
    const ComplexPtr& cover_complex(std::size_t t) const { return cover_[t]; }
    /// Hom(P, Q_t) -> Hom(P, Ω_t n).
    const InducedMap& projection(std::size_t t) const { return *proj_[t]; }
    /// Hom(P, Ω_{t+1} n) -> Hom(P, Q_t).
    const InducedMap& inclusion(std::size_t t) const { return *incl_[t]; }
    /// Hom(P, Q_{t+1}) -> Hom(P, Q_t) induced by the differential of Q.
    Vector q_differential(std::size_t t, long j, const Vector& v) const;

    /// Ext^{t+i}(m, Ω_t n).
    const HomologySpace& ext_space(std::size_t t) const;
    /// Maps Ω_{t+i} m -> Ω_t n factoring through a projective, inside the cycles.
    const la::Subspace& projective_maps(std::size_t t) const { return phom_[t]; }
    /// uHom(Ω_{t+i} m, Ω_t n).
    const la::Subquotient& stable_hom(std::size_t t) const { return uhom_[t]; }
    /// δ : Ext^{t-1+i}(m, Ω_{t-1} n) -> Ext^{t+i}(m, Ω_t n), t >= 1.
    const Matrix& delta(std::size_t t) const { return delta_[t]; }
    /// Transition uHom stage t-1 -> stage t (the syzygy functor), t >= 1.
    const Matrix& stable_delta(std::size_t t) const { return sdelta_[t]; }
    /// Ext stage t -> uHom stage t (quotient by the projective maps).
    const Matrix& comparison(std::size_t t) const { return compare_[t]; }
    /// S_t Ext^{t+i}(m, -)(n) = ker(Ext^{t+i}(m, Ω_t n) -> Ext^{t+i}(m, Q_{t-1})) in class coordinates.
    const la::Subspace& satellite(std::size_t t) const { return sat_[t]; }

    CoTower truncated() const;
    CoTower satellite_cotower() const;
    CoTower benson_carlson() const;

private:
    long i_;
    std::size_t depth_;
    ChainPtr chain_;
    ResolutionPtr res_n_;
    std::vector<ComplexPtr> omega_, cover_;
    std::vector<std::shared_ptr<InducedMap>> proj_, incl_;
    std::vector<la::Subspace> phom_, sat_;
    std::vector<la::Subquotient> uhom_;
    std::vector<Matrix> delta_, sdelta_, compare_;
};

/// Colimit of uHom(Ω_{t+i} m, Ω_t n) over t = 0..depth.
StabilizationReport bc_ext(const FdModule& m, const FdModule& n, long i, std::size_t depth, std::size_t w = 2);

/// Colimit of Ext^{t+i}(m, Ω_t n) over t = 0..depth, cross-checked against
/// the left-satellite family; throws InternalMismatch if they disagree.
StabilizationReport pcomp_ext(const FdModule& m, const FdModule& n, long i, std::size_t depth, std::size_t w = 2);

/// Stage-wise agreement of the Ext and stable Hom cotowers.
struct CohomAgreement {
    bool pass = true;
    std::vector<std::size_t> ext_dims, stable_dims, satellite_dims;
    std::vector<std::string> failures;
};
/// For t >= 1 with t + i >= 1 the comparison must be bijective; otherwise
/// surjective. Squares with the transitions must commute everywhere.
CohomAgreement cohom_agreement(const ExtSystem& sys);

/// Morphism of truncated cotowers induced by a module map n -> n' (both
/// systems over one chain); one matrix per stage, with a commutation flag.
struct CotowerMorphism {
    std::vector<Matrix> maps;
    bool commutes = true;
};
/// Maps Ω_t n -> Ω_t n' extending α through minimal projective resolutions.
std::vector<Matrix> syzygy_lift(const ModuleMap& alpha, std::size_t depth);
CotowerMorphism cotower_morphism(const ExtSystem& src, const ExtSystem& dst, const ModuleMap& alpha);

/// Chain-map segment φ_j : P_j -> Q_{j-i}, j = start..start+len-1, stored
/// as elements of Hom(P, Q_{j-i}) in degree j. Convention:
/// d^Q φ_{j+1} = (-1)^i φ_j d^P.
struct StableMapClass {
    long degree = 0;
    std::size_t start = 0;
    std::vector<Vector> phi;
    bool normalized = false;
    std::size_t end() const { return start + phi.size(); }
};

/// All squares inside the segment commute with the sign convention.
bool is_chain_segment(const ExtSystem& sys, const StableMapClass& s);
/// φ̃_k : Ω_k m -> Ω_{k-i} n with φ̃_k π = π φ_k, as a cycle of Hom(P, Ω_{k-i} n) in degree k.
Vector mu_forward_map(const ExtSystem& sys, const StableMapClass& s, std::size_t k);
/// Class of φ̃_k in uHom(Ω_k m, Ω_{k-i} n).
Vector mu_forward(const ExtSystem& sys, const StableMapClass& s, std::size_t k);
/// Segment of length len lifting f : Ω_{t+i} m -> Ω_t n (a cycle in degree t + i).
StableMapClass mu_backward(const ExtSystem& sys, std::size_t t, const Vector& f, std::size_t len);

/// σ_j : P_j -> Q_{j-i+1} with d^Q σ_k = φ_k - s and d^Q σ_j + (-1)^i σ_{j-1} d^P = φ_j
/// above, where s factors through π_k. Exists iff mu_forward vanishes.
struct NullHomotopy {
    Vector correction;           // s, a cycle of Hom(P, Q_{k-i}) in degree k
    std::vector<Vector> sigma;   // σ_j, j = start..end-1
};
std::optional<NullHomotopy> null_homotopy(const ExtSystem& sys, const StableMapClass& s);
/// The segment d^Q σ_j + (-1)^i σ_{j-1} d^P for j = start..start+len-1 from
/// σ_{start-1}, ..., σ_{start+len-1}.
StableMapClass homotopy_boundary(const ExtSystem& sys, long i, std::size_t start, const std::vector<Vector>& sigma);

struct DualityBridgeReport {
    bool pass = true;
    bool literal_duality = true;   // Ω^k(D n) = D(Ω_k n) on the nose
    bool pairing_perfect = true;
    bool squares_commute = true;
    std::vector<std::size_t> tor_dims, ext_dims;
    /// Dimensions of the acyclic summand J of Hom(Q, k) = I ⊕ J; zero for minimal Q.
    std::vector<std::size_t> acyclic_dims;
    std::vector<std::string> failures;
};
/// m, n right modules: the cosyzygy tower of (m, D n, i) against the Ext
/// cotower of (m, n, i) over the opposite algebra, stages 0..depth.
DualityBridgeReport duality_bridge_check(const FdModule& m, const FdModule& n, long i, std::size_t depth);

}  // namespace homct
