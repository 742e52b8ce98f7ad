#pragma once
// Right satellites, the inverse systems V_k = Tor_{k+i}(M, Ω^k N) and
// S^k Tor_{k+i}(M, -)(N), finite stabilization analysis, complete homology,
// dimension shifting and the left satellite identity.

#include <optional>
#include <string>
#include <vector>

#include "complete.hpp"
#include "derived.hpp"

namespace homct {

enum class TowerKind { Cosyzygy, Satellite, DualExt };
const char* tower_kind_name(TowerKind k);

/// Inverse system V_0 <- V_1 <- ... <- V_K of finite-dimensional spaces.
struct Tower {
    TowerKind provenance = TowerKind::Cosyzygy;
    long degree = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;  // maps[k]: V_k -> V_{k-1}; maps[0] is 0 x dims[0]
    std::size_t depth() const { return dims.empty() ? 0 : dims.size() - 1; }
};

/// Directed system V_0 -> V_1 -> ... -> V_K.
struct CoTower {
    TowerKind provenance = TowerKind::DualExt;
    long degree = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;  // maps[k]: V_{k-1} -> V_k; maps[0] is dims[0] x 0
    std::size_t depth() const { return dims.empty() ? 0 : dims.size() - 1; }
};

/// The dual inverse system of a directed system (transposed maps).
Tower transpose(const CoTower& c);

enum class Verdict { Stabilized, NotStabilized, Inconclusive };
const char* verdict_name(Verdict v);

struct StabilizationReport {
    Verdict verdict = Verdict::Inconclusive;
    std::size_t window = 0;
    std::vector<std::size_t> dims;
    /// image_chain[k][j] = dim Im(V_{k+j} -> V_k), j = 0..K-k.
    std::vector<std::vector<std::size_t>> image_chain;
    std::size_t limit_dim = 0;                    // Stabilized only
    std::size_t stable_from = 0, stable_to = 0;   // Stabilized only
    Matrix limit_basis;                           // columns in V_{stable_from}
    std::size_t lower_bound = 0;                  // NotStabilized: dim V_K
    std::string note;
};

/// Heuristic certificate over the last w stages; see README.
StabilizationReport tower_limit(const Tower& t, std::size_t w);
/// Limit policy for a directed system, through its transpose.
StabilizationReport cotower_limit(const CoTower& c, std::size_t w);

/// V_k = Tor_{k+i}(m, Ω^k n) for k = 0..K with the connecting maps of
/// 0 -> Ω^{k-1} n -> I^{k-1} -> Ω^k n -> 0 and the maps from Tor(m, I^{k-1}).
class CosyzygySystem {
public:
    CosyzygySystem(const FdModule& m, const FdModule& n, long i, std::size_t depth);
    /// Over a given chain, so that systems for different n share it.
    CosyzygySystem(ChainPtr chain, const FdModule& n, long i, std::size_t depth);

    long degree() const { return i_; }
    std::size_t depth() const { return depth_; }
    const InjectivePtr& injective() const { return inj_; }
    const ChainPtr& chain() const { return chain_; }
    /// P ⊗ Ω^k n.
    const ComplexPtr& stage_complex(std::size_t k) const { return c_[k]; }
    /// V_k = H_{k+i}(P ⊗ Ω^k n).
    const HomologySpace& space(std::size_t k) const;
    /// δ_k : V_k -> V_{k-1}, k >= 1.
    const Matrix& delta(std::size_t k) const { return delta_[k]; }
    /// Tor_{k+i}(m, I^{k-1}) -> V_k, k >= 1.
    const Matrix& from_injective(std::size_t k) const { return from_inj_[k]; }
    /// Subspace of V_k killed in the satellite (zero for k = 0).
    la::Subspace satellite_relations(std::size_t k) const;
    Tower tower() const;

private:
    long i_;
    std::size_t depth_;
    InjectivePtr inj_;
    ChainPtr chain_;
    std::vector<ComplexPtr> c_;
    std::vector<Matrix> delta_, from_inj_;
};

Tower cosyzygy_tower(const FdModule& m, const FdModule& n, long i, std::size_t depth);

/// S^n Tor_j(m, -)(n) as a quotient of Tor_j(m, Ω^n n) in class coordinates.
struct RightSatellite {
    HomologySpace tor;        // Tor_j(m, Ω^n n)
    la::Subquotient space;    // tor classes modulo the image of Tor_j(m, I^{n-1})
    std::size_t dim() const { return space.dim(); }
};
RightSatellite right_satellite(const FdModule& m, long j, std::size_t steps, const FdModule& n);

/// Satellite stage S^k = V_k / im Tor_{k+i}(m, I^{k-1}) and φ^k : S^k -> V_{k-1}.
struct SatelliteStage {
    la::Subquotient space;
    Matrix phi;                 // dim V_{k-1} x dim S^k (empty for k = 0)
    bool well_defined = true;   // δ_k vanishes on the relations
    bool injective = true;
    bool square_commutes = true;
};

struct SatelliteSystem {
    Tower tower;
    std::vector<SatelliteStage> stages;
};
SatelliteSystem satellite_system(const CosyzygySystem& sys);
Tower satellite_tower(const FdModule& m, const FdModule& n, long i, std::size_t depth);

/// Stage-wise comparison of the satellite and cosyzygy systems.
struct SatelliteCrossCheck {
    bool pass = true;
    std::vector<std::size_t> cosyzygy_dims, satellite_dims;
    std::vector<std::string> failures;
    Verdict cosyzygy_verdict = Verdict::Inconclusive, satellite_verdict = Verdict::Inconclusive;
};
/// Runs to first_stage(i) + depth.
SatelliteCrossCheck satellite_cross_check(const FdModule& m, const FdModule& n, long i, std::size_t depth,
                                          std::size_t w);

/// Stages k < first_stage(i) have k + i < 0 and vanish.
std::size_t first_stage(long i);
/// Complete homology: the limit of the cosyzygy tower with `depth` stages
/// beyond first_stage(i).
StabilizationReport complete_homology(const FdModule& m, const FdModule& n, long i, std::size_t depth,
                                      std::size_t w);

struct DimensionShiftReport {
    bool conclusive = false;
    bool pass = false;
    StabilizationReport shifted;    // complete homology at (Ω^n N, i)
    StabilizationReport reference;  // complete homology at (N, i - n)
    std::string detail;
};
DimensionShiftReport dimension_shift_check(const FdModule& m, const FdModule& n, long i, std::size_t steps,
                                           std::size_t depth, std::size_t w);

struct LeftSatelliteReport {
    bool pass = false;
    std::size_t satellite_dim = 0;  // S_k Tor_i(m, -)(n)
    std::size_t tor_dim = 0;        // Tor_{k+i}(m, n)
    std::size_t connecting_rank = 0;
};
/// S_k T(n) = ker(T(Ω_k n) -> T(P_{k-1})) for T = Tor_i(m, -).
LeftSatelliteReport left_satellite_check(const FdModule& m, long i, std::size_t k, const FdModule& n);

/// Checks for u = Tate homology of m (complete resolution t) on a corpus.
struct InducedIsoReport {
    bool pass = true;
    bool vanishes_on_injectives = true;
    bool agrees_with_tor = true;
    bool agrees_with_complete = true;
    std::vector<std::string> failures;
};
InducedIsoReport induced_iso_check(const CompletePtr& t, const FdModule& m, const std::vector<FdModule>& corpus,
                                   long lo, long hi, std::size_t depth, std::size_t w);

/// Maps α_k : Ω^k n -> Ω^k n' extending a module map α through minimal injective resolutions.
std::vector<Matrix> cosyzygy_lift(const ModuleMap& alpha, std::size_t depth);
/// Induced morphism of cosyzygy towers, one matrix V_k(n) -> V_k(n') per stage.
std::vector<Matrix> tower_morphism(const CosyzygySystem& src, const CosyzygySystem& dst, const ModuleMap& alpha);

}  // namespace homct
