#pragma once
// Minimal projective and injective resolutions, syzygies and cosyzygies,
// periodicity certificates and complete resolutions.
//
// Everything works with left modules over a ring R (a right module is a left
// module over the opposite algebra). Injective resolutions are projective
// resolutions of the dual over the opposite ring, read back through D.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "module.hpp"

namespace homct {

/// ⊕_t R e_{s_t} as a left R-module.
struct ProjectiveSum {
    AlgebraPtr ring;
    std::vector<std::size_t> types;
    std::vector<std::size_t> offsets;
    FdModule module;
    std::size_t dim() const { return module.dim(); }
    std::size_t summand_dim(std::size_t t) const;
    /// Coordinates of the generator e_{s_t} of summand t.
    Vector generator(std::size_t t) const;
    /// Algebra element corresponding to the summand-t block of a vector.
    Vector component(const Vector& v, std::size_t t) const;
};

ProjectiveSum make_projective_sum(const AlgebraPtr& ring, std::vector<std::size_t> types);

struct Cover {
    ProjectiveSum projective;
    Matrix map;                   // dim M x dim P, surjective
    std::vector<Vector> images;   // image of each summand generator
    Subspace kernel;              // inside P, contained in J P
};

/// Projective cover of a left module. Throws UnsupportedAlgebra outside the
/// split basic class.
Cover projective_cover(const FdModule& m_left);

/// Lifts y in the image of the cover through P: returns x with map x = y and
/// x in ⊕ e_{s_t} R-coordinates chosen with free variables zero.
Vector lift_through_cover(const Cover& c, const Vector& y);

struct Stage {
    FdModule omega;                       // Ω_j
    Cover cover;                          // P_j -> Ω_j
    FdModule next;                        // Ω_{j+1}
    Matrix inclusion;                     // Ω_{j+1} -> P_j
    la::LinearSolver inclusion_solver;    // coordinates of kernel elements
};

/// Minimal projective resolution of a left module, extended lazily.
class ProjectiveResolution {
public:
    explicit ProjectiveResolution(FdModule m_left);

    const FdModule& module() const { return module_; }
    const AlgebraPtr& ring() const { return module_.algebra(); }
    /// Stage j (computes stages up to j if needed).
    std::shared_ptr<const Stage> stage(std::size_t j) const;
    const ProjectiveSum& projective(std::size_t j) const { return stage(j)->cover.projective; }
    FdModule syzygy(std::size_t j) const { return stage(j)->omega; }
    std::size_t betti(std::size_t j) const { return projective(j).types.size(); }
    /// d_j : P_j -> P_{j-1}, j >= 1.
    Matrix differential(std::size_t j) const;
    /// comp[t][u] = algebra element giving the summand-u part of d_j(g_t).
    const std::vector<std::vector<Vector>>& components(std::size_t j) const;
    /// Smallest j <= limit with Ω_j = 0, if any.
    std::optional<std::size_t> length(std::size_t limit) const;

private:
    FdModule module_;
    mutable std::mutex mu_;
    mutable std::vector<std::shared_ptr<const Stage>> stages_;
    mutable std::vector<std::shared_ptr<const std::vector<std::vector<Vector>>>> components_;
};

using ResolutionPtr = std::shared_ptr<const ProjectiveResolution>;

/// Memoized per module content; deeper requests extend the same object.
ResolutionPtr resolution_of(const FdModule& m);

/// D over the ring: a left R-module becomes a left R°-module.
FdModule dual_left(const FdModule& m_left);

/// Minimal injective resolution of a module, represented through the
/// projective resolution of its dual over the opposite ring.
class InjectiveResolution {
public:
    explicit InjectiveResolution(const FdModule& n);

    const FdModule& module() const { return n_left_; }
    const ResolutionPtr& dual_resolution() const { return dual_; }
    /// Ω^k N as a left module over the original ring (Ω^0 N = N).
    FdModule cosyzygy(std::size_t k) const;
    /// I^k = D(Q_k).
    FdModule injective(std::size_t k) const;
    /// ι_k : Ω^k N -> I^k.
    Matrix embedding(std::size_t k) const;
    /// I^k -> Ω^{k+1} N, surjective with kernel the image of ι_k.
    Matrix projection(std::size_t k) const;
    /// d^k : I^k -> I^{k+1}.
    Matrix differential(std::size_t k) const;

private:
    FdModule n_left_;
    ResolutionPtr dual_;
};

using InjectivePtr = std::shared_ptr<const InjectiveResolution>;
InjectivePtr injective_resolution_of(const FdModule& n);

struct InjectiveEnvelope {
    FdModule envelope;
    Matrix embedding;
};
InjectiveEnvelope injective_envelope(const FdModule& m);

struct Periodicity {
    std::size_t offset = 0;   // q
    std::size_t period = 0;   // s
    Matrix iso;               // Ω_{q+s} -> Ω_q
};
std::optional<Periodicity> detect_periodicity(const ProjectiveResolution& res, std::size_t depth, std::uint64_t seed = 1);

struct SelfInjectivity {
    bool self_injective = false;
    std::optional<Matrix> witness;  // regular module -> its injective envelope
};
SelfInjectivity is_self_injective(const AlgebraPtr& a);

/// Exactness and minimality checks for a computed resolution window.
struct ResolutionCheck {
    bool exact = true;
    bool minimal = true;
    bool complex = true;
    std::string detail;
};
ResolutionCheck check_resolution(const ProjectiveResolution& res, std::size_t depth);

}  // namespace homct
