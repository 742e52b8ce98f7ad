#pragma once
// Complete resolutions T -> P -> M and Tate homology H_i(T ⊗ N).
//
// Two certified constructions: over a self-injective algebra the minimal
// projective resolution is spliced with the minimal injective resolution
// (whose terms are projective); otherwise a periodicity certificate
// Ω_{q+s} ≅ Ω_q lets the periodic tail repeat in both directions.

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "complexes.hpp"

namespace homct {

enum class CompleteMethod { Splice, Periodic };

class CompleteResolution : public ProjectiveChain {
public:
    const AlgebraPtr& ring() const override { return module_.algebra(); }
    std::vector<std::size_t> types(long j) const override;
    std::vector<std::vector<Vector>> components(long j) const override;

    CompleteMethod method() const { return method_; }
    /// T_j = P_j and the differentials agree for j > agreement().
    long agreement() const { return agreement_; }
    const std::optional<Periodicity>& periodicity() const { return period_; }
    const FdModule& module() const { return module_; }
    const ResolutionPtr& resolution() const { return res_; }

    ProjectiveSum term(long j) const;
    /// d_j : T_j -> T_{j-1}.
    Matrix differential(long j) const;

private:
    friend struct CompleteBuilder;
    FdModule module_;  // left view
    CompleteMethod method_ = CompleteMethod::Splice;
    long agreement_ = 0;
    ResolutionPtr res_;
    InjectivePtr inj_;
    std::optional<Periodicity> period_;
    Matrix theta_inverse_;  // Ω_q -> Ω_{q+s}
    std::size_t periodic_index(long j) const;
    std::shared_ptr<const Cover> injective_cover(std::size_t k) const;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, std::shared_ptr<const Cover>> covers_;  // covers of I^k
};

using CompletePtr = std::shared_ptr<const CompleteResolution>;

struct CompleteResult {
    CompletePtr t;        // null when not certified
    std::string reason;   // why no complete resolution was certified
};

/// Attempts a complete resolution of m, searching periodicity to depth K.
/// Failure to certify is not a claim that none exists.
CompleteResult complete_resolution(const FdModule& m, std::size_t depth);

struct AcyclicityReport {
    bool acyclic = true;           // H_i(T) = 0 on the window
    bool hom_acyclic = true;       // H^i(Hom(T, R)) = 0 on the window
    bool complex = true;           // d∘d = 0 on the window
    std::vector<long> failures;    // degrees where a check failed
};
AcyclicityReport check_total_acyclicity(const CompletePtr& t, long window);

/// Tate homology H_i(T ⊗ n).
HomologySpace tate_tor(const CompletePtr& t, const FdModule& n, long i);
ComplexPtr tate_complex(const CompletePtr& t, const FdModule& n);

}  // namespace homct
