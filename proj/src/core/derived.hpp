#pragma once
// Tor and Ext from minimal resolutions of the first argument, connecting
// homomorphisms and long exact sequence checks.

#include <string>
#include <vector>

#include "complexes.hpp"

namespace homct {

/// P ⊗_R n for the minimal resolution P of the right module m (n a left module).
ComplexPtr tor_complex(const FdModule& m, const FdModule& n);
/// Hom_R(P, n) for the minimal resolution P of m; m and n on the same side.
ComplexPtr ext_complex(const FdModule& m, const FdModule& n);

HomologySpace tor(const FdModule& m, const FdModule& n, long i);
HomologySpace ext(const FdModule& m, const FdModule& n, long i);

/// 0 -> a --f--> b --g--> c -> 0 of modules on one side.
struct ShortExactSeq {
    FdModule a, b, c;
    Matrix f, g;
    /// nullopt if f injective, g surjective, im f = ker g and both are module maps.
    std::optional<std::string> check() const;
    bool split() const;
};

/// The sequence 0 -> sub -> m -> m/sub -> 0 for an action-stable subspace.
ShortExactSeq submodule_sequence(const FdModule& m, const Subspace& sub);
/// 0 -> Ω^k n -> I^k -> Ω^{k+1} n -> 0 from the minimal injective resolution.
ShortExactSeq cosyzygy_sequence(const FdModule& n, std::size_t k);
/// 0 -> Ω_{k+1} n -> P_k -> Ω_k n -> 0 from the minimal projective resolution.
ShortExactSeq syzygy_sequence(const FdModule& n, std::size_t k);

/// The three coefficient complexes of a sequence and the induced maps.
struct SesComplexes {
    ComplexPtr a, b, c;
    std::shared_ptr<InducedMap> f, g;
};
SesComplexes ses_complexes(const ChainPtr& chain, const ShortExactSeq& ses, ComplexKind kind);

/// δ: Tor_i(m, c) -> Tor_{i-1}(m, a).
Matrix connecting_tor(const ShortExactSeq& ses, const FdModule& m, long i);
/// δ: Ext^i(m, c) -> Ext^{i+1}(m, a).
Matrix connecting_ext(const FdModule& m, const ShortExactSeq& ses, long i);

struct LesJoint {
    long degree = 0;
    std::string position;  // "a", "b" or "c": where exactness is checked
    bool exact = true;
};
struct LesReport {
    bool exact = true;
    std::vector<LesJoint> joints;
};
/// Exactness of the Tor long exact sequence of (m, ses) for degrees lo..hi.
LesReport les_check(const ShortExactSeq& ses, const FdModule& m, long lo, long hi);

}  // namespace homct
