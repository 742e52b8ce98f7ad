#pragma once
// Stable homology at window scale: the copure vanishing route, the dual Ext
// route, and the double complex D_m^n = P_m ⊗ I^n with cycle compression and
// the comparison maps τ : Ĉtor -> Tor, ð : S̃tor -> Tor and ς : S̃tor -> Ĉtor.
//
// A WindowElement of degree i has components v^n in D^n_{i+n}; its boundary is
// (∂v)^n = ∂^v v^n + ∂^h v^{n-1} with ∂^h = (-1)^m (1 ⊗ d_I) on row m.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohom.hpp"

namespace homct {

enum class CopureReason { SelfInjective, Projective, FiniteLength, Periodic };
const char* copure_reason_name(CopureReason r);

struct CopureCertificate {
    std::size_t bound = 0;       // Tor_i(m, E) = 0 for all injective E and i >= bound
    CopureReason reason = CopureReason::SelfInjective;
    std::size_t checked_to = 0;  // Tor_i(m, E_s) computed for bound <= i <= checked_to
};

/// m a right module. Returns a certificate only when vanishing on the
/// indecomposable injectives is computed and provably persists.
std::optional<CopureCertificate> copure_vanishing_certificate(const FdModule& m, std::size_t depth);

/// Tor_{i+k}(m, Ω^k n) for k = max(0, bound - i), checked against k + 1.
HomologySpace stable_homology_via_vanishing(const FdModule& m, const FdModule& n, long i,
                                            const std::optional<CopureCertificate>& cert);

/// Colimit of the Ext cotower of (m, D n) over the opposite algebra, stages
/// first_stage(i) + depth; its dual computes S̃tor_i(m, n) when it stabilizes.
StabilizationReport stable_homology_via_duality(const FdModule& m, const FdModule& n, long i, std::size_t depth,
                                                std::size_t w = 2);

struct WindowElement {
    long degree = 0;
    std::map<std::size_t, Vector> cols;  // n -> v^n in D^n_{degree+n}

    bool is_zero() const;
    std::optional<std::size_t> top() const;
    std::optional<std::size_t> bottom() const;
    /// Components in columns [lo, hi].
    WindowElement restricted(std::size_t lo, std::size_t hi) const;
};

class DoubleWindow {
public:
    /// m a right module, n a left module.
    DoubleWindow(const FdModule& m, const FdModule& n, std::size_t rows, std::size_t columns);

    std::size_t max_row() const { return rows_; }
    std::size_t max_column() const { return columns_; }
    const ChainPtr& chain() const { return chain_; }
    const InjectivePtr& injective() const { return inj_; }
    Scalar p() const { return chain_->ring()->p(); }

    std::size_t dim(std::size_t m, std::size_t n) const;
    /// P ⊗ I^n, n = 0..columns+1.
    const ComplexPtr& column(std::size_t n) const { return cols_[n]; }
    /// P ⊗ Ω^n N, n = 0..columns+1.
    const ComplexPtr& syzygy_column(std::size_t n) const { return omega_[n]; }
    /// 1 ⊗ ι_n : P ⊗ Ω^n N -> P ⊗ I^n.
    const InducedMap& embedding(std::size_t n) const { return *emb_[n]; }
    /// 1 ⊗ π_n : P ⊗ I^n -> P ⊗ Ω^{n+1} N.
    const InducedMap& projection(std::size_t n) const { return *proj_[n]; }

    Vector vertical(std::size_t m, std::size_t n, const Vector& v) const;    // D_m^n -> D_{m-1}^n
    Vector horizontal(std::size_t m, std::size_t n, const Vector& v) const;  // D_m^n -> D_m^{n+1}
    std::optional<Vector> horizontal_preimage(std::size_t m, std::size_t n, const Vector& v) const;

    WindowElement boundary(const WindowElement& v) const;
    WindowElement add(const WindowElement& a, const WindowElement& b, Scalar scale = 1) const;
    WindowElement zero(long degree) const { return WindowElement{degree, {}}; }

    /// ∂∂ = 0 in both directions, anti-commuting squares and exact rows at
    /// inner columns, over the whole window.
    struct Checks {
        bool horizontal_square_zero = true, vertical_square_zero = true, anticommute = true, rows_exact = true;
        bool pass() const { return horizontal_square_zero && vertical_square_zero && anticommute && rows_exact; }
    };
    Checks check() const;

    /// Class in H_{i+e}(P ⊗ Ω^e N) of a cycle supported only at column e.
    Vector column_class(const WindowElement& w, std::size_t e) const;
    /// Single-column cycle σ ι_e z at column e for a cycle z of P ⊗ Ω^e N.
    WindowElement from_syzygy(long degree, std::size_t e, const Vector& z, Scalar sign = 1) const;

private:
    std::size_t rows_, columns_;
    ChainPtr chain_;
    InjectivePtr inj_;
    std::vector<ComplexPtr> cols_, omega_;
    std::vector<std::shared_ptr<InducedMap>> hor_, emb_, proj_;
    void require_cell(long m, std::size_t n) const;
};

DoubleWindow build_double_window(const FdModule& m, const FdModule& n, std::size_t rows, std::size_t columns);

struct Compression {
    WindowElement u;        // degree i + 1
    WindowElement result;   // v - ∂u
};
/// Walks from the last column of v down to column e, lifting along exact rows
/// inside the truncation I^{≥k}. If ∂v = 0 the result is a cycle supported at e.
Compression compress_cycle(const DoubleWindow& dw, const WindowElement& v, std::size_t e, std::size_t k = 0);

struct CompatibleFamily {
    long degree = 0;
    std::size_t start = 0;                 // d = max(0, -i)
    std::vector<WindowElement> members;    // w^{≥k} at column k, k = start..start+size-1
    std::vector<Vector> classes;           // class of w^{≥k} in H_{i+k}(P ⊗ Ω^k N)
    std::vector<WindowElement> witnesses;  // v^k with ∂v^k = w^{≥k} - w^{≥k+1}
    std::size_t end() const { return start + members.size(); }
};

/// The family of an element x of V_K (K = sys.depth()) and its images in V_k,
/// k = d..K, with sign-adjusted left-edge representatives and witnesses.
/// sys must be built over dw.chain().
CompatibleFamily family_from_tower(const DoubleWindow& dw, const CosyzygySystem& sys, const Vector& x_top);

/// Some x in V_K mapping to y in V_L under the tower maps, or nullopt.
std::optional<Vector> lift_to_top(const CosyzygySystem& sys, std::size_t level, const Vector& y);

/// [w^{≥0}] in Tor_i(m, n) (zero when i < 0).
Vector map_tau(const DoubleWindow& dw, const CompatibleFamily& fam);
/// z of degree i + 1 is known through column `extent` (default: its last
/// nonzero column); ∂z on those columns must be a cycle vanishing at the extent.
/// Returns [∂z] in Tor_i(m, n), zero when i < 0.
Vector map_eth(const DoubleWindow& dw, const WindowElement& z, std::optional<std::size_t> extent = std::nullopt);
/// ([∂(z^{≥k})])_k for k = max(0, -i) up to the extent; verifies τς = ð.
CompatibleFamily map_sigma(const DoubleWindow& dw, const WindowElement& z,
                           std::optional<std::size_t> extent = std::nullopt);
/// z = (v^k) with ς(z) = fam on the columns below the top of the family; verified.
WindowElement sigma_preimage(const DoubleWindow& dw, const CompatibleFamily& fam);

/// Window evidence on ð_i for a stabilized limit; not a statement about the open question.
struct InjectivityEvidence {
    std::size_t limit_dim = 0;
    std::size_t eth_rank = 0;   // rank of ð on the constructed preimages
    std::string label = "evidence";
};
InjectivityEvidence injectivity_probe(const DoubleWindow& dw, const CosyzygySystem& sys,
                                      const StabilizationReport& limit);

}  // namespace homct
