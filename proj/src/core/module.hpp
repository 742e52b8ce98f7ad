#pragma once
// Finite-dimensional one-sided modules given by action matrices.
//
// A right A-module is stored with the matrices of x -> x e_i; it is the same
// data as a left module over the opposite algebra, which is how every
// homological computation treats it (see FdModule::ring).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace homct {

enum class Side { Left, Right };

inline Side flip(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

class FdModule {
public:
    FdModule() = default;
    /// Validates the module axioms unless `trusted`.
    FdModule(AlgebraPtr algebra, Side side, std::vector<Matrix> action, bool trusted = false);

    static FdModule zero(AlgebraPtr algebra, Side side);

    const AlgebraPtr& algebra() const { return d_->algebra; }
    Side side() const { return d_->side; }
    std::size_t dim() const { return d_->dim; }
    Scalar p() const { return d_->algebra->p(); }
    const Matrix& action(std::size_t i) const { return d_->action[i]; }
    const std::vector<Matrix>& actions() const { return d_->action; }
    bool valid() const { return d_ != nullptr; }

    /// The algebra over which this is a left module: A, or A° for right modules.
    AlgebraPtr ring() const;
    /// Matrix of the action of an algebra element given in basis coordinates.
    Matrix act(const Vector& a) const;
    /// Same matrices viewed as a left module over ring().
    FdModule left_view() const;
    /// Inverse of left_view: reinterpret a left module over `algebra` or over
    /// its opposite as a module on the requested side of `algebra`.
    static FdModule from_left_view(const FdModule& left, const AlgebraPtr& algebra, Side side);

    /// SHA-256 of algebra, side and matrices.
    const std::string& key() const;

    bool same_ring_and_side(const FdModule& o) const {
        return algebra()->same_as(*o.algebra()) && side() == o.side();
    }

private:
    struct Data {
        AlgebraPtr algebra;
        Side side = Side::Left;
        std::size_t dim = 0;
        std::vector<Matrix> action;
        mutable std::once_flag key_once;
        mutable std::string key;
    };
    std::shared_ptr<const Data> d_;
};

/// nullopt if the action respects the structure constants and the unit.
std::optional<std::string> validate_module(const AlgebraPtr& algebra, Side side, const std::vector<Matrix>& action);

struct ModuleMap {
    FdModule source;
    FdModule target;
    Matrix matrix;  // target.dim x source.dim

    /// Checks shapes and that the matrix commutes with the action.
    static ModuleMap make(FdModule source, FdModule target, Matrix matrix);
    static ModuleMap identity(const FdModule& m);
    bool commutes() const;
    ModuleMap compose_after(const ModuleMap& first) const;  // this ∘ first
};

FdModule regular_module(const AlgebraPtr& a, Side side);
FdModule simple_module(const AlgebraPtr& a, std::size_t s, Side side);
/// The indecomposable projective A e_s (left) or e_s A (right).
FdModule indecomposable_projective(const AlgebraPtr& a, std::size_t s, Side side);
FdModule direct_sum(const std::vector<FdModule>& parts);
FdModule direct_sum(const FdModule& a, const FdModule& b);
FdModule power(const FdModule& m, std::size_t copies);

/// D(m) = Hom_k(m, k): side swapped, matrices transposed.
FdModule dual(const FdModule& m);
ModuleMap dual(const ModuleMap& f);

struct TensorResult {
    std::size_t dim = 0;
    Matrix projection;  // dim x (dim m * dim n), basis of m ⊗_k n is index a*dim(n)+b
};
TensorResult tensor_over_algebra(const FdModule& m, const FdModule& n);

/// Homomorphisms as vectors of length dim(n)*dim(m) (row-major dim(n) x dim(m)).
Subspace hom_over_algebra(const FdModule& m, const FdModule& n);
Matrix unvec(const Vector& v, std::size_t rows, std::size_t cols, Scalar p);
Vector vec(const Matrix& m);

/// Hom(P_s, n) realised as matrices: one for each basis vector of e_s n.
std::vector<Matrix> hom_from_projective(const AlgebraPtr& ring, std::size_t s, const FdModule& n_left);

struct StableHom {
    Subspace hom;             // Hom_A(m, n)
    Subspace projective;      // maps factoring through a projective
    la::Subquotient quotient;  // uHom_A(m, n)
    std::size_t dim() const { return quotient.dim(); }
};
StableHom stable_hom(const FdModule& m, const FdModule& n);
/// True if f: m -> n factors through a projective.
bool factors_through_projective(const FdModule& m, const FdModule& n, const Matrix& f);

Subspace radical_submodule(const FdModule& m);  // J m
Subspace socle(const FdModule& m);
/// Top m / J m with its projection.
std::pair<FdModule, ModuleMap> top(const FdModule& m);

/// Submodule generated by vectors, with its inclusion.
std::pair<FdModule, ModuleMap> submodule(const FdModule& m, const std::vector<Vector>& generators);
/// Submodule on an action-stable subspace (checked).
std::pair<FdModule, ModuleMap> submodule_on(const FdModule& m, const Subspace& s);
/// Quotient by an action-stable subspace (checked), with its projection.
std::pair<FdModule, ModuleMap> quotient(const FdModule& m, const Subspace& sub);
Subspace action_closure(const FdModule& m, const Subspace& s);
bool is_action_stable(const FdModule& m, const Subspace& s);

enum class IsoVerdict { Isomorphic, NotIsomorphic, NotCertified };
struct IsoResult {
    IsoVerdict verdict = IsoVerdict::NotCertified;
    std::optional<ModuleMap> witness;
};
IsoResult is_isomorphic(const FdModule& m, const FdModule& n, std::uint64_t seed = 1, std::size_t attempts = 64);

}  // namespace homct
