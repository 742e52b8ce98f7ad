#pragma once
// Finite-dimensional associative algebras over F_p given by structure
// constants, plus the decomposition data needed for minimal resolutions.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "exactla.hpp"

namespace homct {

using la::Matrix;
using la::Scalar;
using la::Subspace;
using la::Vector;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A left module given by action matrices of the algebra basis; used for the
/// indecomposable projectives inside BasicStructure before FdModule exists.
struct ProjectiveData {
    std::size_t simple = 0;           // index of its top
    Subspace span;                    // A e_s inside A
    std::vector<Matrix> action;       // left action of each basis element
    Vector generator;                 // coordinates of e_s in `span`
};

/// Decomposition data of a split basic algebra (A/J a product of copies of F_p).
struct BasicStructure {
    Subspace radical;
    Subspace radical_squared;
    std::vector<Vector> idempotents;          // primitive, orthogonal, summing to 1
    std::vector<std::vector<Scalar>> characters;  // characters[s][i] = e_i acting on simple s
    std::vector<ProjectiveData> projectives;  // A e_s for each s
    std::vector<Vector> generators;           // idempotents plus lifts of a basis of J/J^2
    std::size_t num_simples() const { return idempotents.size(); }
};

class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    /// Validates and builds. mul[i][j] is the coefficient vector of e_i e_j.
    static AlgebraPtr create(Scalar p, std::vector<std::string> basis_names, Vector unit,
                             std::vector<std::vector<Vector>> mul);

    Scalar p() const { return p_; }
    std::size_t dim() const { return names_.size(); }
    const std::vector<std::string>& basis_names() const { return names_; }
    const Vector& unit() const { return unit_; }
    const Vector& product(std::size_t i, std::size_t j) const { return mul_[i][j]; }
    Scalar structure(std::size_t i, std::size_t j, std::size_t k) const { return mul_[i][j][k]; }

    Vector basis_vector(std::size_t i) const;
    Vector multiply(const Vector& a, const Vector& b) const;
    /// Matrix of x -> a x.
    Matrix left_mult(const Vector& a) const;
    /// Matrix of x -> x a.
    Matrix right_mult(const Vector& a) const;
    bool is_commutative() const;

    AlgebraPtr opposite() const;
    bool is_opposite_of(const Algebra& other) const;

    /// Radical, idempotents, projectives and simples. Computed once; throws
    /// UnsupportedAlgebra or RadicalFailed outside the split basic class.
    const BasicStructure& basic() const;

    /// Byte string identifying the structure constants, for memo keys.
    const std::string& key() const { return key_; }

    bool same_as(const Algebra& other) const { return key_ == other.key_; }

private:
    Algebra() = default;

    Scalar p_ = 2;
    std::vector<std::string> names_;
    Vector unit_;
    std::vector<std::vector<Vector>> mul_;
    std::string key_;

    mutable std::once_flag opposite_once_;
    mutable AlgebraPtr opposite_;
    mutable std::weak_ptr<const Algebra> original_;

    mutable std::once_flag basic_once_;
    mutable std::shared_ptr<const BasicStructure> basic_;
};

/// Returns a description of the first violated axiom, or nullopt.
std::optional<std::string> validate_algebra(Scalar p, std::size_t dim, const Vector& unit,
                                            const std::vector<std::vector<Vector>>& mul);

/// Jacobson radical via iterated trace forms (characteristic p), certified as a
/// nilpotent two-sided ideal with commutative reduced quotient.
Subspace radical(const Algebra& a);

/// table[g][h] = index of g h.
AlgebraPtr make_group_algebra(const std::vector<std::vector<std::size_t>>& table, Scalar p);

/// Commutative F_p[x] or F_p[x,y] modulo monomial relations, given as exponent
/// vectors of length `num_vars`. Basis ordered by degree, then x before y.
AlgebraPtr make_monomial_quotient(std::size_t num_vars, const std::vector<std::vector<std::size_t>>& relations,
                                  Scalar p, std::size_t cutoff = 64);

/// Upper-triangular 2x2 matrices over F_p, basis e11, e12, e22.
AlgebraPtr make_upper_triangular(Scalar p);

}  // namespace homct
