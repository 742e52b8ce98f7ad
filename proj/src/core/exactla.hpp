#pragma once
// Dense exact linear algebra over a prime field F_p.
//
// Vectors are column vectors; a rows x cols Matrix acts on vectors of length
// cols. Subspaces keep their basis as the rows of a matrix in canonical
// reduced row-echelon form, so two subspaces are equal iff their bases are
// equal entry-wise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace homct::la {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

bool is_prime(std::uint64_t n);

inline Scalar add_mod(Scalar a, Scalar b, Scalar p) {
    Scalar s = a + b;
    return s >= p ? s - p : s;
}
inline Scalar sub_mod(Scalar a, Scalar b, Scalar p) { return a >= b ? a - b : a + p - b; }
inline Scalar mul_mod(Scalar a, Scalar b, Scalar p) {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p);
}
inline Scalar neg_mod(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }
Scalar inv_mod(Scalar a, Scalar p);
Scalar pow_mod(Scalar a, std::uint64_t e, Scalar p);
/// Reduces an arbitrary signed integer into [0, p).
Scalar reduce(long long v, Scalar p);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Scalar p);

    static Matrix identity(std::size_t n, Scalar p);
    static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Scalar p,
                            std::size_t cols_if_empty = 0);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows, Scalar p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar modulus() const { return p_; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;
    const std::vector<Scalar>& data() const { return data_; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Scalar s) const;
    Vector apply(std::span<const Scalar> v) const;
    Matrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    /// Rows [r0, r0+nr) and columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix select_columns(const std::vector<std::size_t>& cols) const;
    Matrix select_rows(const std::vector<std::size_t>& rows) const;
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
    }

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Scalar p_ = 2;
    std::vector<Scalar> data_;
};

Vector zero_vector(std::size_t n);
Vector add(const Vector& a, const Vector& b, Scalar p);
Vector sub(const Vector& a, const Vector& b, Scalar p);
Vector scale(const Vector& a, Scalar s, Scalar p);
void axpy(Vector& y, Scalar a, std::span<const Scalar> x, Scalar p);  // y += a x
bool is_zero(std::span<const Scalar> v);
Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b, Scalar p);
Matrix kron(const Matrix& a, const Matrix& b);

struct Rref {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

Rref rref(const Matrix& m);

class Subspace {
public:
    Subspace() = default;
    /// Span of the rows of `spanning` (any matrix with cols = ambient).
    static Subspace span_rows(const Matrix& spanning);
    static Subspace span_vectors(const std::vector<Vector>& vs, std::size_t ambient, Scalar p);
    static Subspace zero(std::size_t ambient, Scalar p);
    static Subspace full(std::size_t ambient, Scalar p);

    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    Scalar modulus() const { return basis_.modulus(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vector basis_vector(std::size_t i) const;
    /// Basis vectors as the columns of an ambient x dim matrix.
    Matrix basis_columns() const { return basis_.transpose(); }
    std::vector<std::size_t> non_pivots() const;

    /// v minus its component along the basis (zero at pivot positions).
    Vector reduce(std::span<const Scalar> v) const;
    bool contains(std::span<const Scalar> v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in the basis; v must lie in the subspace.
    Vector coords(std::span<const Scalar> v) const;
    /// (ambient - dim) x ambient matrix whose kernel is this subspace: the
    /// coordinates of the quotient on the non-pivot complement.
    Matrix quotient_map() const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel_basis(const Matrix& m);
Subspace image_basis(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Inverse of a square matrix, or nullopt if singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Solves m x = rhs, returning the solution with all free variables zero.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);
/// {v : m v in s}.
Subspace preimage(const Matrix& m, const Subspace& s);
/// Matrix of the map dom/dom_sub -> cod/cod_sub induced by f, in the
/// standard-basis complements given by the non-pivot columns.
Matrix quotient_and_induced(const Matrix& f, const Subspace& dom_sub, const Subspace& cod_sub);

/// Factorisation for repeated solves against one matrix.
class LinearSolver {
public:
    LinearSolver() = default;
    explicit LinearSolver(const Matrix& m);
    std::optional<Vector> solve(std::span<const Scalar> rhs) const;
    std::size_t rank() const { return rank_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
    Scalar p_ = 2;
    Matrix transform_;  // transform_ * m = rref(m)
    std::vector<std::size_t> pivots_;
};

/// Subquotient Z / B with B inside Z, e.g. cycles modulo boundaries.
/// Class representatives are reduced against B and in RREF among themselves.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(Subspace top, Subspace bottom);

    std::size_t dim() const { return reps_.rows(); }
    std::size_t ambient_dim() const { return top_.ambient_dim(); }
    Scalar modulus() const { return top_.modulus(); }
    const Subspace& top() const { return top_; }
    const Subspace& bottom() const { return bottom_; }
    /// Representative of the j-th basis class.
    Vector rep(std::size_t j) const;
    const Matrix& reps() const { return reps_; }
    /// Coordinates of the class of v (v must lie in top).
    Vector coords(std::span<const Scalar> v) const;
    bool is_zero_class(std::span<const Scalar> v) const { return bottom_.contains(v); }
    Vector element(std::span<const Scalar> coords) const;

private:
    Subspace top_, bottom_;
    Matrix reps_;
    std::vector<std::size_t> rep_pivots_;
};

}  // namespace homct::la
