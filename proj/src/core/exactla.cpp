#include "exactla.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace homct::la {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Scalar pow_mod(Scalar a, std::uint64_t e, Scalar p) {
    std::uint64_t result = 1 % p, base = a % p;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Scalar>(result);
}

Scalar inv_mod(Scalar a, Scalar p) {
    require(a % p != 0, ErrorCode::InvalidArgument, "inverse of zero in F_p");
    return pow_mod(a, p - 2, p);
}

Scalar reduce(long long v, Scalar p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Scalar p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, Scalar p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, Scalar p,
                         std::size_t cols_if_empty) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == cols, ErrorCode::DimensionMismatch, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = reduce(rows[r][c], p);
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows, Scalar p) {
    Matrix m(rows, cols.size(), p);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        require(cols[c].size() == rows, ErrorCode::DimensionMismatch, "column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require(cols_ == rhs.rows_, ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_, p_);
    if (p_ == 2) {
        // XOR of bit-packed rhs rows selected by each lhs row.
        const std::size_t words = (rhs.cols_ + 63) / 64;
        std::vector<std::uint64_t> packed(rhs.rows_ * words, 0), acc(words);
        for (std::size_t k = 0; k < rhs.rows_; ++k)
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                if (rhs(k, j)) packed[k * words + j / 64] |= std::uint64_t{1} << (j % 64);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            const Scalar* a = data_.data() + i * cols_;
            for (std::size_t k = 0; k < cols_; ++k) {
                if (!a[k]) continue;
                const std::uint64_t* b = packed.data() + k * words;
                for (std::size_t w = 0; w < words; ++w) acc[w] ^= b[w];
            }
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) = static_cast<Scalar>((acc[j / 64] >> (j % 64)) & 1u);
        }
        return out;
    }
    std::vector<std::uint64_t> acc(rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const Scalar* a = data_.data() + i * cols_;
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t aik = a[k];
            if (aik == 0) continue;
            const Scalar* b = rhs.data_.data() + k * rhs.cols_;
            for (std::size_t j = 0; j < rhs.cols_; ++j) acc[j] += aik * b[j];
        }
        Scalar* o = out.data_.data() + i * rhs.cols_;
        for (std::size_t j = 0; j < rhs.cols_; ++j) o[j] = static_cast<Scalar>(acc[j] % p_);
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::DimensionMismatch,
            "matrix sum shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = add_mod(data_[i], rhs.data_[i], p_);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::DimensionMismatch,
            "matrix difference shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], rhs.data_[i], p_);
    return out;
}

Matrix Matrix::scaled(Scalar s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = mul_mod(x, s, p_);
    return out;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
    require(v.size() == cols_, ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        const Scalar* a = data_.data() + i * cols_;
        for (std::size_t k = 0; k < cols_; ++k) acc += static_cast<std::uint64_t>(a[k]) * v[k];
        out[i] = static_cast<Scalar>(acc % p_);
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != (r == c ? 1u % p_ : 0u)) return false;
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::DimensionMismatch, "block out of range");
    Matrix b(nr, nc, p_);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorCode::DimensionMismatch,
            "set_block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
    Matrix out(rows_, cols.size(), p_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
    return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
    Matrix out(rows.size(), cols_, p_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy_n(data_.begin() + rows[i] * cols_, cols_, out.data_.begin() + i * cols_);
    return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_, ErrorCode::DimensionMismatch, "hstack row mismatch");
    Matrix out(a.rows_, a.cols_ + b.cols_, a.p_);
    out.set_block(0, 0, a);
    out.set_block(0, a.cols_, b);
    return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "vstack column mismatch");
    Matrix out(a.rows_ + b.rows_, a.cols_, a.p_);
    std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

Vector zero_vector(std::size_t n) { return Vector(n, 0); }

Vector add(const Vector& a, const Vector& b, Scalar p) {
    require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = add_mod(a[i], b[i], p);
    return out;
}

Vector sub(const Vector& a, const Vector& b, Scalar p) {
    require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = sub_mod(a[i], b[i], p);
    return out;
}

Vector scale(const Vector& a, Scalar s, Scalar p) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul_mod(a[i], s, p);
    return out;
}

void axpy(Vector& y, Scalar a, std::span<const Scalar> x, Scalar p) {
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i]) y[i] = static_cast<Scalar>((y[i] + static_cast<std::uint64_t>(a) * x[i]) % p);
}

bool is_zero(std::span<const Scalar> v) {
    return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b, Scalar p) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<std::uint64_t>(a[i]) * b[i];
    return static_cast<Scalar>(acc % p);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const Scalar p = a.modulus();
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Scalar x = a(i, j);
            if (!x) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = mul_mod(x, b(k, l), p);
        }
    return out;
}

namespace {

// Gauss-Jordan over F_2 on bit-packed rows [m | companion].
std::vector<std::size_t> eliminate_f2(Matrix& m, Matrix* companion) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t extra = companion ? companion->cols() : 0;
    const std::size_t width = cols + extra, words = (width + 63) / 64;
    std::vector<std::uint64_t> bits(rows * words, 0);
    auto word = [&](std::size_t r) { return bits.data() + r * words; };
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t* w = word(r);
        for (std::size_t c = 0; c < cols; ++c)
            if (m(r, c)) w[c / 64] |= std::uint64_t{1} << (c % 64);
        for (std::size_t c = 0; c < extra; ++c)
            if ((*companion)(r, c)) w[(cols + c) / 64] |= std::uint64_t{1} << ((cols + c) % 64);
    }
    auto bit = [&](std::size_t r, std::size_t c) { return (word(r)[c / 64] >> (c % 64)) & 1u; };
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && !bit(piv, c)) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(word(piv), word(piv) + words, word(r));
        const std::uint64_t* src = word(r);
        const std::size_t from = c / 64;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || !bit(i, c)) continue;
            std::uint64_t* t = word(i);
            for (std::size_t k = from; k < words; ++k) t[k] ^= src[k];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = static_cast<Scalar>(bit(i, c));
        for (std::size_t c = 0; c < extra; ++c) (*companion)(i, c) = static_cast<Scalar>(bit(i, cols + c));
    }
    return pivots;
}

// In-place Gauss-Jordan elimination. If `companion` is non-null the same row
// operations are applied to it (used to record the transform).
std::vector<std::size_t> eliminate(Matrix& m, Matrix* companion) {
    const Scalar p = m.modulus();
    if (p == 2) return eliminate_f2(m, companion);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    auto swap_rows = [](Matrix& x, std::size_t a, std::size_t b) {
        if (a == b) return;
        auto ra = x.row(a), rb = x.row(b);
        std::swap_ranges(ra.begin(), ra.end(), rb.begin());
    };
    auto row_op = [p](Matrix& x, std::size_t target, std::size_t src, Scalar factor, std::size_t from) {
        // row_target -= factor * row_src
        const Scalar f = neg_mod(factor, p);
        Scalar* t = x.row(target).data();
        const Scalar* s = x.row(src).data();
        const std::size_t n = x.cols();
        for (std::size_t j = from; j < n; ++j) {
            const std::uint64_t v = t[j] + static_cast<std::uint64_t>(f) * s[j];
            t[j] = static_cast<Scalar>(v % p);
        }
    };
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        swap_rows(m, r, piv);
        if (companion) swap_rows(*companion, r, piv);
        const Scalar inv = inv_mod(m(r, c), p);
        if (inv != 1) {
            for (auto& x : m.row(r)) x = mul_mod(x, inv, p);
            if (companion)
                for (auto& x : companion->row(r)) x = mul_mod(x, inv, p);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Scalar f = m(i, c);
            if (!f) continue;
            row_op(m, i, r, f, c);
            if (companion) row_op(*companion, i, r, f, 0);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rref rref(const Matrix& m) {
    Rref out{m, {}, 0};
    out.pivots = eliminate(out.reduced, nullptr);
    out.rank = out.pivots.size();
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<Matrix> inverse(const Matrix& m) {
    require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    Matrix work = m;
    Matrix inv = Matrix::identity(m.rows(), m.modulus());
    if (eliminate(work, &inv).size() != m.rows()) return std::nullopt;
    return inv;
}

// --- Subspace ---------------------------------------------------------------

Subspace Subspace::span_rows(const Matrix& spanning) {
    Rref r = rref(spanning);
    Subspace s;
    s.basis_ = r.reduced.block(0, 0, r.rank, spanning.cols());
    s.pivots_ = std::move(r.pivots);
    return s;
}

Subspace Subspace::span_vectors(const std::vector<Vector>& vs, std::size_t ambient, Scalar p) {
    Matrix m(vs.size(), ambient, p);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        require(vs[i].size() == ambient, ErrorCode::DimensionMismatch, "span vector length mismatch");
        std::copy(vs[i].begin(), vs[i].end(), m.row(i).begin());
    }
    return span_rows(m);
}

Subspace Subspace::zero(std::size_t ambient, Scalar p) {
    Subspace s;
    s.basis_ = Matrix(0, ambient, p);
    return s;
}

Subspace Subspace::full(std::size_t ambient, Scalar p) {
    Subspace s;
    s.basis_ = Matrix::identity(ambient, p);
    s.pivots_.resize(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
    return s;
}

Vector Subspace::basis_vector(std::size_t i) const {
    auto r = basis_.row(i);
    return Vector(r.begin(), r.end());
}

std::vector<std::size_t> Subspace::non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

Vector Subspace::reduce(std::span<const Scalar> v) const {
    require(v.size() == ambient_dim(), ErrorCode::DimensionMismatch, "subspace reduce length mismatch");
    const Scalar p = modulus();
    Vector out(v.begin(), v.end());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        Scalar f = out[pivots_[r]];
        if (f) axpy(out, neg_mod(f, p), basis_.row(r), p);
    }
    return out;
}

bool Subspace::contains(std::span<const Scalar> v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Vector Subspace::coords(std::span<const Scalar> v) const {
    require(contains(v), ErrorCode::InvalidArgument, "vector not in subspace");
    Vector c(dim());
    for (std::size_t r = 0; r < dim(); ++r) c[r] = v[pivots_[r]];
    return c;
}

Matrix Subspace::quotient_map() const {
    const Scalar p = modulus();
    auto np = non_pivots();
    Matrix q(np.size(), ambient_dim(), p);
    for (std::size_t j = 0; j < np.size(); ++j) {
        const std::size_t c = np[j];
        q(j, c) = 1 % p;
        for (std::size_t r = 0; r < pivots_.size(); ++r)
            q(j, pivots_[r]) = sub_mod(q(j, pivots_[r]), basis_(r, c), p);
    }
    return q;
}

Subspace Subspace::sum(const Subspace& other) const {
    return span_rows(Matrix::vstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    // v in both iff quotient maps kill it: kernel of stacked quotient maps.
    return kernel_basis(Matrix::vstack(quotient_map(), other.quotient_map()));
}

Subspace kernel_basis(const Matrix& m) {
    const Scalar p = m.modulus();
    Rref r = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : r.pivots) is_pivot[c] = 1;
    std::vector<Vector> vs;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols(), 0);
        v[f] = 1 % p;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = neg_mod(r.reduced(i, f), p);
        vs.push_back(std::move(v));
    }
    return Subspace::span_vectors(vs, m.cols(), p);
}

Subspace image_basis(const Matrix& m) { return Subspace::span_rows(m.transpose()); }

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
    return LinearSolver(m).solve(rhs);
}

Subspace preimage(const Matrix& m, const Subspace& s) {
    require(s.ambient_dim() == m.rows(), ErrorCode::DimensionMismatch, "preimage: subspace/codomain mismatch");
    Matrix q = s.quotient_map();
    if (q.rows() == 0) return Subspace::full(m.cols(), m.modulus());
    return kernel_basis(q * m);
}

Matrix quotient_and_induced(const Matrix& f, const Subspace& dom_sub, const Subspace& cod_sub) {
    require(dom_sub.ambient_dim() == f.cols() && cod_sub.ambient_dim() == f.rows(),
            ErrorCode::DimensionMismatch, "quotient_and_induced: shape mismatch");
    const Matrix qc = cod_sub.quotient_map();
    if (dom_sub.dim() > 0 && qc.rows() > 0) {
        require((qc * (f * dom_sub.basis_columns())).is_zero(), ErrorCode::NotSubmoduleCompatible,
                "not submodule-compatible: f(dom_sub) is not inside cod_sub");
    }
    return (qc * f).select_columns(dom_sub.non_pivots());
}

// --- LinearSolver ------------------------------------------------------------

LinearSolver::LinearSolver(const Matrix& m)
    : rows_(m.rows()), cols_(m.cols()), p_(m.modulus()), transform_(Matrix::identity(m.rows(), m.modulus())) {
    Matrix work = m;
    pivots_ = eliminate(work, &transform_);
    rank_ = pivots_.size();
}

std::optional<Vector> LinearSolver::solve(std::span<const Scalar> rhs) const {
    require(rhs.size() == rows_, ErrorCode::DimensionMismatch, "solve: rhs length mismatch");
    Vector c = transform_.apply(rhs);
    for (std::size_t r = rank_; r < rows_; ++r)
        if (c[r]) return std::nullopt;
    Vector x(cols_, 0);
    for (std::size_t r = 0; r < rank_; ++r) x[pivots_[r]] = c[r];
    return x;
}

// --- Subquotient -------------------------------------------------------------

Subquotient::Subquotient(Subspace top, Subspace bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
    require(top_.contains(bottom_), ErrorCode::InvalidArgument, "subquotient: bottom not inside top");
    const Scalar p = top_.modulus();
    Matrix reduced(top_.dim(), top_.ambient_dim(), p);
    for (std::size_t i = 0; i < top_.dim(); ++i) {
        Vector v = bottom_.reduce(top_.basis().row(i));
        std::copy(v.begin(), v.end(), reduced.row(i).begin());
    }
    Rref r = rref(reduced);
    reps_ = r.reduced.block(0, 0, r.rank, top_.ambient_dim());
    rep_pivots_ = std::move(r.pivots);
}

Vector Subquotient::rep(std::size_t j) const {
    auto r = reps_.row(j);
    return Vector(r.begin(), r.end());
}

Vector Subquotient::coords(std::span<const Scalar> v) const {
    require(top_.contains(v), ErrorCode::InvalidArgument, "subquotient: vector outside top space");
    Vector w = bottom_.reduce(v);
    Vector c(dim());
    for (std::size_t j = 0; j < dim(); ++j) c[j] = w[rep_pivots_[j]];
    return c;
}

Vector Subquotient::element(std::span<const Scalar> coords) const {
    Vector v(ambient_dim(), 0);
    for (std::size_t j = 0; j < dim(); ++j) axpy(v, coords[j], reps_.row(j), modulus());
    return v;
}

}  // namespace homct::la
