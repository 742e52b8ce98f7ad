#include "algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "error.hpp"

namespace homct {

using la::add_mod;
using la::axpy;
using la::mul_mod;
using la::neg_mod;
using la::sub_mod;

namespace {

std::string make_key(Scalar p, const std::vector<std::vector<Vector>>& mul) {
    std::string key;
    key.reserve(16 + mul.size() * mul.size() * mul.size() * 4);
    auto put = [&key](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(p);
    put(static_cast<std::uint32_t>(mul.size()));
    for (const auto& row : mul)
        for (const auto& v : row)
            for (Scalar x : v) put(x);
    return key;
}

// Integer matrix power modulo m, entries < m.
std::vector<std::uint64_t> int_matpow_trace_input(const Matrix& l, std::uint64_t m, std::uint64_t e,
                                                   std::size_t n) {
    std::vector<std::uint64_t> result(n * n, 0), base(n * n), tmp(n * n);
    for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1 % m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) base[i * n + j] = l(i, j) % m;
    auto mulm = [n, m, &tmp](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                             std::vector<std::uint64_t>& out) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc = (acc + a[i * n + k] * b[k * n + j]) % m;
                tmp[i * n + j] = acc;
            }
        out = tmp;
    };
    while (e) {
        if (e & 1) mulm(result, base, result);
        mulm(base, base, base);
        e >>= 1;
    }
    return result;
}

Vector power(const Algebra& a, Vector x, std::uint64_t e) {
    Vector result = a.unit();
    while (e) {
        if (e & 1) result = a.multiply(result, x);
        x = a.multiply(x, x);
        e >>= 1;
    }
    return result;
}

Subspace span_products(const Algebra& a, const Subspace& u, const Subspace& v) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) vs.push_back(a.multiply(u.basis_vector(i), v.basis_vector(j)));
    return Subspace::span_vectors(vs, a.dim(), a.p());
}

// Primitive idempotents of the split commutative reduced algebra A/J, as
// J-reduced representatives.
std::vector<Vector> split_idempotents(const Algebra& a, const Subspace& j) {
    const Scalar p = a.p();
    auto mul = [&](const Vector& x, const Vector& y) { return j.reduce(a.multiply(x, y)); };
    std::vector<Vector> idems{j.reduce(a.unit())};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        std::vector<Vector> next;
        const Vector bk = a.basis_vector(k);
        for (const auto& e : idems) {
            const Vector x = mul(e, bk);
            for (Scalar c = 0; c < p; ++c) {
                Vector y = la::sub(x, la::scale(e, c, p), p);
                Vector pw = e;
                for (Scalar t = 0; t + 1 < p; ++t) pw = mul(pw, y);
                Vector f = la::sub(e, pw, p);
                if (!la::is_zero(f)) next.push_back(std::move(f));
            }
        }
        idems = std::move(next);
    }
    return idems;
}

Vector lift_idempotent(const Algebra& a, Vector x) {
    const Scalar p = a.p();
    for (int it = 0; it < 128; ++it) {
        Vector x2 = a.multiply(x, x);
        if (x2 == x) return x;
        Vector x3 = a.multiply(x2, x);
        x = la::sub(la::scale(x2, 3 % p, p), la::scale(x3, 2 % p, p), p);
    }
    fail(ErrorCode::RadicalFailed, "idempotent lifting did not converge");
}

std::shared_ptr<const BasicStructure> compute_basic(const Algebra& a) {
    const Scalar p = a.p();
    const std::size_t n = a.dim();
    auto bs = std::make_shared<BasicStructure>();
    bs->radical = radical(a);
    const Subspace& j = bs->radical;
    bs->radical_squared = span_products(a, j, j);

    // Orthogonal lift of the primitive idempotents of A/J.
    auto reduced = split_idempotents(a, j);
    Vector f = a.unit();
    for (std::size_t s = 0; s < reduced.size(); ++s) {
        Vector e;
        if (s + 1 == reduced.size()) {
            e = f;
        } else {
            e = lift_idempotent(a, a.multiply(a.multiply(f, reduced[s]), f));
        }
        bs->idempotents.push_back(e);
        f = la::sub(f, e, p);
    }
    require(la::is_zero(f), ErrorCode::RadicalFailed, "idempotents do not sum to one");

    for (const auto& e : bs->idempotents) {
        const Vector eb = j.reduce(e);
        std::size_t lead = 0;
        while (lead < n && eb[lead] == 0) ++lead;
        require(lead < n, ErrorCode::RadicalFailed, "idempotent lies in the radical");
        std::vector<Scalar> chi(n);
        for (std::size_t i = 0; i < n; ++i) {
            Vector z = j.reduce(a.multiply(a.basis_vector(i), e));
            const Scalar c = mul_mod(z[lead], la::inv_mod(eb[lead], p), p);
            require(la::sub(z, la::scale(eb, c, p), p) == la::zero_vector(n), ErrorCode::UnsupportedAlgebra,
                    "basis element does not act by a scalar on a simple module");
            chi[i] = c;
        }
        bs->characters.push_back(std::move(chi));
    }

    for (std::size_t s = 0; s < bs->idempotents.size(); ++s) {
        const Vector& e = bs->idempotents[s];
        ProjectiveData pd;
        pd.simple = s;
        pd.span = la::image_basis(a.right_mult(e));
        const std::size_t d = pd.span.dim();
        for (std::size_t i = 0; i < n; ++i) {
            Matrix act(d, d, p);
            for (std::size_t c = 0; c < d; ++c) {
                Vector col = pd.span.coords(a.multiply(a.basis_vector(i), pd.span.basis_vector(c)));
                for (std::size_t r = 0; r < d; ++r) act(r, c) = col[r];
            }
            pd.action.push_back(std::move(act));
        }
        pd.generator = pd.span.coords(e);
        bs->projectives.push_back(std::move(pd));
    }

    bs->generators = bs->idempotents;
    Subspace acc = bs->radical_squared;
    for (std::size_t r = 0; r < j.dim(); ++r) {
        Vector v = j.basis_vector(r);
        if (acc.contains(v)) continue;
        bs->generators.push_back(v);
        acc = acc.sum(Subspace::span_vectors({v}, n, p));
    }
    return bs;
}

}  // namespace

std::optional<std::string> validate_algebra(Scalar p, std::size_t dim, const Vector& unit,
                                            const std::vector<std::vector<Vector>>& mul) {
    if (!la::is_prime(p)) return "modulus " + std::to_string(p) + " is not prime";
    if (p >= 65536) return "modulus must be below 65536";
    if (unit.size() != dim) return "unit has wrong length";
    if (mul.size() != dim) return "structure table has wrong number of rows";
    for (std::size_t i = 0; i < dim; ++i) {
        if (mul[i].size() != dim) return "structure table row " + std::to_string(i) + " has wrong length";
        for (std::size_t j = 0; j < dim; ++j) {
            if (mul[i][j].size() != dim)
                return "product (" + std::to_string(i) + "," + std::to_string(j) + ") has wrong length";
            for (Scalar x : mul[i][j])
                if (x >= p) return "structure constant not reduced mod p";
        }
    }
    auto times = [&](const Vector& x, const Vector& y) {
        Vector out(dim, 0);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                const Scalar c = mul_mod(x[i], y[j], p);
                if (c) axpy(out, c, mul[i][j], p);
            }
        }
        return out;
    };
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                Vector ek(dim, 0), ei(dim, 0);
                ek[k] = 1 % p;
                ei[i] = 1 % p;
                if (times(mul[i][j], ek) != times(ei, mul[j][k]))
                    return "associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                           std::to_string(k) + ")";
            }
    for (std::size_t j = 0; j < dim; ++j) {
        Vector ej(dim, 0);
        ej[j] = 1 % p;
        if (times(unit, ej) != ej) return "unit is not a left identity at e_" + std::to_string(j);
        if (times(ej, unit) != ej) return "unit is not a right identity at e_" + std::to_string(j);
    }
    return std::nullopt;
}

AlgebraPtr Algebra::create(Scalar p, std::vector<std::string> basis_names, Vector unit,
                           std::vector<std::vector<Vector>> mul) {
    require(basis_names.size() == mul.size(), ErrorCode::Validation, "basis names do not match dimension");
    if (auto err = validate_algebra(p, mul.size(), unit, mul)) fail(ErrorCode::Validation, *err);
    std::shared_ptr<Algebra> a(new Algebra());
    a->p_ = p;
    a->names_ = std::move(basis_names);
    a->unit_ = std::move(unit);
    a->mul_ = std::move(mul);
    a->key_ = make_key(p, a->mul_);
    return a;
}

Vector Algebra::basis_vector(std::size_t i) const {
    Vector v(dim(), 0);
    v[i] = 1 % p_;
    return v;
}

Vector Algebra::multiply(const Vector& a, const Vector& b) const {
    const std::size_t n = dim();
    Vector out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!b[j]) continue;
            axpy(out, mul_mod(a[i], b[j], p_), mul_[i][j], p_);
        }
    }
    return out;
}

Matrix Algebra::left_mult(const Vector& a) const {
    const std::size_t n = dim();
    Matrix m(n, n, p_);
    for (std::size_t j = 0; j < n; ++j) {
        Vector col(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (a[i]) axpy(col, a[i], mul_[i][j], p_);
        for (std::size_t r = 0; r < n; ++r) m(r, j) = col[r];
    }
    return m;
}

Matrix Algebra::right_mult(const Vector& a) const {
    const std::size_t n = dim();
    Matrix m(n, n, p_);
    for (std::size_t j = 0; j < n; ++j) {
        Vector col(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (a[i]) axpy(col, a[i], mul_[j][i], p_);
        for (std::size_t r = 0; r < n; ++r) m(r, j) = col[r];
    }
    return m;
}

bool Algebra::is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (mul_[i][j] != mul_[j][i]) return false;
    return true;
}

AlgebraPtr Algebra::opposite() const {
    if (auto orig = original_.lock()) return orig;
    std::call_once(opposite_once_, [this] {
        const std::size_t n = dim();
        std::vector<std::vector<Vector>> mul(n, std::vector<Vector>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mul[i][j] = mul_[j][i];
        std::shared_ptr<Algebra> op(new Algebra());
        op->p_ = p_;
        op->names_ = names_;
        op->unit_ = unit_;
        op->mul_ = std::move(mul);
        op->key_ = make_key(p_, op->mul_);
        op->original_ = shared_from_this();
        opposite_ = op;
    });
    return opposite_;
}

bool Algebra::is_opposite_of(const Algebra& other) const {
    if (other.p_ != p_ || other.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (mul_[i][j] != other.mul_[j][i]) return false;
    return true;
}

const BasicStructure& Algebra::basic() const {
    std::call_once(basic_once_, [this] { basic_ = compute_basic(*this); });
    return *basic_;
}

Subspace radical(const Algebra& a) {
    const Scalar p = a.p();
    const std::size_t n = a.dim();
    std::size_t levels = 0;
    for (std::uint64_t q = p; q <= n; q *= p) ++levels;

    Subspace current = Subspace::full(n, p);
    std::uint64_t pi = 1;  // p^i
    for (std::size_t i = 0; i <= levels && current.dim() > 0; ++i, pi *= p) {
        const std::uint64_t modulus = pi * p;
        auto g = [&](const Vector& x) -> Scalar {
            auto pw = int_matpow_trace_input(a.left_mult(x), modulus, pi, n);
            std::uint64_t tr = 0;
            for (std::size_t d = 0; d < n; ++d) tr = (tr + pw[d * n + d]) % modulus;
            require(tr % pi == 0, ErrorCode::RadicalFailed, "radical computation failed");
            return static_cast<Scalar>((tr / pi) % p);
        };
        Matrix form(n, current.dim(), p);
        for (std::size_t r = 0; r < current.dim(); ++r) {
            const Vector b = current.basis_vector(r);
            for (std::size_t y = 0; y < n; ++y) form(y, r) = g(a.multiply(b, a.basis_vector(y)));
        }
        Subspace coeffs = la::kernel_basis(form);
        Matrix next = coeffs.basis() * current.basis();
        current = Subspace::span_rows(next);
    }

    // Certificate: two-sided ideal, nilpotent, quotient commutative with x^p = x.
    for (std::size_t r = 0; r < current.dim(); ++r) {
        const Vector b = current.basis_vector(r);
        for (std::size_t y = 0; y < n; ++y) {
            const Vector e = a.basis_vector(y);
            require(current.contains(a.multiply(e, b)) && current.contains(a.multiply(b, e)),
                    ErrorCode::RadicalFailed, "radical computation failed: not an ideal");
        }
    }
    Subspace pw = current;
    for (std::size_t k = 0; k <= n + 1 && pw.dim() > 0; ++k) pw = span_products(a, pw, current);
    require(pw.dim() == 0, ErrorCode::RadicalFailed, "radical computation failed: not nilpotent");
    for (std::size_t i = 0; i < n; ++i) {
        const Vector ei = a.basis_vector(i);
        for (std::size_t j = i + 1; j < n; ++j)
            require(current.contains(la::sub(a.product(i, j), a.product(j, i), p)), ErrorCode::UnsupportedAlgebra,
                    "unsupported algebra class: semisimple quotient is not commutative");
        require(current.contains(la::sub(power(a, ei, p), ei, p)), ErrorCode::UnsupportedAlgebra,
                "unsupported algebra class: semisimple quotient is not split over F_p");
    }
    return current;
}

AlgebraPtr make_group_algebra(const std::vector<std::vector<std::size_t>>& table, Scalar p) {
    const std::size_t n = table.size();
    require(n > 0, ErrorCode::NotAGroup, "not a group: empty table");
    for (const auto& row : table) {
        require(row.size() == n, ErrorCode::NotAGroup, "not a group: table is not square");
        for (auto x : row) require(x < n, ErrorCode::NotAGroup, "not a group: entry out of range");
    }
    std::optional<std::size_t> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
        if (ok) identity = e;
    }
    require(identity.has_value(), ErrorCode::NotAGroup, "not a group: no identity");
    for (std::size_t g = 0; g < n; ++g) {
        bool has_inverse = false;
        for (std::size_t h = 0; h < n && !has_inverse; ++h)
            has_inverse = table[g][h] == *identity && table[h][g] == *identity;
        require(has_inverse, ErrorCode::NotAGroup, "not a group: element " + std::to_string(g) + " has no inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                require(table[table[a][b]][c] == table[a][table[b][c]], ErrorCode::NotAGroup,
                        "not a group: associativity fails");
    std::vector<std::string> names(n);
    std::vector<std::vector<Vector>> mul(n, std::vector<Vector>(n, Vector(n, 0)));
    for (std::size_t g = 0; g < n; ++g) {
        names[g] = g == *identity ? "1" : "g" + std::to_string(g);
        for (std::size_t h = 0; h < n; ++h) mul[g][h][table[g][h]] = 1 % p;
    }
    Vector unit(n, 0);
    unit[*identity] = 1 % p;
    return Algebra::create(p, std::move(names), std::move(unit), std::move(mul));
}

AlgebraPtr make_monomial_quotient(std::size_t num_vars, const std::vector<std::vector<std::size_t>>& relations,
                                  Scalar p, std::size_t cutoff) {
    require(num_vars >= 1 && num_vars <= 2, ErrorCode::InvalidArgument, "monomial quotients support 1 or 2 variables");
    for (const auto& r : relations)
        require(r.size() == num_vars, ErrorCode::InvalidArgument, "relation exponent vector has wrong length");
    auto is_standard = [&](const std::vector<std::size_t>& m) {
        for (const auto& r : relations) {
            bool divides = true;
            for (std::size_t v = 0; v < num_vars; ++v) divides = divides && r[v] <= m[v];
            if (divides) return false;
        }
        return true;
    };
    std::vector<std::vector<std::size_t>> monomials;
    for (std::size_t deg = 0; deg <= cutoff; ++deg) {
        for (std::size_t a = deg + 1; a-- > 0;) {
            std::vector<std::size_t> m{a};
            if (num_vars == 2) m.push_back(deg - a);
            else if (a != deg) continue;
            if (!is_standard(m)) continue;
            require(deg < cutoff, ErrorCode::NotFiniteDimensional, "not finite dimensional within cutoff");
            monomials.push_back(std::move(m));
        }
    }
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = i;
    const std::size_t n = monomials.size();
    const char* var_names[] = {"x", "y"};
    std::vector<std::string> names;
    for (const auto& m : monomials) {
        std::string s;
        for (std::size_t v = 0; v < num_vars; ++v) {
            if (m[v] == 0) continue;
            s += var_names[v];
            if (m[v] > 1) s += "^" + std::to_string(m[v]);
        }
        names.push_back(s.empty() ? "1" : s);
    }
    std::vector<std::vector<Vector>> mul(n, std::vector<Vector>(n, Vector(n, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> prod(num_vars);
            for (std::size_t v = 0; v < num_vars; ++v) prod[v] = monomials[i][v] + monomials[j][v];
            if (auto it = index.find(prod); it != index.end()) mul[i][j][it->second] = 1 % p;
        }
    Vector unit(n, 0);
    unit[0] = 1 % p;
    return Algebra::create(p, std::move(names), std::move(unit), std::move(mul));
}

AlgebraPtr make_upper_triangular(Scalar p) {
    // e11, e12, e22
    std::vector<std::vector<Vector>> mul(3, std::vector<Vector>(3, Vector(3, 0)));
    const Scalar one = 1 % p;
    mul[0][0][0] = one;
    mul[0][1][1] = one;
    mul[1][2][1] = one;
    mul[2][2][2] = one;
    return Algebra::create(p, {"e11", "e12", "e22"}, Vector{one, 0, one}, std::move(mul));
}

}  // namespace homct
