/*
   Copyright 2026 The frobsys authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Test-only oracles, independent of the production code paths they check:
// exact matrix characteristic polynomials (Faddeev-LeVerrier), companion
// and Kronecker constructions, Newton-identity power charpolys, and naive
// point counts over small extension fields.

#ifndef FROBSYS_TESTS_ORACLES_HPP
#define FROBSYS_TESTS_ORACLES_HPP

#include <frobsys/charpoly.hpp>
#include <frobsys/polynomial.hpp>

#include <cstdint>
#include <vector>

namespace oracles {

using frobsys::CharPoly;
using frobsys::FieldPtr;
using frobsys::NFElement;
using frobsys::Polynomial;
using frobsys::Rational;

using Matrix = std::vector<std::vector<NFElement>>;

inline NFElement field_zero(const FieldPtr& F) { return F ? F->zero() : NFElement(Rational(0)); }
inline NFElement field_one(const FieldPtr& F) { return F ? F->one() : NFElement(Rational(1)); }

inline Matrix mat_identity(const FieldPtr& F, std::size_t n) {
    Matrix m(n, std::vector<NFElement>(n, field_zero(F)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = field_one(F);
    return m;
}

inline Matrix mat_mul(const FieldPtr& F, const Matrix& a, const Matrix& b) {
    std::size_t n = a.size();
    Matrix out(n, std::vector<NFElement>(n, field_zero(F)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline Matrix mat_pow(const FieldPtr& F, Matrix a, unsigned long e) {
    Matrix result = mat_identity(F, a.size());
    while (e) {
        if (e & 1) result = mat_mul(F, result, a);
        a = mat_mul(F, a, a);
        e >>= 1;
    }
    return result;
}

inline Matrix mat_direct_sum(const FieldPtr& F, const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), m = b.size();
    Matrix out(n + m, std::vector<NFElement>(n + m, field_zero(F)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out[n + i][n + j] = b[i][j];
    return out;
}

inline Matrix mat_kronecker(const FieldPtr& F, const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), m = b.size();
    Matrix out(n * m, std::vector<NFElement>(n * m, field_zero(F)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][j].is_zero()) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out[i * m + k][j * m + l] = a[i][j] * b[k][l];
        }
    return out;
}

/// Exact inverse by Gauss-Jordan; throws on singular input.
inline Matrix mat_inverse(const FieldPtr& F, Matrix a) {
    std::size_t n = a.size();
    Matrix inv = mat_identity(F, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw frobsys::Error("singular matrix in oracle inverse");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        NFElement s = a[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            NFElement f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Characteristic polynomial det(tI - A) by the Faddeev-LeVerrier recurrence
/// (exact in characteristic zero).
inline Polynomial mat_charpoly(const FieldPtr& F, const Matrix& a) {
    std::size_t n = a.size();
    std::vector<NFElement> c(n + 1, field_zero(F));
    c[n] = field_one(F);
    Matrix m = mat_identity(F, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = mat_mul(F, a, m);
        NFElement tr = field_zero(F);
        for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
        NFElement ck = tr / NFElement(Rational(-static_cast<long>(k)));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) m[i][i] += ck;
    }
    return Polynomial::from_coeffs(F, c);
}

inline Matrix companion(const FieldPtr& F, const Polynomial& monic) {
    std::size_t d = static_cast<std::size_t>(monic.degree());
    Matrix m(d, std::vector<NFElement>(d, field_zero(F)));
    for (std::size_t i = 1; i < d; ++i) m[i][i - 1] = field_one(F);
    for (std::size_t i = 0; i < d; ++i) m[i][d - 1] = -monic.coeff(i);
    return m;
}

/// Second, independent implementation of the power charpoly via Newton
/// power sums: extend the power-sum sequence of the roots, subsample at
/// multiples of n, and rebuild elementary symmetric functions.
inline CharPoly newton_power_charpoly(const CharPoly& P, long n) {
    const FieldPtr& F = P.field();
    const int d = P.degree();
    std::vector<NFElement> a(static_cast<std::size_t>(d) + 1, field_zero(F));
    for (int i = 0; i <= d; ++i) a[static_cast<std::size_t>(i)] = P.poly().coeff(static_cast<std::size_t>(i));

    long need = n * d;
    std::vector<NFElement> s(static_cast<std::size_t>(need) + 1, field_zero(F));
    for (long k = 1; k <= need; ++k) {
        NFElement acc = field_zero(F);
        // s_k + sum_{i=1}^{min(k,d)-?} a_{d-i} s_{k-i} + k a_{d-k} = 0 for k <= d
        long lim = k < d ? k : d;
        for (long i = 1; i <= lim; ++i) {
            if (i == k) break;
            acc += a[static_cast<std::size_t>(d - i)] * s[static_cast<std::size_t>(k - i)];
        }
        if (k <= d) acc += NFElement(Rational(k)) * a[static_cast<std::size_t>(d - k)];
        s[static_cast<std::size_t>(k)] = -acc;
    }

    std::vector<NFElement> e(static_cast<std::size_t>(d) + 1, field_zero(F));
    e[0] = field_one(F);
    for (long j = 1; j <= d; ++j) {
        NFElement acc = field_zero(F);
        for (long i = 1; i <= j; ++i) {
            NFElement term = e[static_cast<std::size_t>(j - i)] * s[static_cast<std::size_t>(n * i)];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        e[static_cast<std::size_t>(j)] = acc / NFElement(Rational(j));
    }
    std::vector<NFElement> coeffs(static_cast<std::size_t>(d) + 1, field_zero(F));
    for (long j = 0; j <= d; ++j) {
        NFElement v = e[static_cast<std::size_t>(j)];
        if (j % 2 == 1) v = -v;
        coeffs[static_cast<std::size_t>(d - j)] = v;
    }
    return CharPoly(F, Polynomial::from_coeffs(F, coeffs));
}

// --- small finite fields for brute-force point counts -----------------

/// F_{p^k} as F_p[x]/(f) with a brute-force irreducible f; k <= 3 is all the
/// tests need, so irreducibility is just "no roots" plus the k=2,3 argument.
struct SmallField {
    std::uint64_t p;
    unsigned k;
    std::vector<std::uint64_t> modulus;  // ascending, monic, degree k

    static SmallField make(std::uint64_t p, unsigned k) {
        SmallField f{p, k, {}};
        if (k == 1) {
            f.modulus = {0, 1};
            return f;
        }
        std::vector<std::uint64_t> m(k + 1, 0);
        m[k] = 1;
        // enumerate constant/linear/quadratic parts until irreducible
        std::uint64_t total = 1;
        for (unsigned i = 0; i < k; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i) {
                m[i] = c % p;
                c /= p;
            }
            bool has_root = false;
            for (std::uint64_t x = 0; x < p && !has_root; ++x) {
                std::uint64_t acc = 0;
                for (unsigned i = k + 1; i-- > 0;) acc = (acc * x + m[i]) % p;
                if (acc == 0) has_root = true;
            }
            if (!has_root) {
                f.modulus = m;
                return f;  // degree 2 or 3 with no roots is irreducible
            }
        }
        throw frobsys::Error("no irreducible polynomial found");
    }

    using Elem = std::vector<std::uint64_t>;  // length k, ascending

    Elem zero() const { return Elem(k, 0); }

    std::uint64_t size() const {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        return q;
    }

    Elem decode(std::uint64_t code) const {
        Elem e(k, 0);
        for (unsigned i = 0; i < k; ++i) {
            e[i] = code % p;
            code /= p;
        }
        return e;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<std::uint64_t> prod(2 * k - 1, 0);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        for (std::size_t i = prod.size(); i-- > k;) {
            std::uint64_t c = prod[i];
            if (!c) continue;
            prod[i] = 0;
            for (unsigned j = 0; j < k; ++j)
                prod[i - k + j] = (prod[i - k + j] + (p - c % p) * modulus[j]) % p;
        }
        prod.resize(k);
        return prod;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem out(k, 0);
        for (unsigned i = 0; i < k; ++i) out[i] = (a[i] + b[i]) % p;
        return out;
    }

    Elem scalar(std::uint64_t c) const {
        Elem out(k, 0);
        out[0] = c % p;
        return out;
    }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = scalar(1);
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (auto v : a)
            if (v) return false;
        return true;
    }
};

/// #E(F_{p^k}) for y^2 = x^3 + a x + b by full enumeration with the
/// quadratic character chi(z) = z^((q-1)/2).
inline long count_points_ext(long a, long b, std::uint64_t p, unsigned k) {
    SmallField F = SmallField::make(p, k);
    std::uint64_t q = F.size();
    auto am = F.scalar(static_cast<std::uint64_t>(((a % static_cast<long>(p)) + static_cast<long>(p))) % p);
    auto bm = F.scalar(static_cast<std::uint64_t>(((b % static_cast<long>(p)) + static_cast<long>(p))) % p);
    long count = 1;  // point at infinity
    for (std::uint64_t code = 0; code < q; ++code) {
        auto x = F.decode(code);
        auto fx = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(am, x), bm));
        if (F.is_zero(fx)) {
            count += 1;
            continue;
        }
        auto chi = F.pow(fx, (q - 1) / 2);
        bool is_one = !F.is_zero(chi) && chi[0] == 1;
        for (unsigned i = 1; i < F.k; ++i)
            if (chi[i]) is_one = false;
        count += is_one ? 2 : 0;
    }
    return count;
}

}  // namespace oracles

#endif
