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

#ifndef FROBSYS_POLYNOMIAL_HPP
#define FROBSYS_POLYNOMIAL_HPP

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numfield.hpp"
#include "rational.hpp"

namespace frobsys {

/// Dense univariate polynomial over Q or an explicit number field.
/// Coefficients ascending; no trailing zeros; the zero polynomial has an
/// empty coefficient vector and degree -1.
class Polynomial {
  public:
    Polynomial() = default;

    static Polynomial zero(const FieldPtr& field) { return Polynomial(field, {}); }

    static Polynomial constant(const FieldPtr& field, const NFElement& c) {
        return from_coeffs(field, {c});
    }

    static Polynomial from_coeffs(const FieldPtr& field, std::vector<NFElement> coeffs) {
        Polynomial p(field, {});
        p.c_ = std::move(coeffs);
        for (auto& x : p.c_) x = p.promote(x);
        p.trim();
        return p;
    }

    static Polynomial from_rationals(const FieldPtr& field, const std::vector<Rational>& coeffs) {
        std::vector<NFElement> c;
        c.reserve(coeffs.size());
        for (const auto& r : coeffs) c.emplace_back(r);
        return from_coeffs(field, std::move(c));
    }

    /// t + 0, over the given field.
    static Polynomial variable(const FieldPtr& field) {
        return from_rationals(field, {Rational(0), Rational(1)});
    }

    /// c * t^k
    static Polynomial monomial(const FieldPtr& field, const NFElement& c, std::size_t k) {
        std::vector<NFElement> v(k + 1, field ? field->zero() : NFElement(Rational(0)));
        v[k] = c;
        return from_coeffs(field, std::move(v));
    }

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    const NFElement& leading() const {
        if (is_zero()) throw Error("leading coefficient of the zero polynomial");
        return c_.back();
    }
    NFElement constant_term() const { return coeff(0); }

    NFElement coeff(std::size_t i) const {
        if (i < c_.size()) return c_[i];
        return zero_elem();
    }
    const std::vector<NFElement>& coeffs() const { return c_; }

    Polynomial operator-() const {
        Polynomial out = *this;
        for (auto& x : out.c_) x = -x;
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.require_same_field(b);
        Polynomial out = a;
        if (b.c_.size() > out.c_.size()) out.c_.resize(b.c_.size(), a.zero_elem());
        for (std::size_t i = 0; i < b.c_.size(); ++i) out.c_[i] += b.c_[i];
        out.trim();
        return out;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same_field(b);
        if (a.is_zero() || b.is_zero()) return zero(a.field_);
        Polynomial out(a.field_, {});
        out.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_elem());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                out.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        out.trim();
        return out;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const NFElement& k) const {
        Polynomial out = *this;
        NFElement kk = promote(k);
        for (auto& x : out.c_) x *= kk;
        out.trim();
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Quotient and remainder; the divisor's leading coefficient is inverted,
    /// so this is plain field division.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        require_same_field(divisor);
        if (divisor.is_zero()) throw Error("polynomial division by zero");
        Polynomial rem = *this;
        Polynomial quot(field_, {});
        if (rem.c_.size() >= divisor.c_.size())
            quot.c_.assign(rem.c_.size() - divisor.c_.size() + 1, zero_elem());
        NFElement lead_inv = divisor.c_.back().inverse();
        while (rem.c_.size() >= divisor.c_.size() && !rem.is_zero()) {
            std::size_t k = rem.c_.size() - divisor.c_.size();
            NFElement c = rem.c_.back() * lead_inv;
            quot.c_[k] = c;
            for (std::size_t j = 0; j < divisor.c_.size(); ++j) rem.c_[k + j] -= c * divisor.c_[j];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    Polynomial exact_div(const Polynomial& divisor) const {
        auto [q, r] = divmod(divisor);
        if (!r.is_zero()) throw Error("inexact polynomial division");
        return q;
    }

    Polynomial derivative() const {
        if (degree() <= 0) return zero(field_);
        Polynomial out(field_, {});
        out.c_.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            out.c_.push_back(c_[i] * NFElement(Rational(static_cast<long>(i))));
        out.trim();
        return out;
    }

    NFElement eval(const NFElement& x) const {
        NFElement acc = promote(NFElement(Rational(0)));
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial monic() const {
        if (is_zero()) throw Error("cannot normalize the zero polynomial");
        if (is_monic()) return *this;
        return scaled(leading().inverse());
    }

    Polynomial pow(unsigned long e) const {
        Polynomial result = constant(field_, field_ ? field_->one() : NFElement(Rational(1)));
        Polynomial base = *this;
        while (e) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    template <class Fn>
    Polynomial map_coeffs(const FieldPtr& new_field, Fn&& fn) const {
        std::vector<NFElement> out;
        out.reserve(c_.size());
        for (const auto& x : c_) out.push_back(fn(x));
        return from_coeffs(new_field, std::move(out));
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = c_[i].str();
            if (i == 0) {
                s += cs;
            } else {
                if (cs != "1") s += "(" + cs + ")*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

  private:
    Polynomial(FieldPtr field, std::vector<NFElement> c) : field_(std::move(field)), c_(std::move(c)) {}

    NFElement zero_elem() const { return field_ ? field_->zero() : NFElement(Rational(0)); }

    NFElement promote(const NFElement& x) const {
        if (!field_) {
            if (!x.is_rational_field()) {
                auto r = x.as_rational();
                if (!r) throw FieldMismatchError("coefficient is not rational");
                return NFElement(*r);
            }
            return x;
        }
        if (x.is_rational_field()) return field_->from_rational(x.rat());
        if (!same_field(x.field(), field_)) throw FieldMismatchError("coefficient over the wrong field");
        return x;
    }

    void require_same_field(const Polynomial& o) const {
        if (!same_field(field_, o.field_))
            throw FieldMismatchError("polynomials over different fields");
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldPtr field_;
    std::vector<NFElement> c_;
};

/// Monic gcd over a field.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

namespace detail {

// Ring operations used by the fraction-free determinant: instances for
// field elements and for polynomials over a field.
inline NFElement ring_mul(const NFElement& a, const NFElement& b) { return a * b; }
inline NFElement ring_sub(const NFElement& a, const NFElement& b) { return a - b; }
inline NFElement ring_exact_div(const NFElement& a, const NFElement& b) { return a / b; }
inline bool ring_is_zero(const NFElement& a) { return a.is_zero(); }

inline Polynomial ring_mul(const Polynomial& a, const Polynomial& b) { return a * b; }
inline Polynomial ring_sub(const Polynomial& a, const Polynomial& b) { return a - b; }
inline Polynomial ring_exact_div(const Polynomial& a, const Polynomial& b) { return a.exact_div(b); }
inline bool ring_is_zero(const Polynomial& a) { return a.is_zero(); }

/// Determinant by fraction-free Bareiss elimination with row pivoting.
/// Exact over any integral domain where the divisions are exact.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> m, const R& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    R prev = one;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (ring_is_zero(m[k][k])) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && ring_is_zero(m[swap_row][k])) ++swap_row;
            if (swap_row == n) {
                return ring_sub(one, one);  // zero column: determinant vanishes
            }
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                R num = ring_sub(ring_mul(m[k][k], m[i][j]), ring_mul(m[i][k], m[k][j]));
                m[i][j] = ring_exact_div(num, prev);
            }
            m[i][k] = ring_sub(one, one);
        }
        prev = m[k][k];
    }
    R det = m[n - 1][n - 1];
    if (negate) det = ring_sub(ring_sub(det, det), det);
    return det;
}

/// Sylvester matrix for declared degrees (df, dg); missing high coefficients
/// are zero rows of padding, matching the determinant convention for
/// declared-degree resultants.
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const std::vector<R>& f_asc, int df,
                                             const std::vector<R>& g_asc, int dg, const R& zero) {
    const std::size_t n = static_cast<std::size_t>(df + dg);
    std::vector<std::vector<R>> m(n, std::vector<R>(n, zero));
    auto fc = [&](int i) { return i >= 0 && i < static_cast<int>(f_asc.size()) ? f_asc[static_cast<std::size_t>(i)] : zero; };
    auto gc = [&](int i) { return i >= 0 && i < static_cast<int>(g_asc.size()) ? g_asc[static_cast<std::size_t>(i)] : zero; };
    for (int row = 0; row < dg; ++row)
        for (int k = 0; k <= df; ++k) m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] = fc(df - k);
    for (int row = 0; row < df; ++row)
        for (int k = 0; k <= dg; ++k) m[static_cast<std::size_t>(dg + row)][static_cast<std::size_t>(row + k)] = gc(dg - k);
    return m;
}

}  // namespace detail

/// Resultant of f and g with declared degrees, as the determinant of the
/// corresponding Sylvester matrix (fraction-free elimination). For monic f
/// at its true degree this is prod g(alpha_i) over the roots of f.
inline NFElement resultant(const Polynomial& f, const Polynomial& g, int declared_deg_f,
                           int declared_deg_g) {
    if (!same_field(f.field(), g.field()))
        throw FieldMismatchError("resultant of polynomials over different fields");
    if (f.is_zero() && g.is_zero()) throw DataError("resultant of two zero polynomials");
    if (declared_deg_f < f.degree() || declared_deg_g < g.degree())
        throw DataError("declared resultant degree below actual degree");
    if (declared_deg_f < 0 || declared_deg_g < 0)
        throw DataError("declared resultant degrees must be nonnegative");
    const FieldPtr& F = f.field();
    NFElement one = F ? F->one() : NFElement(Rational(1));
    NFElement zero = F ? F->zero() : NFElement(Rational(0));
    if (declared_deg_f == 0 && declared_deg_g == 0) return one;
    auto m = detail::sylvester_matrix(f.coeffs(), declared_deg_f, g.coeffs(), declared_deg_g, zero);
    return detail::bareiss_determinant(std::move(m), one);
}

/// Resultant in an auxiliary variable y of two polynomials whose y-coefficients
/// are themselves polynomials (in t) over a common field; entries stay in the
/// polynomial ring throughout (Bareiss divisions are exact there).
inline Polynomial resultant_bivariate(const std::vector<Polynomial>& f_y_coeffs, int deg_f,
                                      const std::vector<Polynomial>& g_y_coeffs, int deg_g,
                                      const FieldPtr& field) {
    Polynomial zero = Polynomial::zero(field);
    Polynomial one = Polynomial::constant(field, field ? field->one() : NFElement(Rational(1)));
    if (deg_f == 0 && deg_g == 0) return one;
    auto m = detail::sylvester_matrix(f_y_coeffs, deg_f, g_y_coeffs, deg_g, zero);
    return detail::bareiss_determinant(std::move(m), one);
}

/// Norm of a polynomial from an extension E = B[g]/(m) down to its base B:
/// Nm P(t) = Res_u(m(u), P with the generator replaced by u). Monic of
/// degree [E:B] * deg P when P is monic.
inline Polynomial norm_poly(const Polynomial& P) {
    const FieldPtr& E = P.field();
    if (!E) throw DataError("norm of a polynomial that is already over Q");
    const FieldPtr& B = E->base();
    const int r = E->degree();
    if (P.is_zero()) return Polynomial::zero(B);

    // m(u) has coefficients in B, viewed as constant polynomials in t.
    std::vector<Polynomial> m_coeffs;
    m_coeffs.reserve(static_cast<std::size_t>(r) + 1);
    for (const auto& c : E->min_poly()) m_coeffs.push_back(Polynomial::constant(B, c));

    // A(u, t): coefficient of u^j collects the j-th coordinates of P's
    // coefficients (over B) against powers of t.
    std::vector<Polynomial> a_coeffs(static_cast<std::size_t>(r), Polynomial::zero(B));
    for (int i = 0; i <= P.degree(); ++i) {
        const NFElement& ci = P.coeffs()[static_cast<std::size_t>(i)];
        for (int j = 0; j < r; ++j) {
            const NFElement& cij = ci.coords()[static_cast<std::size_t>(j)];
            if (cij.is_zero()) continue;
            a_coeffs[static_cast<std::size_t>(j)] +=
                Polynomial::monomial(B, cij, static_cast<std::size_t>(i));
        }
    }
    int deg_a = static_cast<int>(a_coeffs.size()) - 1;
    while (deg_a > 0 && a_coeffs[static_cast<std::size_t>(deg_a)].is_zero()) --deg_a;
    a_coeffs.resize(static_cast<std::size_t>(deg_a) + 1);
    return resultant_bivariate(m_coeffs, r, a_coeffs, deg_a, B);
}

/// Monic minimal polynomial of an element over Q, by the first linear
/// dependence among its powers in the absolute power basis.
inline Polynomial minimal_polynomial(const NFElement& theta) {
    if (theta.is_rational_field())
        return Polynomial::from_rationals(nullptr, {-theta.rat(), Rational(1)});
    std::size_t dim = theta.flatten().size();

    // Track powers and reduce incrementally; the dependency coefficients of
    // theta^k against lower powers give the minimal polynomial.
    std::vector<std::vector<Rational>> power_vecs;
    NFElement p = theta.field()->one();
    for (std::size_t k = 0; k <= dim; ++k) {
        power_vecs.push_back(p.flatten());
        p *= theta;
    }
    // Gaussian elimination with dependency extraction.
    for (std::size_t k = 1; k <= dim; ++k) {
        // Solve sum_{i<k} x_i * power_vecs[i] = power_vecs[k] if possible.
        std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(k + 1, Rational(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t row = 0; row < dim; ++row) m[row][i] = power_vecs[i][row];
        for (std::size_t row = 0; row < dim; ++row) m[row][k] = power_vecs[k][row];
        // row reduce
        std::size_t rank = 0;
        std::vector<std::size_t> pivot_cols;
        for (std::size_t col = 0; col < k && rank < dim; ++col) {
            std::size_t sel = rank;
            while (sel < dim && m[sel][col].is_zero()) ++sel;
            if (sel == dim) continue;
            std::swap(m[rank], m[sel]);
            Rational inv = m[rank][col].inverse();
            for (auto& v : m[rank]) v *= inv;
            for (std::size_t r2 = 0; r2 < dim; ++r2) {
                if (r2 == rank || m[r2][col].is_zero()) continue;
                Rational f = m[r2][col];
                for (std::size_t c2 = 0; c2 <= k; ++c2) m[r2][c2] -= f * m[rank][c2];
            }
            pivot_cols.push_back(col);
            ++rank;
        }
        bool consistent = true;
        for (std::size_t r2 = rank; r2 < dim; ++r2)
            if (!m[r2][k].is_zero()) consistent = false;
        if (!consistent) continue;
        std::vector<Rational> x(k, Rational(0));
        for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = m[i][k];
        // theta^k = sum x_i theta^i -> minimal polynomial
        std::vector<Rational> mp(k + 1, Rational(0));
        for (std::size_t i = 0; i < k; ++i) mp[i] = -x[i];
        mp[k] = Rational(1);
        return Polynomial::from_rationals(nullptr, mp);
    }
    throw Error("no linear dependence among element powers; corrupt field data");
}

/// Field embedding determined by the image of the source's top generator.
/// The source's base (when present) must itself be generated by the top
/// generator; its image is derived by exact linear algebra.
class Embedding {
  public:
    Embedding(FieldPtr source, FieldPtr target, NFElement generator_image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(generator_image)) {
        if (!source_) {
            // identity on Q: nothing to check
            return;
        }
        if (target_ && !same_field(image_.field(), target_))
            throw FieldMismatchError("generator image not in the target field");
        if (!target_ && !image_.is_rational_field())
            throw FieldMismatchError("generator image not in the target field");
        NFElement gen = source_->generator();
        Polynomial abs_min = minimal_polynomial(gen);
        if (static_cast<int>(abs_min.degree()) != source_->absolute_degree())
            throw DataError("embedding source generator is not primitive");
        if (!abs_min.map_coeffs(target_, [&](const NFElement& c) {
                         return target_ ? target_->from_rational(c.rat()) : c;
                     })
                 .eval(image_)
                 .is_zero())
            throw DataError("generator image is not a root of the source minimal polynomial");
        build_power_table();
    }

    static Embedding identity(const FieldPtr& field) {
        if (!field) return Embedding(nullptr, nullptr, NFElement(Rational(0)));
        return Embedding(field, field, field->generator());
    }

    const FieldPtr& source() const { return source_; }
    const FieldPtr& target() const { return target_; }
    const NFElement& generator_image() const { return image_; }

    NFElement apply(const NFElement& x) const {
        if (!source_) {
            Rational r = x.is_rational_field() ? x.rat() : *x.as_rational();
            return target_ ? target_->from_rational(r) : NFElement(r);
        }
        if (x.is_rational_field()) return target_ ? target_->from_rational(x.rat()) : x;
        if (!same_field(x.field(), source_)) throw FieldMismatchError("embedding applied to a foreign element");
        // coordinates of x in powers of the primitive generator
        std::vector<Rational> flat = x.flatten();
        std::vector<Rational> powers = solve_powers(flat);
        NFElement acc = target_ ? target_->zero() : NFElement(Rational(0));
        NFElement p = target_ ? target_->one() : NFElement(Rational(1));
        for (const auto& r : powers) {
            acc += p * NFElement(r);
            p *= image_;
        }
        return acc;
    }

  private:
    void build_power_table() {
        std::size_t d = static_cast<std::size_t>(source_->absolute_degree());
        NFElement gen = source_->generator();
        NFElement p = source_->one();
        for (std::size_t k = 0; k < d; ++k) {
            power_flat_.push_back(p.flatten());
            p *= gen;
        }
    }

    std::vector<Rational> solve_powers(const std::vector<Rational>& flat) const {
        // solve sum_k x_k * power_flat_[k] = flat exactly
        std::size_t d = power_flat_.size();
        std::size_t dim = flat.size();
        std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(d + 1, Rational(0)));
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t row = 0; row < dim; ++row) m[row][k] = power_flat_[k][row];
        for (std::size_t row = 0; row < dim; ++row) m[row][d] = flat[row];
        std::size_t rank = 0;
        std::vector<std::size_t> pivots;
        for (std::size_t col = 0; col < d && rank < dim; ++col) {
            std::size_t sel = rank;
            while (sel < dim && m[sel][col].is_zero()) ++sel;
            if (sel == dim) continue;
            std::swap(m[rank], m[sel]);
            Rational inv = m[rank][col].inverse();
            for (auto& v : m[rank]) v *= inv;
            for (std::size_t r2 = 0; r2 < dim; ++r2) {
                if (r2 == rank || m[r2][col].is_zero()) continue;
                Rational f = m[r2][col];
                for (std::size_t c2 = 0; c2 <= d; ++c2) m[r2][c2] -= f * m[rank][c2];
            }
            pivots.push_back(col);
            ++rank;
        }
        for (std::size_t r2 = rank; r2 < dim; ++r2)
            if (!m[r2][d].is_zero()) throw Error("element outside the span of generator powers");
        std::vector<Rational> x(d, Rational(0));
        for (std::size_t i = 0; i < rank; ++i) x[pivots[i]] = m[i][d];
        return x;
    }

    FieldPtr source_;
    FieldPtr target_;
    NFElement image_;
    std::vector<std::vector<Rational>> power_flat_;
};

/// Coefficientwise image of a polynomial under a field embedding.
inline Polynomial embed_poly(const Polynomial& P, const Embedding& phi) {
    if (!same_field(P.field(), phi.source()))
        throw FieldMismatchError("polynomial is not over the embedding source");
    return P.map_coeffs(phi.target(), [&](const NFElement& c) { return phi.apply(c); });
}

}  // namespace frobsys

#endif
