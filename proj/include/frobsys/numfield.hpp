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

#ifndef FROBSYS_NUMFIELD_HPP
#define FROBSYS_NUMFIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace frobsys {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q or of an explicit number field (tower depth at most 2).
///
/// The representation is recursive: an element of an extension E = B[g]/(m)
/// is a coordinate vector of length deg(m) over B, an element of Q is a bare
/// Rational. All arithmetic is exact and reduces modulo the tower's minimal
/// polynomials.
class NFElement {
  public:
    NFElement() : field_(nullptr), r_(0) {}
    NFElement(const Rational& r) : field_(nullptr), r_(r) {}
    NFElement(long n) : field_(nullptr), r_(n) {}

    const FieldPtr& field() const;
    bool is_rational_field() const { return field_ == nullptr; }

    const Rational& rat() const {
        if (!is_rational_field()) throw Error("element is not a plain rational");
        return r_;
    }
    const std::vector<NFElement>& coords() const {
        if (is_rational_field()) throw Error("rational has no extension coordinates");
        return c_;
    }

    bool is_zero() const;
    bool is_one() const;

    /// The rational value of an element all of whose higher coordinates
    /// vanish; nullopt otherwise.
    std::optional<Rational> as_rational() const;

    NFElement operator-() const;
    NFElement& operator+=(const NFElement& o) { return *this = add(*this, o); }
    NFElement& operator-=(const NFElement& o) { return *this = add(*this, -o); }
    NFElement& operator*=(const NFElement& o) { return *this = mul(*this, o); }
    NFElement& operator/=(const NFElement& o) { return *this = mul(*this, o.inverse()); }

    friend NFElement operator+(const NFElement& a, const NFElement& b) { return add(a, b); }
    friend NFElement operator-(const NFElement& a, const NFElement& b) { return add(a, -b); }
    friend NFElement operator*(const NFElement& a, const NFElement& b) { return mul(a, b); }
    friend NFElement operator/(const NFElement& a, const NFElement& b) { return mul(a, b.inverse()); }
    friend bool operator==(const NFElement& a, const NFElement& b);
    friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }

    NFElement inverse() const;
    NFElement pow(const Int& e) const;
    NFElement pow(long e) const { return pow(Int(e)); }

    /// Coordinates over Q in the absolute power basis, inner generator fastest.
    std::vector<Rational> flatten() const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const NFElement& e) { return os << e.str(); }

  private:
    friend class NumberField;
    NFElement(FieldPtr f, std::vector<NFElement> c) : field_(std::move(f)), c_(std::move(c)) {}

    static NFElement add(const NFElement& a, const NFElement& b);
    static NFElement mul(const NFElement& a, const NFElement& b);

    FieldPtr field_;           // nullptr encodes Q
    Rational r_;               // value when field_ is null
    std::vector<NFElement> c_; // coordinates over base otherwise
};

namespace detail {

// Irreducibility of a monic polynomial over F_p, small p. Coefficients
// ascending, reduced mod p, leading entry nonzero.
inline std::vector<std::uint64_t> fp_polmod_mul(const std::vector<std::uint64_t>& a,
                                                const std::vector<std::uint64_t>& b,
                                                const std::vector<std::uint64_t>& m,
                                                std::uint64_t p) {
    std::size_t d = m.size() - 1;
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t i = prod.size(); i-- > d;) {
        std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < d; ++j) prod[i - d + j] = (prod[i - d + j] + (p - c % p) * m[j]) % p;
    }
    prod.resize(d);
    return prod;
}

inline std::vector<std::uint64_t> fp_polmod_pow_p(std::vector<std::uint64_t> h,
                                                  const std::vector<std::uint64_t>& m,
                                                  std::uint64_t p) {
    // h^p mod (m, p) by square and multiply on the exponent p.
    std::vector<std::uint64_t> result{1};
    std::uint64_t e = p;
    while (e) {
        if (e & 1) result = fp_polmod_mul(result, h, m, p);
        h = fp_polmod_mul(h, h, m, p);
        e >>= 1;
    }
    return result;
}

inline std::vector<std::uint64_t> fp_poly_gcd(std::vector<std::uint64_t> a,
                                              std::vector<std::uint64_t> b, std::uint64_t p) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv_mod = [&](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::uint64_t lead_inv = inv_mod(b.back());
        while (a.size() >= b.size()) {
            std::uint64_t c = a.back() * lead_inv % p;
            if (c != 0) {
                std::size_t off = a.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j)
                    a[off + j] = (a[off + j] + (p - c * b[j] % p)) % p;
            }
            a.pop_back();
            trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    return a;
}

inline bool fp_irreducible(const std::vector<std::uint64_t>& m, std::uint64_t p) {
    std::size_t d = m.size() - 1;
    if (d == 1) return true;
    // x^(p^d) == x mod m, and x^(p^(d/q)) - x coprime to m for primes q | d.
    std::vector<std::uint64_t> x{0, 1};
    std::vector<std::uint64_t> h = x;
    std::vector<std::vector<std::uint64_t>> frob_powers;  // h after j Frobenius steps
    for (std::size_t j = 1; j <= d; ++j) {
        h = fp_polmod_pow_p(h, m, p);
        frob_powers.push_back(h);
    }
    std::vector<std::uint64_t> xmod = fp_polmod_mul(x, {1}, m, p);
    if (frob_powers[d - 1] != xmod) return false;
    for (std::size_t q = 2; q <= d; ++q) {
        if (d % q != 0) continue;
        bool q_prime = true;
        for (std::size_t t = 2; t * t <= q; ++t)
            if (q % t == 0) q_prime = false;
        if (!q_prime) continue;
        auto diff = frob_powers[d / q - 1];
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        auto g = fp_poly_gcd(diff, m, p);
        if (g.size() != 1) return false;
    }
    return true;
}

inline const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> v;
        for (std::uint64_t n = 2; v.size() < 50; ++n) {
            bool ok = true;
            for (std::uint64_t d : v)
                if (d * d <= n && n % d == 0) ok = false;
            if (ok) v.push_back(n);
        }
        return v;
    }();
    return primes;
}

}  // namespace detail

/// An explicit number field: Q, or a monogenic extension of Q or of such an
/// extension (tower depth capped at 2). Immutable; create through the
/// factories and share by FieldPtr.
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    /// The rationals as the trivial tower bottom. Represented by a null base
    /// and degree 1; NFElement uses a null FieldPtr for its elements.
    static FieldPtr rationals() { return nullptr; }

    /// Builds base[gen]/(min_poly); min_poly ascending, monic, coefficients
    /// over the base. Certifies irreducibility when it can (see docs),
    /// otherwise marks the field trusted.
    static FieldPtr extension(const FieldPtr& base, std::string gen_name,
                              std::vector<NFElement> min_poly);

    const FieldPtr& base() const { return base_; }
    const std::string& name() const { return name_; }
    int degree() const { return degree_; }
    int depth() const { return depth_; }
    int absolute_degree() const { return abs_degree_; }
    const std::vector<NFElement>& min_poly() const { return min_poly_; }

    /// True when irreducibility of min_poly was certified at construction;
    /// false means the field is used on trust.
    bool certified_irreducible() const { return certified_; }
    /// The witnessing prime of a mod-p certificate, 0 for other certificates.
    std::uint64_t certificate_prime() const { return cert_prime_; }

    NFElement zero() const { return from_rational(Rational(0)); }
    NFElement one() const { return from_rational(Rational(1)); }

    NFElement from_rational(const Rational& r) const {
        std::vector<NFElement> c(static_cast<std::size_t>(degree_), base_element(Rational(0)));
        c[0] = base_element(r);
        return NFElement(shared_from_this(), std::move(c));
    }

    NFElement generator() const {
        if (degree_ == 1) return NFElement(shared_from_this(), {-min_poly_[0]});
        std::vector<NFElement> c(static_cast<std::size_t>(degree_), base_zero());
        c[1] = base_one();
        return NFElement(shared_from_this(), std::move(c));
    }

    /// Element with given coordinates over the base (length = degree).
    NFElement element(std::vector<NFElement> coords) const;

    /// Lifts a base-field element into this field.
    NFElement lift(const NFElement& base_elem) const;

    NFElement base_zero() const { return base_element(Rational(0)); }
    NFElement base_one() const { return base_element(Rational(1)); }

  private:
    NumberField() = default;

    NFElement base_element(const Rational& r) const {
        if (!base_) return NFElement(r);
        return base_->from_rational(r);
    }

    FieldPtr base_;
    std::string name_;
    std::vector<NFElement> min_poly_;
    int degree_ = 1;
    int depth_ = 0;
    int abs_degree_ = 1;
    bool certified_ = false;
    std::uint64_t cert_prime_ = 0;
};

/// Structural field equality: same minimal-polynomial tower. Names are
/// labels for serialization and do not enter the comparison.
inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->degree() != b->degree()) return false;
    if (!same_field(a->base(), b->base())) return false;
    for (int i = 0; i <= a->degree(); ++i)
        if (a->min_poly()[static_cast<std::size_t>(i)] != b->min_poly()[static_cast<std::size_t>(i)])
            return false;
    return true;
}

inline const FieldPtr& NFElement::field() const {
    static const FieldPtr q = nullptr;
    return field_ ? field_ : q;
}

inline bool NFElement::is_zero() const {
    if (is_rational_field()) return r_.is_zero();
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

inline bool NFElement::is_one() const {
    if (is_rational_field()) return r_.is_one();
    if (!c_[0].is_one()) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

inline std::optional<Rational> NFElement::as_rational() const {
    if (is_rational_field()) return r_;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return std::nullopt;
    return c_[0].as_rational();
}

inline NFElement NFElement::operator-() const {
    if (is_rational_field()) return NFElement(-r_);
    std::vector<NFElement> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(-x);
    return NFElement(field_, std::move(c));
}

inline bool operator==(const NFElement& a, const NFElement& b) {
    if (a.is_rational_field() && b.is_rational_field()) return a.r_ == b.r_;
    if (a.is_rational_field() != b.is_rational_field()) {
        // Compare across Q and an extension through the canonical inclusion.
        const NFElement& ext = a.is_rational_field() ? b : a;
        const NFElement& rat = a.is_rational_field() ? a : b;
        auto v = ext.as_rational();
        return v && *v == rat.r_;
    }
    if (!same_field(a.field_, b.field_)) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (!(a.c_[i] == b.c_[i])) return false;
    return true;
}

inline NFElement NFElement::add(const NFElement& a, const NFElement& b) {
    if (a.is_rational_field() && b.is_rational_field()) return NFElement(a.r_ + b.r_);
    if (a.is_rational_field()) return add(b.field_->from_rational(a.r_), b);
    if (b.is_rational_field()) return add(a, a.field_->from_rational(b.r_));
    if (!same_field(a.field_, b.field_)) throw FieldMismatchError("adding elements of different fields");
    std::vector<NFElement> c;
    c.reserve(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c.push_back(add(a.c_[i], b.c_[i]));
    return NFElement(a.field_, std::move(c));
}

inline NFElement NFElement::mul(const NFElement& a, const NFElement& b) {
    if (a.is_rational_field() && b.is_rational_field()) return NFElement(a.r_ * b.r_);
    if (a.is_rational_field()) return mul(b.field_->from_rational(a.r_), b);
    if (b.is_rational_field()) return mul(a, a.field_->from_rational(b.r_));
    if (!same_field(a.field_, b.field_)) throw FieldMismatchError("multiplying elements of different fields");
    const std::size_t d = a.c_.size();
    const auto& m = a.field_->min_poly();
    std::vector<NFElement> prod(2 * d - 1, a.c_[0] - a.c_[0]);  // zeros of the base
    for (std::size_t i = 0; i < d; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b.c_[j].is_zero()) continue;
            prod[i + j] = add(prod[i + j], mul(a.c_[i], b.c_[j]));
        }
    }
    // reduce modulo the monic minimal polynomial
    for (std::size_t i = prod.size(); i-- > d;) {
        if (prod[i].is_zero()) continue;
        NFElement c = prod[i];
        for (std::size_t j = 0; j < d; ++j)
            prod[i - d + j] = add(prod[i - d + j], -mul(c, m[j]));
        prod[i] = c - c;
    }
    prod.resize(d, a.c_[0] - a.c_[0]);
    return NFElement(a.field_, std::move(prod));
}

namespace detail {

using NFVec = std::vector<NFElement>;

inline void nfvec_trim(NFVec& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

// quotient of a by b over a field; a becomes the remainder
inline NFVec nfvec_divmod(NFVec& a, const NFVec& b, const NFElement& zero) {
    NFVec q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, zero);
    NFElement lead_inv = b.back().inverse();
    while (a.size() >= b.size()) {
        std::size_t k = a.size() - b.size();
        NFElement c = a.back() * lead_inv;
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
        nfvec_trim(a);
    }
    return q;
}

inline NFVec nfvec_sub_mul(const NFVec& x, const NFVec& q, const NFVec& y, const NFElement& zero) {
    // x - q*y
    NFVec out = x;
    if (!q.empty() && !y.empty()) {
        std::size_t need = q.size() + y.size() - 1;
        if (out.size() < need) out.resize(need, zero);
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.size(); ++j) out[i + j] -= q[i] * y[j];
        }
    }
    nfvec_trim(out);
    return out;
}

}  // namespace detail

inline NFElement NFElement::inverse() const {
    if (is_rational_field()) return NFElement(r_.inverse());
    if (is_zero()) throw Error("inverse of zero field element");
    // Extended Euclid between the coordinate polynomial and the minimal
    // polynomial, over the base field.
    const NFElement bzero = c_[0] - c_[0];
    const NFElement bone = field_->base_one();
    detail::NFVec r0(field_->min_poly()), r1(c_);
    detail::nfvec_trim(r0);
    detail::nfvec_trim(r1);
    detail::NFVec s0{}, s1{bone};
    while (!r1.empty()) {
        detail::NFVec rem = r0;
        detail::NFVec q = detail::nfvec_divmod(rem, r1, bzero);
        detail::NFVec new_s = detail::nfvec_sub_mul(s0, q, s1, bzero);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(new_s);
    }
    if (r0.size() != 1)
        throw Error("element is a zero divisor; minimal polynomial not irreducible");
    NFElement scale = r0[0].inverse();
    std::vector<NFElement> out(c_.size(), bzero);
    for (std::size_t i = 0; i < s0.size() && i < out.size(); ++i) out[i] = s0[i] * scale;
    return NFElement(field_, std::move(out));
}

inline NFElement NFElement::pow(const Int& e) const {
    if (e < 0) return inverse().pow(Int(-e));
    NFElement result = is_rational_field() ? NFElement(Rational(1)) : field_->one();
    NFElement base = *this;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

inline std::vector<Rational> NFElement::flatten() const {
    if (is_rational_field()) return {r_};
    std::vector<Rational> out;
    for (const auto& x : c_) {
        auto part = x.flatten();
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

inline std::string NFElement::str() const {
    if (is_rational_field()) return r_.str();
    std::string gen = field_->name();
    std::string s;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) s += " + ";
        s += "(" + c_[i].str() + ")";
        if (i >= 1) s += "*" + gen + (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : s;
}

inline NFElement NumberField::element(std::vector<NFElement> coords) const {
    if (static_cast<int>(coords.size()) != degree_)
        throw DataError("coordinate vector length does not match field degree");
    for (auto& c : coords) {
        if (base_) {
            if (c.is_rational_field())
                c = base_->from_rational(c.rat());
            else if (!same_field(c.field(), base_))
                throw FieldMismatchError("coordinate not over the base field");
        } else if (!c.is_rational_field()) {
            throw FieldMismatchError("coordinate of a degree-1 tower step must be rational");
        }
    }
    return NFElement(shared_from_this(), std::move(coords));
}

inline NFElement NumberField::lift(const NFElement& base_elem) const {
    std::vector<NFElement> c(static_cast<std::size_t>(degree_), base_zero());
    if (base_) {
        if (base_elem.is_rational_field())
            c[0] = base_->from_rational(base_elem.rat());
        else if (same_field(base_elem.field(), base_))
            c[0] = base_elem;
        else
            throw FieldMismatchError("lift source is not the base field");
    } else {
        c[0] = NFElement(base_elem.rat());
    }
    return NFElement(shared_from_this(), std::move(c));
}

/// Result of an exact square-root attempt: `root` when one exists and was
/// found; `decisive` false when the field shape is outside the solver's
/// range so that non-existence was not proven.
struct SqrtResult {
    std::optional<NFElement> root;
    bool decisive = true;
};

SqrtResult sqrt_in_field(const NFElement& x);

namespace detail {

inline NFElement quad_conjugate(const NFElement& x) {
    // Conjugate in a relative quadratic extension with min poly u^2+a1*u+a0.
    const auto& m = x.field()->min_poly();
    const NFElement& a1 = m[1];
    const auto& c = x.coords();
    std::vector<NFElement> out{c[0] - a1 * c[1], -c[1]};
    return x.field()->element(std::move(out));
}

}  // namespace detail

inline SqrtResult sqrt_in_field(const NFElement& x) {
    if (x.is_rational_field()) {
        auto r = x.rat().sqrt();
        if (r) return {NFElement(*r), true};
        return {std::nullopt, true};
    }
    const FieldPtr& F = x.field();
    if (F->degree() != 2) return {std::nullopt, false};  // relative non-quadratic: undecided
    if (x.is_zero()) return {F->zero(), true};
    const auto& m = F->min_poly();
    const NFElement& a1 = m[1];
    const NFElement& a0 = m[0];
    NFElement conj = detail::quad_conjugate(x);
    NFElement trace = x.coords()[0] + conj.coords()[0];  // lives in the base
    NFElement norm = (x * conj).coords()[0];
    bool decided = true;
    const NFElement two(Rational(2));
    const NFElement four(Rational(4));
    auto nres = sqrt_in_field(norm);
    if (!nres.decisive) decided = false;
    if (nres.root) {
        for (int sign = 0; sign < 2; ++sign) {
            NFElement n = sign ? -*nres.root : *nres.root;
            auto sres = sqrt_in_field(trace + two * n);
            if (!sres.decisive) decided = false;
            if (!sres.root) continue;
            for (int ssign = 0; ssign < 2; ++ssign) {
                NFElement s = ssign ? -*sres.root : *sres.root;
                if (!s.is_zero()) {
                    NFElement cand = (x + F->lift(n)) / F->lift(s);
                    if (cand * cand == x) return {cand, true};
                } else {
                    // trace-zero square root: x = c^2 (a1^2/4 - a0) with
                    // root c*(g + a1/2); only reachable when x is in the base
                    NFElement denom = a1 * a1 / four - a0;
                    if (denom.is_zero()) continue;
                    auto x_base = x.coords()[1].is_zero() ? std::optional<NFElement>(x.coords()[0])
                                                          : std::nullopt;
                    if (!x_base) continue;
                    auto cres = sqrt_in_field(*x_base / denom);
                    if (!cres.decisive) decided = false;
                    if (!cres.root) continue;
                    NFElement g = F->generator();
                    NFElement cand = F->lift(*cres.root) * (g + F->lift(a1 / two));
                    if (cand * cand == x) return {cand, true};
                }
            }
        }
    }
    return {std::nullopt, decided};
}

/// Order of x as a root of unity, or nullopt when x is not one. Exact: the
/// torsion of E* has phi(order) <= [E:Q], which bounds the search.
inline std::optional<long> root_of_unity_order(const NFElement& x) {
    if (x.is_zero()) return std::nullopt;
    long d = x.is_rational_field() ? 1 : x.field()->absolute_degree();
    long bound = 2 * d * d + 7;
    for (long m = 1; m <= bound; ++m) {
        long phi = m, n = m;
        for (long p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            phi -= phi / p;
            while (n % p == 0) n /= p;
        }
        if (n > 1) phi -= phi / n;
        if (phi > d) continue;
        if (x.pow(m).is_one()) return m;
    }
    return std::nullopt;
}

inline FieldPtr NumberField::extension(const FieldPtr& base, std::string gen_name,
                                       std::vector<NFElement> min_poly) {
    int base_depth = base ? base->depth() : 0;
    if (base_depth >= 2) throw DataError("tower depth above 2 is not supported");
    if (min_poly.size() < 2) throw DataError("minimal polynomial must have degree >= 1");
    for (auto& c : min_poly) {
        if (base) {
            if (c.is_rational_field())
                c = base->from_rational(c.rat());
            else if (!same_field(c.field(), base))
                throw FieldMismatchError("minimal polynomial coefficient not over the base");
        } else if (!c.is_rational_field()) {
            throw FieldMismatchError("minimal polynomial over Q must have rational coefficients");
        }
    }
    if (!min_poly.back().is_one()) throw DataError("minimal polynomial must be monic");

    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->base_ = base;
    f->name_ = std::move(gen_name);
    f->degree_ = static_cast<int>(min_poly.size()) - 1;
    f->depth_ = base_depth + 1;
    f->abs_degree_ = f->degree_ * (base ? base->absolute_degree() : 1);
    f->min_poly_ = std::move(min_poly);

    // Irreducibility certificate.
    if (f->degree_ == 1) {
        f->certified_ = true;
    } else if (!base) {
        // Monic over Q: find a prime p with the reduction irreducible mod p.
        Int den_lcm = 1;
        for (const auto& c : f->min_poly_) {
            Int d = c.rat().den();
            Int g;
            mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
            den_lcm = den_lcm / g * d;
        }
        for (std::uint64_t p : detail::small_primes()) {
            if (mpz_divisible_ui_p(den_lcm.get_mpz_t(), static_cast<unsigned long>(p))) continue;
            std::vector<std::uint64_t> mp;
            mp.reserve(f->min_poly_.size());
            for (const auto& c : f->min_poly_) {
                Rational scaled = c.rat() * Rational(den_lcm);
                Int num = scaled.num();
                Int m = num % Int(static_cast<unsigned long>(p));
                if (m < 0) m += Int(static_cast<unsigned long>(p));
                mp.push_back(m.get_ui());
            }
            // re-normalize to monic mod p (den_lcm is invertible mod p)
            std::uint64_t lead = mp.back();
            if (lead == 0) continue;
            std::uint64_t lead_inv = 1, e = p - 2, b = lead;
            while (e) {
                if (e & 1) lead_inv = lead_inv * b % p;
                b = b * b % p;
                e >>= 1;
            }
            for (auto& v : mp) v = v * lead_inv % p;
            if (detail::fp_irreducible(mp, p)) {
                f->certified_ = true;
                f->cert_prime_ = p;
                break;
            }
        }
    } else if (f->degree_ == 2) {
        // Relative quadratic: irreducible iff the discriminant has no square
        // root in the base. The quadratic solver is decisive over our towers.
        NFElement a1 = f->min_poly_[1];
        NFElement a0 = f->min_poly_[0];
        NFElement disc = a1 * a1 - NFElement(Rational(4)) * a0;
        auto s = sqrt_in_field(disc);
        if (s.root)
            throw DataError("relative minimal polynomial is reducible over the base");
        f->certified_ = s.decisive;
    }
    // Anything else stays uncertified ("trusted").
    return f;
}

}  // namespace frobsys

#endif
