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

#ifndef FROBSYS_CHARPOLY_HPP
#define FROBSYS_CHARPOLY_HPP

#include <utility>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"

namespace frobsys {

/// Characteristic polynomial of an invertible operator: monic with nonzero
/// constant term over an explicit field. The eigenvalue multiset is the only
/// semantics carried.
class CharPoly {
  public:
    CharPoly(FieldPtr field, Polynomial poly) : field_(std::move(field)), poly_(std::move(poly)) {
        if (!same_field(poly_.field(), field_))
            throw FieldMismatchError("characteristic polynomial over the wrong field");
        if (poly_.degree() < 1) throw DataError("characteristic polynomial must have degree >= 1");
        if (!poly_.is_monic()) throw DataError("characteristic polynomial must be monic");
        if (poly_.constant_term().is_zero())
            throw DataError("characteristic polynomial must have nonzero constant term");
    }

    static CharPoly from_rationals(const std::vector<Rational>& asc) {
        return CharPoly(nullptr, Polynomial::from_rationals(nullptr, asc));
    }

    const FieldPtr& field() const { return field_; }
    const Polynomial& poly() const { return poly_; }
    int degree() const { return poly_.degree(); }

    friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.poly_ == b.poly_; }
    friend bool operator!=(const CharPoly& a, const CharPoly& b) { return !(a == b); }

  private:
    FieldPtr field_;
    Polynomial poly_;
};

/// Characteristic polynomial of the n-th power of the operator, computed as
/// the resultant in y of P(y) and t - y^n with declared y-degrees
/// (deg P, n): the product of (t - alpha^n) over the eigenvalues.
inline CharPoly power_charpoly(const CharPoly& P, long n) {
    if (n < 1) throw DataError("power exponent must be a positive integer");
    const FieldPtr& F = P.field();
    const int d = P.degree();

    // P(y) with coefficients constant in t
    std::vector<Polynomial> f;
    f.reserve(static_cast<std::size_t>(d) + 1);
    for (const auto& c : P.poly().coeffs()) f.push_back(Polynomial::constant(F, c));

    // t - y^n as a polynomial in y: constant coefficient t, top coefficient -1
    NFElement one = F ? F->one() : NFElement(Rational(1));
    std::vector<Polynomial> g(static_cast<std::size_t>(n) + 1, Polynomial::zero(F));
    g[0] = Polynomial::variable(F);
    g[static_cast<std::size_t>(n)] = Polynomial::constant(F, -one);

    Polynomial out = resultant_bivariate(f, d, g, static_cast<int>(n), F);
    return CharPoly(F, out);
}

/// Eigenvalues inverted: t^d P(1/t) normalized monic, i.e. the coefficient
/// sequence reversed and divided by the constant term.
inline CharPoly dual_charpoly(const CharPoly& P) {
    const int d = P.degree();
    NFElement c0 = P.poly().constant_term();
    std::vector<NFElement> rev;
    rev.reserve(static_cast<std::size_t>(d) + 1);
    for (int i = d; i >= 0; --i) rev.push_back(P.poly().coeff(static_cast<std::size_t>(i)) / c0);
    return CharPoly(P.field(), Polynomial::from_coeffs(P.field(), std::move(rev)));
}

/// Direct sum: the polynomials multiply.
inline CharPoly sum_charpoly(const CharPoly& P, const CharPoly& Q) {
    if (!same_field(P.field(), Q.field()))
        throw FieldMismatchError("direct sum of charpolys over different fields");
    return CharPoly(P.field(), P.poly() * Q.poly());
}

/// Tensor product: prod_{i,j} (t - alpha_i * beta_j), computed as the
/// resultant in y of P(y) against the kernel built from Q by coefficient
/// reversal: coefficient of y^m is q_{d'-m} t^{d'-m}. No division happens;
/// the kernel's top y-coefficient is Q's nonzero constant term.
inline CharPoly tensor_charpoly(const CharPoly& P, const CharPoly& Q) {
    if (!same_field(P.field(), Q.field()))
        throw FieldMismatchError("tensor of charpolys over different fields");
    const FieldPtr& F = P.field();
    const int d = P.degree();
    const int dq = Q.degree();

    std::vector<Polynomial> f;
    f.reserve(static_cast<std::size_t>(d) + 1);
    for (const auto& c : P.poly().coeffs()) f.push_back(Polynomial::constant(F, c));

    std::vector<Polynomial> g;
    g.reserve(static_cast<std::size_t>(dq) + 1);
    for (int m = 0; m <= dq; ++m)
        g.push_back(Polynomial::monomial(F, Q.poly().coeff(static_cast<std::size_t>(dq - m)),
                                         static_cast<std::size_t>(dq - m)));

    Polynomial out = resultant_bivariate(f, d, g, dq, F);
    return CharPoly(F, out);
}

/// Internal Hom: eigenvalue ratios beta_j / alpha_i.
inline CharPoly hom_charpoly(const CharPoly& P, const CharPoly& Q) {
    return tensor_charpoly(dual_charpoly(P), Q);
}

}  // namespace frobsys

#endif
