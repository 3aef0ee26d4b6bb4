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

#ifndef FROBSYS_ROOTFIND_HPP
#define FROBSYS_ROOTFIND_HPP

#include <algorithm>
#include <vector>

#include "bigfloat.hpp"
#include "error.hpp"
#include "polynomial.hpp"

namespace frobsys {

namespace detail {

inline BigComplex horner(const std::vector<BigComplex>& coeffs, const BigComplex& z) {
    BigComplex acc(coeffs.back());
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

}  // namespace detail

/// All complex roots of a monic squarefree polynomial given by ascending
/// complex coefficients, by Durand-Kerner iteration at the requested
/// precision. Deterministic: fixed initial configuration, fixed sweep order.
/// Throws PrecisionError when the iteration fails to settle.
inline std::vector<BigComplex> complex_roots(const std::vector<BigComplex>& coeffs,
                                             mpfr_prec_t prec) {
    const std::size_t d = coeffs.size() - 1;
    if (d == 0) return {};

    // Cauchy-style radius: 1 + max |a_i|
    BigFloat radius = BigFloat::from_long(1, prec);
    for (std::size_t i = 0; i < d; ++i) {
        BigFloat m = coeffs[i].abs();
        if (m > radius) radius = m;
    }
    radius = radius + BigFloat::from_long(1, prec);

    // initial guesses spread on the circle with an offset angle
    std::vector<BigComplex> z;
    z.reserve(d);
    BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
    for (std::size_t i = 0; i < d; ++i) {
        BigFloat theta = two_pi * BigFloat::from_long(static_cast<long>(i), prec) /
                             BigFloat::from_long(static_cast<long>(d), prec) +
                         BigFloat::from_rational(Rational(2, 5), prec);
        BigComplex w(prec);
        mpfr_cos(w.re.raw(), theta.raw(), MPFR_RNDN);
        mpfr_sin(w.im.raw(), theta.raw(), MPFR_RNDN);
        z.push_back(BigComplex(w.re * radius, w.im * radius));
    }

    BigFloat tol = BigFloat::pow2(-(static_cast<long>(prec) - 8), prec);
    const int max_iters = 200 + static_cast<int>(prec) / 2;
    for (int iter = 0; iter < max_iters; ++iter) {
        BigFloat worst = BigFloat::from_long(0, prec);
        for (std::size_t i = 0; i < d; ++i) {
            BigComplex num = detail::horner(coeffs, z[i]);
            BigComplex den(BigFloat::from_long(1, prec), BigFloat::from_long(0, prec));
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                den = den * (z[i] - z[j]);
            }
            BigComplex delta = num / den;
            z[i] = z[i] - delta;
            BigFloat step = delta.abs();
            if (step > worst) worst = step;
        }
        if (!(worst > tol * radius)) {
            // sort for determinism of downstream consumers
            std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
                int c = mpfr_cmp(a.re.raw(), b.re.raw());
                if (c != 0) return c < 0;
                return mpfr_cmp(a.im.raw(), b.im.raw()) < 0;
            });
            return z;
        }
    }
    throw PrecisionError("root iteration did not settle at " + std::to_string(prec) + " bits");
}

/// Deterministic complex images of a field's tower generators at the given
/// precision: the lexicographically least root of each minimal polynomial,
/// solved bottom-up.
inline std::vector<BigComplex> embedding_generator_images(const FieldPtr& field, mpfr_prec_t prec) {
    std::vector<FieldPtr> tower;
    for (FieldPtr f = field; f; f = f->base()) tower.push_back(f);
    std::reverse(tower.begin(), tower.end());

    std::vector<BigComplex> images;
    for (const FieldPtr& f : tower) {
        // coefficients of f's minimal polynomial under the images found so far
        std::vector<BigComplex> coeffs;
        for (const NFElement& c : f->min_poly()) {
            // evaluate a base element at the known generator images
            std::vector<Rational> flat = c.flatten();
            // flat is indexed inner-generator-fastest over the base tower
            BigComplex acc(prec);
            // build power products iteratively: for depth 0 base it is just a rational
            if (images.empty()) {
                acc = BigComplex(BigFloat::from_rational(flat[0], prec), BigFloat::from_long(0, prec));
            } else {
                // base has one generator per previous tower level (at most 2)
                // evaluate sum_i flat[i] * g1^(i mod d1) * g2^(i / d1) ...
                std::vector<std::size_t> degrees;
                for (const FieldPtr& g : tower) {
                    if (g == f) break;
                    degrees.push_back(static_cast<std::size_t>(g->degree()));
                }
                acc = BigComplex(BigFloat::from_long(0, prec), BigFloat::from_long(0, prec));
                for (std::size_t idx = 0; idx < flat.size(); ++idx) {
                    std::size_t rem = idx;
                    BigComplex term(BigFloat::from_rational(flat[idx], prec),
                                    BigFloat::from_long(0, prec));
                    for (std::size_t level = 0; level < degrees.size(); ++level) {
                        std::size_t e = rem % degrees[level];
                        rem /= degrees[level];
                        for (std::size_t t = 0; t < e; ++t) term = term * images[level];
                    }
                    acc = acc + term;
                }
            }
            coeffs.push_back(acc);
        }
        auto roots = complex_roots(coeffs, prec);
        if (roots.empty()) throw Error("degenerate minimal polynomial");
        images.push_back(roots.front());
    }
    return images;
}

/// Complex image of an element under the embedding fixed by
/// embedding_generator_images.
inline BigComplex embed_numeric(const NFElement& x, const std::vector<BigComplex>& images,
                                mpfr_prec_t prec) {
    std::vector<Rational> flat = x.flatten();
    if (x.is_rational_field())
        return BigComplex(BigFloat::from_rational(flat[0], prec), BigFloat::from_long(0, prec));
    std::vector<std::size_t> degrees;
    for (FieldPtr f = x.field(); f; f = f->base()) degrees.push_back(static_cast<std::size_t>(f->degree()));
    std::reverse(degrees.begin(), degrees.end());

    BigComplex acc(BigFloat::from_long(0, prec), BigFloat::from_long(0, prec));
    for (std::size_t idx = 0; idx < flat.size(); ++idx) {
        if (flat[idx].is_zero()) continue;
        std::size_t rem = idx;
        BigComplex term(BigFloat::from_rational(flat[idx], prec), BigFloat::from_long(0, prec));
        for (std::size_t level = 0; level < degrees.size(); ++level) {
            std::size_t e = rem % degrees[level];
            rem /= degrees[level];
            for (std::size_t t = 0; t < e; ++t) term = term * images[level];
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace frobsys

#endif
