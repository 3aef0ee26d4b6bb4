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

#ifndef FROBSYS_ELLIPTIC_HPP
#define FROBSYS_ELLIPTIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "systems.hpp"
#include "threads.hpp"

namespace frobsys {

/// y^2 = x^3 + a x + b over F_p, p an odd prime > 3, nonsingular mod p.
struct EllipticCurve {
    long a = 0;
    long b = 0;
    std::uint64_t p = 0;

    EllipticCurve(long a_, long b_, std::uint64_t p_) : a(a_), b(b_), p(p_) {
        if (p == 2 || p == 3) throw DataError("characteristics 2 and 3 are not supported");
        if (!Place::is_prime(p)) throw DataError(std::to_string(p) + " is not prime");
        if (p > 1000000) throw DataError("p exceeds the naive-count guard of 10^6");
        if (disc_mod_p() == 0)
            throw DataError("curve is singular mod " + std::to_string(p));
    }

    std::uint64_t mod_p(long v) const {
        long m = static_cast<long>(p);
        long r = v % m;
        if (r < 0) r += m;
        return static_cast<std::uint64_t>(r);
    }

    std::uint64_t disc_mod_p() const {
        std::uint64_t am = mod_p(a), bm = mod_p(b);
        std::uint64_t a3 = am * am % p * am % p;
        std::uint64_t b2 = bm * bm % p;
        return (4 * a3 % p + 27 * b2 % p) % p;
    }
};

namespace detail {

/// Quadratic residue table for F_p: entry z is 1 for nonzero squares.
inline std::vector<std::uint8_t> square_table(std::uint64_t p) {
    std::vector<std::uint8_t> is_sq(p, 0);
    for (std::uint64_t x = 0; x <= p / 2; ++x) is_sq[x * x % p] = 1;
    return is_sq;
}

}  // namespace detail

/// Trace of Frobenius a_p = p + 1 - #E(F_p) by the quadratic-character sum,
/// parallelized over x with an exact deterministic reduction.
inline long count_points(const EllipticCurve& E) {
    const std::uint64_t p = E.p;
    auto is_sq = detail::square_table(p);
    const std::uint64_t am = E.mod_p(E.a), bm = E.mod_p(E.b);

    unsigned workers = worker_count();
    std::uint64_t chunk = (p + workers - 1) / workers;
    std::vector<long> partial(workers, 0);
    parallel_for(workers, [&](std::size_t w) {
        std::uint64_t begin = w * chunk;
        std::uint64_t end = begin + chunk < p ? begin + chunk : p;
        long acc = 0;
        for (std::uint64_t x = begin; x < end; ++x) {
            std::uint64_t fx = (x * x % p * x % p + am * x % p + bm) % p;
            if (fx == 0) continue;
            acc += is_sq[fx] ? 1 : -1;
        }
        partial[w] = acc;
    });
    long chi_sum = 0;
    for (long v : partial) chi_sum += v;
    long ap = -chi_sum;

    // Weil bound |a_p| <= 2 sqrt(p)
    if (static_cast<long long>(ap) * ap > 4 * static_cast<long long>(p))
        throw Error("point count violates the Weil bound; counting bug");
    return ap;
}

inline std::string place_label(std::uint64_t p) { return "p" + std::to_string(p); }

/// Sample (place (p, f=1), n=1, t^2 - a_p t + p) over Q.
inline FrobSample frobenius_poly(const EllipticCurve& E) {
    long ap = count_points(E);
    CharPoly P = CharPoly::from_rationals(
        {Rational(static_cast<long>(E.p)), Rational(-ap), Rational(1)});
    return FrobSample(Place(place_label(E.p), E.p, 1), 1, std::move(P));
}

/// Trace over F_{p^k} from the standard second-order recurrence
/// t_0 = 2, t_1 = a_p, t_k = a_p t_{k-1} - p t_{k-2}.
inline Int extension_trace(long ap, std::uint64_t p, unsigned k) {
    if (k < 1) throw DataError("extension degree must be >= 1");
    Int t0 = 2, t1 = ap;
    if (k == 1) return t1;
    for (unsigned i = 2; i <= k; ++i) {
        Int t2 = Int(ap) * t1 - Int(static_cast<unsigned long>(p)) * t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

/// Least quadratic non-residue mod p.
inline std::uint64_t least_nonresidue(std::uint64_t p) {
    auto is_sq = detail::square_table(p);
    for (std::uint64_t d = 2; d < p; ++d)
        if (!is_sq[d]) return d;
    throw Error("no quadratic non-residue found");
}

/// Splits t^2 - a t + p in an imaginary quadratic field E presented as
/// u^2 + d: requires a != 0 (ordinary) and 4p - a^2 = d c^2 with c an
/// integer. Returns (pi, conjugate), pi = (a + c sqrt(-d))/2, and asserts
/// Nm(t - pi) = P.
inline std::optional<std::pair<NFElement, NFElement>> cm_split(long a, std::uint64_t p,
                                                               const FieldPtr& E) {
    if (!E || E->degree() != 2 || E->base() || !E->min_poly()[1].is_zero())
        throw DataError("cm_split expects an imaginary quadratic field presented as u^2 + d");
    Rational d_rat = E->min_poly()[0].rat();
    if (d_rat.sign() <= 0 || !d_rat.is_integer())
        throw DataError("cm_split expects u^2 + d with d a positive integer");
    Int d = d_rat.num();
    if (a == 0) return std::nullopt;  // supersingular
    Int m = Int(4) * Int(static_cast<unsigned long>(p)) - Int(a) * Int(a);
    if (!mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    Int c2 = m / d;
    Int c;
    mpz_sqrt(c.get_mpz_t(), c2.get_mpz_t());
    if (c * c != c2) return std::nullopt;

    NFElement pi = E->element({NFElement(Rational(Int(a), Int(2))), NFElement(Rational(c, Int(2)))});
    NFElement pibar = E->element({NFElement(Rational(Int(a), Int(2))), NFElement(Rational(-c, Int(2)))});
    Polynomial lin = Polynomial::from_coeffs(E, {-pi, E->one()});
    Polynomial expect = Polynomial::from_rationals(
        nullptr, {Rational(static_cast<long>(p)), Rational(-a), Rational(1)});
    if (norm_poly(lin) != expect)
        throw Error("cm_split postcondition failed: Nm(t - pi) != t^2 - a t + p");
    return std::make_pair(std::move(pi), std::move(pibar));
}

/// Options for the dataset builders.
struct BuildOptions {
    bool twist_by_nonresidue = false;   // Q-sheet: use the per-prime quadratic twist
    bool conjugate_assignment = false;  // CM system: lambda2 gets the conjugate (negative fixture)
};

/// Good odd primes below the bound, excluding divisors of the global
/// discriminant (and always excluding 2 and 3).
inline std::vector<std::uint64_t> good_primes(long a, long b, std::uint64_t p_max) {
    Int disc = Int(4) * Int(a) * Int(a) * Int(a) + Int(27) * Int(b) * Int(b);
    if (disc == 0) throw DataError("curve is globally singular (4a^3 + 27b^2 = 0)");
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 5; p < p_max; ++p) {
        if (!Place::is_prime(p)) continue;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        out.push_back(p);
    }
    return out;
}

/// One Q-level sheet for the curve: samples t^2 - a_p t + p at every good
/// prime < p_max, plus extension places for the requested degrees. With
/// twist_by_nonresidue, each place counts the quadratic twist by the least
/// non-residue mod p instead.
inline RepSheet build_q_sheet(long a, long b, std::uint64_t p_max, const std::string& label,
                              std::uint64_t ell, const std::vector<unsigned>& ext_degrees = {},
                              const BuildOptions& opts = {}) {
    RepSheet sheet;
    sheet.E = nullptr;
    sheet.label = label;
    sheet.ell = ell;
    sheet.dim = 2;
    for (std::uint64_t p : good_primes(a, b, p_max)) {
        long ca = a, cb = b;
        if (opts.twist_by_nonresidue) {
            long m = static_cast<long>(p);
            long d = static_cast<long>(least_nonresidue(p));
            long d2 = d * d % m;
            long d3 = d2 * d % m;
            ca = ((a % m) + m) % m * d2 % m;
            cb = ((b % m) + m) % m * d3 % m;
        }
        EllipticCurve E(ca, cb, p);
        FrobSample s = frobenius_poly(E);
        sheet.add_entry(SheetEntry::unramified(s));
        for (unsigned k : ext_degrees) {
            if (k < 2) continue;
            sheet.add_entry(SheetEntry::unramified(base_change_sample(s, k)));
        }
    }
    return sheet;
}

/// The CM fixture: two lambda-sheets over an imaginary quadratic E, rank one,
/// with t - pi at ordinary split places and Unknown elsewhere. The honest
/// assignment gives both sheets the same polynomial; the conjugate assignment
/// produces the deliberately incompatible negative fixture. The Q-level
/// polynomial of every non-split place is kept on the sheets' side table.
inline System build_cm_system(long a, long b, const FieldPtr& E, std::uint64_t p_max,
                              const std::string& label1, std::uint64_t ell1,
                              const std::string& label2, std::uint64_t ell2,
                              const BuildOptions& opts = {}) {
    if (ell1 == ell2) throw DataError("the two lambda labels need distinct residue characteristics");
    System sys;
    sys.E = E;
    sys.dim = 1;
    RepSheet s1, s2;
    s1.E = s2.E = E;
    s1.label = label1;
    s2.label = label2;
    s1.ell = ell1;
    s2.ell = ell2;
    s1.dim = s2.dim = 1;

    for (std::uint64_t p : good_primes(a, b, p_max)) {
        EllipticCurve curve(a, b, p);
        long ap = count_points(curve);
        Place place(place_label(p), p, 1);
        auto split = cm_split(ap, p, E);
        if (split) {
            Polynomial lin1 = Polynomial::from_coeffs(E, {-split->first, E->one()});
            Polynomial lin2 = opts.conjugate_assignment
                                  ? Polynomial::from_coeffs(E, {-split->second, E->one()})
                                  : lin1;
            s1.add_entry(SheetEntry::unramified(FrobSample(place, 1, CharPoly(E, lin1))));
            s2.add_entry(SheetEntry::unramified(FrobSample(place, 1, CharPoly(E, lin2))));
        } else {
            s1.add_entry(SheetEntry::unknown(place));
            s2.add_entry(SheetEntry::unknown(place));
            CharPoly qp = CharPoly::from_rationals(
                {Rational(static_cast<long>(p)), Rational(-ap), Rational(1)});
            s1.qlevel_side.emplace(place.label, qp);
            s2.qlevel_side.emplace(place.label, qp);
        }
    }
    sys.sheets.push_back(std::move(s1));
    sys.sheets.push_back(std::move(s2));
    sys.validate();
    return sys;
}

}  // namespace frobsys

#endif
