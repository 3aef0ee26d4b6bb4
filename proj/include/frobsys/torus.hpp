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

#ifndef FROBSYS_TORUS_HPP
#define FROBSYS_TORUS_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "charpoly.hpp"
#include "lll.hpp"
#include "rootfind.hpp"
#include "systems.hpp"
#include "threads.hpp"

namespace frobsys {

enum class TorusMode { ExactInField, Heuristic };

struct TorusOptions {
    TorusMode mode = TorusMode::ExactInField;
    mpfr_prec_t precision_bits = 256;
    long relation_bound = 32;
};

/// Exponent-vector relations among the distinct eigenvalue slots: each basis
/// vector v claims prod alpha_i^(v_i) is a root of unity. `verified` marks
/// vectors certified by exact arithmetic, as opposed to numeric candidates.
struct RelationLattice {
    std::size_t dimension = 0;
    std::vector<IntVec> basis;           // primitive, pairwise independent
    std::vector<bool> verified;
};

struct TorusRankResult {
    int rank_estimate = 0;
    int rank_certified_upper = 0;
    bool certified = false;
    mpfr_prec_t precision_bits_used = 0;
    RelationLattice lattice;
    std::vector<int> multiplicities;  // per distinct root slot
};

/// Squarefree decomposition over a characteristic-zero field (Yun):
/// returns pairwise-coprime squarefree factors with their multiplicities.
inline std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& P) {
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial f = P.monic();
    Polynomial g = poly_gcd(f, f.derivative());
    Polynomial w = f.exact_div(g);
    int mult = 1;
    while (w.degree() > 0) {
        Polynomial y = poly_gcd(w, g);
        Polynomial factor = w.exact_div(y);
        if (factor.degree() > 0) out.emplace_back(factor.monic(), mult);
        w = y;
        g = g.exact_div(y);
        ++mult;
    }
    return out;
}

namespace detail {

/// Rational roots of a monic polynomial with rational coefficients, found by
/// scaling to an integer polynomial and testing divisor candidates. Returns
/// nullopt when the divisor enumeration would be unreasonably large.
inline std::optional<std::vector<NFElement>> rational_roots(const Polynomial& A) {
    std::vector<Rational> rc;
    for (int i = 0; i <= A.degree(); ++i) {
        auto r = A.coeff(static_cast<std::size_t>(i)).as_rational();
        if (!r) return std::vector<NFElement>{};  // non-rational coefficients: no candidates
        rc.push_back(*r);
    }
    Int den_lcm = 1;
    for (const auto& r : rc) {
        Int g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), r.den().get_mpz_t());
        den_lcm = den_lcm / g * r.den();
    }
    Int lead = den_lcm;                      // scaled leading coefficient
    Int constant = rc[0].num() * (den_lcm / rc[0].den());
    if (constant == 0) return std::nullopt;  // charpoly constant terms are nonzero anyway

    auto divisors = [](Int n) -> std::optional<std::vector<Int>> {
        n = abs(n);
        std::vector<std::pair<Int, int>> fact;
        Int rem = n;
        for (Int d = 2; d * d <= rem && d < 1000000; d += 1) {
            if (rem % d != 0) continue;
            int e = 0;
            while (rem % d == 0) {
                rem /= d;
                ++e;
            }
            fact.emplace_back(d, e);
        }
        if (rem > 1) {
            if (rem > 1000000000) return std::nullopt;  // give up on huge factors
            fact.emplace_back(rem, 1);
        }
        std::vector<Int> out{1};
        for (const auto& [pr, e] : fact) {
            std::size_t base = out.size();
            Int pw = 1;
            for (int i = 1; i <= e; ++i) {
                pw *= pr;
                for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
            }
            if (out.size() > 20000) return std::nullopt;
        }
        return out;
    };

    auto num_divs = divisors(constant);
    auto den_divs = divisors(lead);
    if (!num_divs || !den_divs) return std::nullopt;

    std::vector<NFElement> roots;
    for (const Int& pnum : *num_divs) {
        for (const Int& pden : *den_divs) {
            for (int sign = 0; sign < 2; ++sign) {
                Rational cand(sign ? -pnum : pnum, pden);
                if (A.eval(NFElement(cand)).is_zero()) {
                    bool seen = false;
                    for (const auto& r : roots)
                        if (r == NFElement(cand)) seen = true;
                    if (!seen) roots.push_back(NFElement(cand));
                }
            }
        }
    }
    return roots;
}

}  // namespace detail

/// All roots of a squarefree monic polynomial inside its own coefficient
/// field, or nullopt when the polynomial does not split (or splitting could
/// not be decided). Linear and quadratic factors are solved exactly; higher
/// degrees proceed by trial candidates (rational roots) and deflation.
inline std::optional<std::vector<NFElement>> roots_in_field(Polynomial A) {
    const FieldPtr F = A.field();
    std::vector<NFElement> roots;
    auto divide_out = [&](const NFElement& r) {
        Polynomial lin = Polynomial::from_coeffs(F, {-r, F ? F->one() : NFElement(Rational(1))});
        A = A.exact_div(lin);
    };
    while (A.degree() > 0) {
        if (A.degree() == 1) {
            roots.push_back(-A.coeff(0));
            break;
        }
        if (A.degree() == 2) {
            NFElement a1 = A.coeff(1), a0 = A.coeff(0);
            NFElement disc = a1 * a1 - NFElement(Rational(4)) * a0;
            auto s = sqrt_in_field(F ? F->from_rational(Rational(0)) + disc : disc);
            if (!s.root) return std::nullopt;
            NFElement half = NFElement(Rational(1, 2));
            roots.push_back((-a1 + *s.root) * half);
            roots.push_back((-a1 - *s.root) * half);
            break;
        }
        // degree >= 3: peel off trial roots
        auto cands = detail::rational_roots(A);
        if (!cands || cands->empty()) return std::nullopt;
        bool progressed = false;
        for (const auto& r : *cands) {
            NFElement root = F ? F->from_rational(*r.as_rational()) : r;
            if (A.eval(root).is_zero()) {
                roots.push_back(root);
                divide_out(root);
                progressed = true;
                break;
            }
        }
        if (!progressed) return std::nullopt;
    }
    return roots;
}

namespace detail {

/// LLL-based candidate relations among complex numbers: integer vectors v
/// with sum v_i log|z_i| = 0 and sum v_i arg z_i in 2*pi*(1/M)Z, M the lcm
/// of admissible torsion orders. Entries of v bounded by relation_bound.
inline IntMat discover_relations(const std::vector<BigComplex>& zs, mpfr_prec_t prec,
                                 long relation_bound, long torsion_degree_bound) {
    const std::size_t k = zs.size();
    if (k == 0) return {};

    // M = lcm of orders m with phi(m) <= torsion_degree_bound
    Int M = 1;
    long mbound = 2 * torsion_degree_bound * torsion_degree_bound + 7;
    for (long m = 1; m <= mbound; ++m) {
        long phi = m, n = m;
        for (long p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            phi -= phi / p;
            while (n % p == 0) n /= p;
        }
        if (n > 1) phi -= phi / n;
        if (phi <= torsion_degree_bound) {
            Int mm(m);
            Int g;
            mpz_gcd(g.get_mpz_t(), M.get_mpz_t(), mm.get_mpz_t());
            M = M / g * mm;
        }
    }

    const long guard = 24;
    BigFloat scale = BigFloat::pow2(static_cast<long>(prec) - guard, prec);
    BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
    BigFloat slack_angle = two_pi / BigFloat::from_rational(Rational(M), prec);

    IntMat basis(k + 1, IntVec(k + 3, Int(0)));
    for (std::size_t i = 0; i < k; ++i) {
        basis[i][i] = 1;
        basis[i][k + 1] = (zs[i].log_abs() * scale).round_to_int();
        basis[i][k + 2] = (zs[i].arg() * scale).round_to_int();
    }
    basis[k][k] = 1;
    basis[k][k + 2] = (slack_angle * scale).round_to_int();

    lll_reduce(basis);

    Int threshold = Int(1) << static_cast<unsigned long>(prec / 2);
    IntMat candidates;
    std::set<std::vector<std::string>> seen;
    for (const auto& row : basis) {
        if (abs(row[k + 1]) > threshold || abs(row[k + 2]) > threshold) continue;
        IntVec v(row.begin(), row.begin() + static_cast<long>(k));
        bool nonzero = false, bounded = true;
        for (const auto& x : v) {
            if (x != 0) nonzero = true;
            if (abs(x) > relation_bound) bounded = false;
        }
        if (!nonzero || !bounded) continue;
        IntVec pv = primitive_part(std::move(v));
        std::vector<std::string> key;
        for (const auto& x : pv) key.push_back(x.get_str());
        if (seen.insert(key).second) candidates.push_back(std::move(pv));
    }
    return candidates;
}

inline NFElement relation_product(const std::vector<NFElement>& roots, const IntVec& v) {
    NFElement acc = roots[0].is_rational_field() ? NFElement(Rational(1))
                                                 : roots[0].field()->one();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (v[i] == 0) continue;
        acc *= roots[i].pow(v[i]);
    }
    return acc;
}

}  // namespace detail

/// Reroots a quadratic over Q that does not split there over Q(sqrt disc),
/// where the exact torus path applies. Other charpolys pass through.
inline CharPoly lift_quadratic_for_exact(const CharPoly& P) {
    if (P.field() || P.degree() != 2) return P;
    NFElement a1 = P.poly().coeff(1), a0 = P.poly().coeff(0);
    Rational disc = (a1 * a1 - NFElement(Rational(4)) * a0).rat();
    if (disc.sqrt().has_value()) return P;  // splits over Q already
    auto E = NumberField::extension(
        nullptr, "r", {NFElement(-disc), NFElement(Rational(0)), NFElement(Rational(1))});
    return CharPoly(E, P.poly().map_coeffs(E, [&](const NFElement& c) {
        return E->from_rational(c.rat());
    }));
}

/// Rank modulo torsion of the multiplicative group generated by the roots of
/// P. The exact path requires P to split over its own coefficient field and
/// certifies every relation by computing the product in the field and
/// testing it against the field's torsion exactly; `certified` is set only
/// when the doubled-precision rerun discovers nothing beyond the verified
/// relations. The heuristic path reports LLL candidates without
/// verification.
inline TorusRankResult torus_rank(const CharPoly& P, const TorusOptions& opts = {}) {
    const FieldPtr& F = P.field();
    auto factors = squarefree_decomposition(P.poly());

    std::vector<int> multiplicities;
    std::vector<NFElement> exact_roots;   // exact mode
    std::vector<BigComplex> zs;           // both modes
    const mpfr_prec_t prec = opts.precision_bits;

    auto images = embedding_generator_images(F, prec);
    auto images_hi = embedding_generator_images(F, 2 * prec);

    if (opts.mode == TorusMode::ExactInField) {
        for (const auto& [factor, mult] : factors) {
            auto roots = roots_in_field(factor);
            if (!roots)
                throw DataError(
                    "polynomial does not split over its coefficient field; exact mode unavailable");
            for (const auto& r : *roots) {
                exact_roots.push_back(r);
                multiplicities.push_back(mult);
            }
        }
        for (const auto& r : exact_roots) zs.push_back(embed_numeric(r, images, prec));
    } else {
        for (const auto& [factor, mult] : factors) {
            std::vector<BigComplex> coeffs;
            for (int i = 0; i <= factor.degree(); ++i)
                coeffs.push_back(embed_numeric(factor.coeff(static_cast<std::size_t>(i)), images, prec));
            auto roots = complex_roots(coeffs, prec);
            for (auto& z : roots) {
                zs.push_back(std::move(z));
                multiplicities.push_back(mult);
            }
        }
    }

    const std::size_t k = zs.size();
    long abs_deg = F ? F->absolute_degree() : 1;
    long torsion_bound = opts.mode == TorusMode::ExactInField
                             ? abs_deg
                             : std::max<long>(2, abs_deg * std::max(1, P.degree()));

    IntMat cands = detail::discover_relations(zs, prec, opts.relation_bound, torsion_bound);

    TorusRankResult result;
    result.precision_bits_used = prec;
    result.multiplicities = multiplicities;
    result.lattice.dimension = k;

    if (opts.mode == TorusMode::ExactInField) {
        auto verify = [&](const IntMat& vs) {
            IntMat ok;
            for (const auto& v : vs) {
                NFElement beta = detail::relation_product(exact_roots, v);
                if (root_of_unity_order(beta)) ok.push_back(v);
            }
            return ok;
        };
        IntMat verified1 = verify(cands);

        // escalate: rerun discovery at doubled precision
        std::vector<BigComplex> zs_hi;
        for (const auto& r : exact_roots) zs_hi.push_back(embed_numeric(r, images_hi, 2 * prec));
        IntMat cands_hi =
            detail::discover_relations(zs_hi, 2 * prec, opts.relation_bound, torsion_bound);
        IntMat verified2 = verify(cands_hi);

        IntMat all = verified1;
        all.insert(all.end(), verified2.begin(), verified2.end());
        std::size_t rank_rel = integer_rank(all);
        result.certified = integer_rank(verified1) == rank_rel;
        result.rank_estimate = static_cast<int>(k - rank_rel);
        result.rank_certified_upper = result.rank_estimate;

        IntMat basis = hermite_basis(all);
        for (auto& row : basis) {
            IntVec pv = primitive_part(row);
            NFElement beta = detail::relation_product(exact_roots, pv);
            bool ok = root_of_unity_order(beta).has_value();
            result.lattice.basis.push_back(std::move(pv));
            result.lattice.verified.push_back(ok);
            if (!ok) result.certified = false;  // a Hermite row failing re-verification
        }
    } else {
        std::size_t rank_rel = integer_rank(cands);
        result.rank_estimate = static_cast<int>(k - rank_rel);
        result.rank_certified_upper = static_cast<int>(k);
        result.certified = false;
        IntMat basis = hermite_basis(cands);
        for (auto& row : basis) {
            result.lattice.basis.push_back(primitive_part(row));
            result.lattice.verified.push_back(false);
        }
    }
    return result;
}

/// Per-lambda rank comparison at one place: samples are brought to a common
/// level, each gets a torus rank, and agreement is reported.
struct RankCompareEntry {
    std::string label;
    TorusRankResult result;
};

struct RankCompareReport {
    long common_level = 1;
    std::vector<RankCompareEntry> entries;
    bool ranks_agree = true;
    bool all_certified = true;
};

inline RankCompareReport rank_compare(const std::vector<std::pair<std::string, FrobSample>>& samples,
                                      const TorusOptions& opts = {}) {
    if (samples.empty()) throw DataError("rank_compare needs at least one sample");
    const std::string& place0 = samples.front().second.place.label;
    int deg0 = samples.front().second.P.degree();
    long level = 1;
    for (const auto& [label, s] : samples) {
        if (s.place.label != place0) throw DataError("rank_compare samples must share one place");
        if (s.P.degree() != deg0) throw DataError("rank_compare samples must have equal degrees");
        level = std::lcm(level, s.n);
    }
    RankCompareReport report;
    report.common_level = level;
    report.entries.resize(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        CharPoly lifted = normalize_to_level(samples[i].second, level);
        report.entries[i] = RankCompareEntry{samples[i].first, torus_rank(lifted, opts)};
    });
    for (const auto& e : report.entries) {
        if (e.result.rank_estimate != report.entries.front().result.rank_estimate)
            report.ranks_agree = false;
        if (!e.result.certified) report.all_certified = false;
    }
    return report;
}

}  // namespace frobsys

#endif
