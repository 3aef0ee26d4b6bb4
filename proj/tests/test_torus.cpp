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

#include <frobsys/torus.hpp>

#include <random>

#include "catch_amalgamated.hpp"

using namespace frobsys;

namespace {

FieldPtr gaussian() {
    return NumberField::extension(nullptr, "i",
                                  {NFElement(Rational(1)), NFElement(Rational(0)), NFElement(Rational(1))});
}

FieldPtr imag_quadratic(long d) {
    return NumberField::extension(
        nullptr, "w", {NFElement(Rational(d)), NFElement(Rational(0)), NFElement(Rational(1))});
}

CharPoly qcp(std::initializer_list<long> asc) {
    std::vector<Rational> c;
    for (long v : asc) c.emplace_back(v);
    return CharPoly::from_rationals(c);
}

}  // namespace

TEST_CASE("complex root finder on simple data") {
    // t^2 + 1 over the rationals: roots +/- i
    std::vector<BigComplex> coeffs;
    mpfr_prec_t prec = 128;
    coeffs.push_back(BigComplex(BigFloat::from_long(1, prec), BigFloat::from_long(0, prec)));
    coeffs.push_back(BigComplex(BigFloat::from_long(0, prec), BigFloat::from_long(0, prec)));
    coeffs.push_back(BigComplex(BigFloat::from_long(1, prec), BigFloat::from_long(0, prec)));
    auto roots = complex_roots(coeffs, prec);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0].im.to_double() + 1.0) < 1e-30);
    CHECK(std::abs(roots[1].im.to_double() - 1.0) < 1e-30);
    CHECK(std::abs(roots[0].re.to_double()) < 1e-30);
}

TEST_CASE("lll finds an integer relation") {
    // rows encode 3 + 5 = 8 scaled by 10^6
    IntMat basis = {
        {1, 0, 0, 3000000},
        {0, 1, 0, 5000000},
        {0, 0, 1, -8000000},
    };
    lll_reduce(basis);
    bool found = false;
    for (const auto& row : basis) {
        if (row[0] == 1 && row[1] == 1 && row[2] == 1 && row[3] == 0) found = true;
        if (row[0] == -1 && row[1] == -1 && row[2] == -1 && row[3] == 0) found = true;
    }
    CHECK(found);
}

TEST_CASE("hermite basis and ranks") {
    IntMat m = {{2, 4, 6}, {1, 2, 3}, {0, 0, 0}, {3, 6, 9}};
    CHECK(integer_rank(m) == 1);
    auto h = hermite_basis(m);
    REQUIRE(h.size() == 1);
    CHECK(primitive_part(h[0]) == IntVec{1, 2, 3});

    IntMat m2 = {{1, 0, 5}, {0, 1, -2}};
    CHECK(integer_rank(m2) == 2);
    CHECK(hermite_basis(m2).size() == 2);
}

TEST_CASE("squarefree decomposition") {
    Polynomial p = Polynomial::from_rationals(nullptr, {Rational(-1), Rational(1)});  // t-1
    Polynomial q = Polynomial::from_rationals(nullptr, {Rational(-2), Rational(1)});  // t-2
    auto dec = squarefree_decomposition(p * p * q);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == q);
    CHECK(dec[0].second == 1);
    CHECK(dec[1].first == p);
    CHECK(dec[1].second == 2);
}

TEST_CASE("roots_in_field") {
    auto Qi = gaussian();
    // t^2 - 2t + 5 splits over Q(i)
    Polynomial P = Polynomial::from_rationals(Qi, {Rational(5), Rational(-2), Rational(1)});
    auto roots = roots_in_field(P);
    REQUIRE(roots.has_value());
    REQUIRE(roots->size() == 2);
    NFElement pi = Qi->element({NFElement(Rational(1)), NFElement(Rational(2))});
    CHECK(((*roots)[0] == pi || (*roots)[1] == pi));

    // does not split over Q
    Polynomial PQ = Polynomial::from_rationals(nullptr, {Rational(5), Rational(-2), Rational(1)});
    CHECK(!roots_in_field(PQ).has_value());

    // rational roots of a cubic: (t-2)(t-3)(t-5)
    Polynomial cubic = Polynomial::from_rationals(
        nullptr, {Rational(-30), Rational(31), Rational(-10), Rational(1)});
    auto croots = roots_in_field(cubic);
    REQUIRE(croots.has_value());
    CHECK(croots->size() == 3);
}

TEST_CASE("torus rank on the worked examples") {
    TorusOptions opts;

    SECTION("t - 5 over Q: rank 1 certified") {
        auto r = torus_rank(qcp({-5, 1}), opts);
        CHECK(r.rank_estimate == 1);
        CHECK(r.rank_certified_upper == 1);
        CHECK(r.certified);
        CHECK(r.lattice.basis.empty());
    }

    SECTION("t^2 + 7 over Q(sqrt -7): rank 1 certified with the sign relation") {
        auto E = imag_quadratic(7);
        CharPoly P(E, Polynomial::from_rationals(E, {Rational(7), Rational(0), Rational(1)}));
        auto r = torus_rank(P, opts);
        CHECK(r.rank_estimate == 1);
        CHECK(r.certified);
        REQUIRE(r.lattice.basis.size() == 1);
        CHECK(r.lattice.verified[0]);
        // the relation is alpha1 - alpha2 with product -1
        IntVec v = r.lattice.basis[0];
        CHECK(((v == IntVec{1, -1}) || (v == IntVec{-1, 1})));
    }

    SECTION("t^2 - 2t + 5 over Q(i): rank 2 certified") {
        auto Qi = gaussian();
        CharPoly P(Qi, Polynomial::from_rationals(Qi, {Rational(5), Rational(-2), Rational(1)}));
        auto r = torus_rank(P, opts);
        CHECK(r.rank_estimate == 2);
        CHECK(r.certified);
        CHECK(r.lattice.basis.empty());
    }

    SECTION("split CM factor t - (1+2i): rank 1 certified") {
        auto Qi = gaussian();
        NFElement pi = Qi->element({NFElement(Rational(1)), NFElement(Rational(2))});
        CharPoly P(Qi, Polynomial::from_coeffs(Qi, {-pi, Qi->one()}));
        auto r = torus_rank(P, opts);
        CHECK(r.rank_estimate == 1);
        CHECK(r.certified);
    }

    SECTION("exact mode on a non-split polynomial is an error") {
        CHECK_THROWS_AS(torus_rank(qcp({5, -2, 1}), opts), DataError);
    }

    SECTION("heuristic mode works without splitting") {
        TorusOptions h;
        h.mode = TorusMode::Heuristic;
        auto r = torus_rank(qcp({5, -2, 1}), h);
        CHECK(r.rank_estimate == 2);
        CHECK(!r.certified);
        CHECK(r.rank_certified_upper == 2);
    }
}

TEST_CASE("roots of unity collapse the rank") {
    // (t-1)(t+1): both eigenvalues are torsion, rank 0
    auto r = torus_rank(qcp({-1, 0, 1}), {});
    CHECK(r.rank_estimate == 0);
    CHECK(r.certified);
}

TEST_CASE("torus rank is invariant under power maps") {
    TorusOptions opts;
    auto Qi = gaussian();
    auto E7 = imag_quadratic(7);
    std::vector<CharPoly> inputs;
    inputs.push_back(
        CharPoly(Qi, Polynomial::from_rationals(Qi, {Rational(5), Rational(-2), Rational(1)})));
    inputs.push_back(
        CharPoly(E7, Polynomial::from_rationals(E7, {Rational(7), Rational(0), Rational(1)})));
    inputs.push_back(qcp({-5, 1}));
    for (const auto& P : inputs) {
        int base_rank = torus_rank(P, opts).rank_estimate;
        for (long n = 2; n <= 6; ++n) {
            auto r = torus_rank(power_charpoly(P, n), opts);
            REQUIRE(r.rank_estimate == base_rank);
            REQUIRE(r.certified);
        }
    }
}

TEST_CASE("products of distinct primes have full rank") {
    std::mt19937 rng(12121);
    std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19};
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(primes.begin(), primes.end(), rng);
        std::uniform_int_distribution<std::size_t> kdist(1, 4);
        std::size_t k = kdist(rng);
        Polynomial prod = Polynomial::from_rationals(nullptr, {Rational(1)});
        for (std::size_t i = 0; i < k; ++i)
            prod = prod * Polynomial::from_rationals(nullptr, {Rational(-primes[i]), Rational(1)});
        auto r = torus_rank(CharPoly(nullptr, prod), {});
        REQUIRE(r.rank_estimate == static_cast<int>(k));
        REQUIRE(r.certified);
    }
}

TEST_CASE("tensor squares do not raise the rank; scaling shifts it by at most 1") {
    TorusOptions opts;
    auto Qi = gaussian();
    CharPoly P(Qi, Polynomial::from_rationals(Qi, {Rational(5), Rational(-2), Rational(1)}));
    int base = torus_rank(P, opts).rank_estimate;

    auto tsq = torus_rank(tensor_charpoly(P, P), opts);
    CHECK(tsq.rank_estimate <= base);

    CharPoly scaled = tensor_charpoly(
        P, CharPoly(Qi, Polynomial::from_rationals(Qi, {Rational(-5), Rational(1)})));
    auto rs = torus_rank(scaled, opts);
    CHECK(std::abs(rs.rank_estimate - base) <= 1);
}

TEST_CASE("multiplicities are collapsed") {
    // (t-2)^3: one distinct slot, rank 1
    Polynomial cube = Polynomial::from_rationals(nullptr, {Rational(-2), Rational(1)}).pow(3);
    auto r = torus_rank(CharPoly(nullptr, cube), {});
    CHECK(r.rank_estimate == 1);
    REQUIRE(r.multiplicities.size() == 1);
    CHECK(r.multiplicities[0] == 3);
}

TEST_CASE("rank_compare brings samples to a common level and compares") {
    auto Qi = gaussian();
    NFElement pi = Qi->element({NFElement(Rational(1)), NFElement(Rational(2))});
    NFElement pibar = Qi->element({NFElement(Rational(1)), NFElement(Rational(-2))});
    FrobSample s1(Place("p5", 5, 1), 1, CharPoly(Qi, Polynomial::from_coeffs(Qi, {-pi, Qi->one()})));
    FrobSample s2(Place("p5", 5, 1), 1,
                  CharPoly(Qi, Polynomial::from_coeffs(Qi, {-pibar, Qi->one()})));

    auto report = rank_compare({{"l3", s1}, {"l7", s2}});
    CHECK(report.common_level == 1);
    CHECK(report.ranks_agree);
    CHECK(report.all_certified);
    CHECK(report.entries[0].result.rank_estimate == 1);

    // mixed places are rejected
    FrobSample other(Place("p13", 13, 1), 1,
                     CharPoly(Qi, Polynomial::from_coeffs(Qi, {-pi, Qi->one()})));
    CHECK_THROWS_AS(rank_compare({{"a", s1}, {"b", other}}), DataError);
}

TEST_CASE("torus rank determinism across thread counts") {
    auto E7 = imag_quadratic(7);
    CharPoly P(E7, Polynomial::from_rationals(E7, {Rational(7), Rational(0), Rational(1)}));
    setenv("FROBSYS_THREADS", "1", 1);
    auto r1 = torus_rank(P, {});
    setenv("FROBSYS_THREADS", "5", 1);
    auto r5 = torus_rank(P, {});
    unsetenv("FROBSYS_THREADS");
    CHECK(r1.rank_estimate == r5.rank_estimate);
    CHECK(r1.lattice.basis == r5.lattice.basis);
}
