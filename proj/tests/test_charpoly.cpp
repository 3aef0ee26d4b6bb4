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

#include <frobsys/charpoly.hpp>

#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

using namespace frobsys;

namespace {

CharPoly qcp(std::initializer_list<long> asc) {
    std::vector<Rational> c;
    for (long v : asc) c.emplace_back(v);
    return CharPoly::from_rationals(c);
}

FieldPtr gaussian() {
    return NumberField::extension(nullptr, "i",
                                  {NFElement(Rational(1)), NFElement(Rational(0)), NFElement(Rational(1))});
}

CharPoly random_invertible_charpoly(std::mt19937& rng, const FieldPtr& F, int deg) {
    std::uniform_int_distribution<long> dist(-3, 3);
    for (;;) {
        std::vector<NFElement> c;
        for (int i = 0; i < deg; ++i) {
            if (!F) {
                c.emplace_back(Rational(dist(rng)));
            } else {
                std::vector<NFElement> coords;
                for (int j = 0; j < F->degree(); ++j) coords.emplace_back(Rational(dist(rng)));
                c.push_back(F->element(coords));
            }
        }
        if (c[0].is_zero()) continue;
        c.push_back(F ? F->one() : NFElement(Rational(1)));
        return CharPoly(F, Polynomial::from_coeffs(F, std::move(c)));
    }
}

}  // namespace

TEST_CASE("type invariants of CharPoly") {
    CHECK_THROWS_AS(qcp({0, 1}), DataError);  // zero constant term
    CHECK_THROWS_AS(qcp({1, 2}), DataError);  // not monic
    CHECK_THROWS_AS(qcp({1}), DataError);     // degree 0
    CHECK_NOTHROW(qcp({-2, 1}));
}

TEST_CASE("power charpoly on the worked examples") {
    CHECK(power_charpoly(qcp({7, 0, 1}), 2) == qcp({49, 14, 1}));
    CHECK(power_charpoly(qcp({2, -3, 1}), 3) == qcp({8, -9, 1}));
    CHECK(power_charpoly(qcp({5, -2, 1}), 1) == qcp({5, -2, 1}));
    CHECK_THROWS_AS(power_charpoly(qcp({5, -2, 1}), 0), DataError);
}

TEST_CASE("dual charpoly examples and involution") {
    CHECK(dual_charpoly(qcp({-2, 1})) == CharPoly::from_rationals({Rational(-1, 2), Rational(1)}));
    CHECK(dual_charpoly(qcp({5, -2, 1})) ==
          CharPoly::from_rationals({Rational(1, 5), Rational(-2, 5), Rational(1)}));
    std::mt19937 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> deg(1, 5);
        CharPoly P = random_invertible_charpoly(rng, nullptr, deg(rng));
        REQUIRE(dual_charpoly(dual_charpoly(P)) == P);
    }
}

TEST_CASE("sum and tensor on the worked examples") {
    CHECK(sum_charpoly(qcp({-2, 1}), qcp({-3, 1})) == qcp({6, -5, 1}));
    CHECK(sum_charpoly(qcp({1, 0, 1}), qcp({1, 0, 1})) == qcp({1, 0, 2, 0, 1}));

    CHECK(tensor_charpoly(qcp({-2, 1}), qcp({-3, 1})) == qcp({-6, 1}));
    CHECK(tensor_charpoly(qcp({-1, 0, 1}), qcp({-5, 1})) == qcp({-25, 0, 1}));
    // (t^2-3t+2) tensor itself: eigenvalues {1,2} x {1,2} = {1,2,2,4}
    CharPoly expected(nullptr, Polynomial::from_rationals(nullptr, {Rational(-1), Rational(1)}) *
                                   Polynomial::from_rationals(nullptr, {Rational(-2), Rational(1)}) *
                                   Polynomial::from_rationals(nullptr, {Rational(-2), Rational(1)}) *
                                   Polynomial::from_rationals(nullptr, {Rational(-4), Rational(1)}));
    CHECK(tensor_charpoly(qcp({2, -3, 1}), qcp({2, -3, 1})) == expected);
}

TEST_CASE("hom charpoly examples") {
    CHECK(hom_charpoly(qcp({-2, 1}), qcp({-6, 1})) == qcp({-3, 1}));
    CHECK(hom_charpoly(qcp({5, -2, 1}), qcp({-1, 1})) == dual_charpoly(qcp({5, -2, 1})));
    // (t-1)^deg P divides hom(P, P)
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> deg(1, 4);
        CharPoly P = random_invertible_charpoly(rng, nullptr, deg(rng));
        CharPoly H = hom_charpoly(P, P);
        Polynomial divisor = Polynomial::from_rationals(nullptr, {Rational(-1), Rational(1)})
                                 .pow(static_cast<unsigned long>(P.degree()));
        auto [q, r] = H.poly().divmod(divisor);
        (void)q;
        REQUIRE(r.is_zero());
    }
}

TEST_CASE("combinators agree with exact matrix oracles") {
    std::mt19937 rng(20240202);
    std::uniform_int_distribution<int> dim_dist(1, 4);
    std::uniform_int_distribution<long> entry(-3, 3);
    int done = 0;
    while (done < 60) {
        std::size_t n = static_cast<std::size_t>(dim_dist(rng));
        std::size_t m = static_cast<std::size_t>(dim_dist(rng));
        oracles::Matrix A(n, std::vector<NFElement>(n, NFElement(Rational(0))));
        oracles::Matrix B(m, std::vector<NFElement>(m, NFElement(Rational(0))));
        for (auto& row : A)
            for (auto& x : row) x = NFElement(Rational(entry(rng)));
        for (auto& row : B)
            for (auto& x : row) x = NFElement(Rational(entry(rng)));
        Polynomial fa = oracles::mat_charpoly(nullptr, A);
        Polynomial fb = oracles::mat_charpoly(nullptr, B);
        if (fa.constant_term().is_zero() || fb.constant_term().is_zero()) continue;
        CharPoly PA(nullptr, fa), PB(nullptr, fb);

        REQUIRE(power_charpoly(PA, 3) ==
                CharPoly(nullptr, oracles::mat_charpoly(nullptr, oracles::mat_pow(nullptr, A, 3))));
        REQUIRE(sum_charpoly(PA, PB) ==
                CharPoly(nullptr,
                         oracles::mat_charpoly(nullptr, oracles::mat_direct_sum(nullptr, A, B))));
        REQUIRE(tensor_charpoly(PA, PB) ==
                CharPoly(nullptr,
                         oracles::mat_charpoly(nullptr, oracles::mat_kronecker(nullptr, A, B))));
        REQUIRE(dual_charpoly(PA) ==
                CharPoly(nullptr, oracles::mat_charpoly(nullptr, oracles::mat_inverse(nullptr, A))));
        ++done;
    }
}

TEST_CASE("power charpoly agrees with the Newton-identity oracle") {
    std::mt19937 rng(611);
    for (auto F : {FieldPtr(nullptr), gaussian()}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::uniform_int_distribution<int> deg(1, 5);
            std::uniform_int_distribution<long> ndist(1, 6);
            CharPoly P = random_invertible_charpoly(rng, F, deg(rng));
            long n = ndist(rng);
            REQUIRE(power_charpoly(P, n) == oracles::newton_power_charpoly(P, n));
        }
    }
}

TEST_CASE("power multiplicativity") {
    std::mt19937 rng(390625);
    for (auto F : {FieldPtr(nullptr), gaussian()}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<int> deg(1, 5);
            std::uniform_int_distribution<long> ndist(1, 6);
            CharPoly P = random_invertible_charpoly(rng, F, deg(rng));
            long a = ndist(rng), b = ndist(rng);
            REQUIRE(power_charpoly(power_charpoly(P, a), b) == power_charpoly(P, a * b));
        }
    }
}

TEST_CASE("tensor is commutative and associative, sum distributes") {
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 15; ++trial) {
        std::uniform_int_distribution<int> deg(1, 3);
        CharPoly P = random_invertible_charpoly(rng, nullptr, deg(rng));
        CharPoly Q = random_invertible_charpoly(rng, nullptr, deg(rng));
        CharPoly R = random_invertible_charpoly(rng, nullptr, deg(rng));
        REQUIRE(tensor_charpoly(P, Q) == tensor_charpoly(Q, P));
        REQUIRE(tensor_charpoly(tensor_charpoly(P, Q), R) ==
                tensor_charpoly(P, tensor_charpoly(Q, R)));
        REQUIRE(tensor_charpoly(P, sum_charpoly(Q, R)) ==
                sum_charpoly(tensor_charpoly(P, Q), tensor_charpoly(P, R)));
    }
}

TEST_CASE("outputs preserve the CharPoly invariants") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> deg(1, 4);
        CharPoly P = random_invertible_charpoly(rng, nullptr, deg(rng));
        CharPoly Q = random_invertible_charpoly(rng, nullptr, deg(rng));
        for (const CharPoly& out : {power_charpoly(P, 4), dual_charpoly(P), sum_charpoly(P, Q),
                                    tensor_charpoly(P, Q), hom_charpoly(P, Q)}) {
            REQUIRE(out.poly().is_monic());
            REQUIRE(!out.poly().constant_term().is_zero());
        }
        REQUIRE(sum_charpoly(P, Q).degree() == P.degree() + Q.degree());
        REQUIRE(tensor_charpoly(P, Q).degree() == P.degree() * Q.degree());
    }
}

TEST_CASE("field mismatch is rejected by binary combinators") {
    auto Qi = gaussian();
    CharPoly P = qcp({-2, 1});
    CharPoly R(Qi, Polynomial::from_coeffs(Qi, {-Qi->generator(), Qi->one()}));
    CHECK_THROWS_AS(sum_charpoly(P, R), FieldMismatchError);
    CHECK_THROWS_AS(tensor_charpoly(P, R), FieldMismatchError);
    CHECK_THROWS_AS(hom_charpoly(P, R), FieldMismatchError);
}
