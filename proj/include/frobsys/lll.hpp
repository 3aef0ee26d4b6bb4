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

#ifndef FROBSYS_LLL_HPP
#define FROBSYS_LLL_HPP

#include <cstddef>
#include <vector>

#include "rational.hpp"

namespace frobsys {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

namespace detail {

inline Rational dot(const IntVec& a, const IntVec& b) {
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return Rational(acc);
}

inline Rational dot(const std::vector<Rational>& a, const IntVec& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * Rational(b[i]);
    return acc;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// floor(x + 1/2): nearest integer, ties rounding up.
inline Int round_rational(const Rational& x) {
    Rational shifted = x + Rational(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.num().get_mpz_t(), shifted.den().get_mpz_t());
    return q;
}

}  // namespace detail

/// Textbook LLL with exact rational Gram-Schmidt, delta = 3/4. Rows may be
/// linearly dependent; dependent rows surface as zero vectors which the
/// caller can drop. Exact, deterministic.
inline void lll_reduce(IntMat& basis) {
    const std::size_t n = basis.size();
    if (n == 0) return;
    const std::size_t dim = basis[0].size();
    const Rational delta(3, 4);

    // remove zero rows up front
    IntMat rows;
    for (auto& r : basis) {
        bool zero = true;
        for (const auto& v : r)
            if (v != 0) zero = false;
        if (!zero) rows.push_back(std::move(r));
    }
    basis = std::move(rows);
    if (basis.empty()) return;

    auto gs = [&](std::vector<std::vector<Rational>>& ortho,
                  std::vector<std::vector<Rational>>& mu, std::vector<Rational>& norms) {
        const std::size_t k = basis.size();
        ortho.assign(k, std::vector<Rational>(dim, Rational(0)));
        mu.assign(k, std::vector<Rational>(k, Rational(0)));
        norms.assign(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Rational> v(dim);
            for (std::size_t j = 0; j < dim; ++j) v[j] = Rational(basis[i][j]);
            for (std::size_t j = 0; j < i; ++j) {
                if (norms[j].is_zero()) continue;
                mu[i][j] = detail::dot(ortho[j], basis[i]) / norms[j];
                for (std::size_t t = 0; t < dim; ++t) v[t] -= mu[i][j] * ortho[j][t];
            }
            ortho[i] = std::move(v);
            norms[i] = detail::dot(ortho[i], ortho[i]);
        }
    };

    std::vector<std::vector<Rational>> ortho, mu;
    std::vector<Rational> norms;
    gs(ortho, mu, norms);

    std::size_t k = 1;
    while (k < basis.size()) {
        // size reduction
        for (std::size_t j = k; j-- > 0;) {
            Int q = detail::round_rational(mu[k][j]);
            if (q != 0) {
                for (std::size_t t = 0; t < basis[0].size(); ++t) basis[k][t] -= q * basis[j][t];
                gs(ortho, mu, norms);
            }
        }
        // Lovasz condition; a zero-norm row (dependent) always swaps down
        Rational lhs = norms[k];
        Rational rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1];
        if (norms[k - 1].is_zero() || !(lhs < rhs)) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            gs(ortho, mu, norms);
            k = k > 1 ? k - 1 : 1;
        }
    }
    // drop rows that reduced to zero
    IntMat out;
    for (auto& r : basis) {
        bool zero = true;
        for (const auto& v : r)
            if (v != 0) zero = false;
        if (!zero) out.push_back(std::move(r));
    }
    basis = std::move(out);
}

/// Rank of an integer matrix, by exact rational elimination.
inline std::size_t integer_rank(const IntMat& m) {
    if (m.empty()) return 0;
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m) {
        std::vector<Rational> r;
        r.reserve(row.size());
        for (const auto& v : row) r.emplace_back(v);
        a.push_back(std::move(r));
    }
    std::size_t rank = 0;
    std::size_t cols = a[0].size();
    for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
        std::size_t sel = rank;
        while (sel < a.size() && a[sel][col].is_zero()) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[rank], a[sel]);
        Rational inv = a[rank][col].inverse();
        for (auto& v : a[rank]) v *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            Rational f = a[r][col];
            for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

/// Row-style Hermite basis of the lattice spanned by the rows: independent
/// rows in echelon form, computed by exact integer row reduction.
inline IntMat hermite_basis(IntMat rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    IntMat basis;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols; ++col) {
        // gcd-reduce all rows below pivot_row on this column
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot_row; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                if (best == rows.size() ||
                    cmp(abs(rows[r][col]), abs(rows[best][col])) < 0)
                    best = r;
            }
            if (best == rows.size()) break;  // column clear
            std::swap(rows[pivot_row], rows[best]);
            bool cleared = true;
            for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                Int q = rows[r][col] / rows[pivot_row][col];  // truncated division is fine here
                for (std::size_t c = 0; c < cols; ++c) rows[r][c] -= q * rows[pivot_row][c];
                if (rows[r][col] != 0) cleared = false;
            }
            if (cleared) {
                ++pivot_row;
                break;
            }
        }
        if (pivot_row == rows.size()) break;
    }
    for (std::size_t r = 0; r < pivot_row; ++r) basis.push_back(rows[r]);
    return basis;
}

/// Divides a vector by the gcd of its entries (primitive form); sign fixed
/// so the first nonzero entry is positive.
inline IntVec primitive_part(IntVec v) {
    Int g = 0;
    for (const auto& x : v) {
        Int ax = abs(x);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
    }
    if (g == 0 || g == 1) {
        // fall through to sign normalization
    } else {
        for (auto& x : v) x /= g;
    }
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

}  // namespace frobsys

#endif
