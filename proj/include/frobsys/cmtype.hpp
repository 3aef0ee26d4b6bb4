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

#ifndef FROBSYS_CMTYPE_HPP
#define FROBSYS_CMTYPE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace frobsys {

/// Abstract embedding set of a CM field: indices 0..2g-1 with a
/// fixed-point-free involution (complex conjugation).
class CMField {
  public:
    CMField(std::size_t size, std::vector<std::size_t> dagger)
        : size_(size), dagger_(std::move(dagger)) {
        if (size_ == 0 || size_ % 2 != 0) throw DataError("embedding set size must be even and positive");
        if (dagger_.size() != size_) throw DataError("involution has the wrong length");
        for (std::size_t s = 0; s < size_; ++s) {
            if (dagger_[s] >= size_) throw DataError("involution maps outside the index set");
            if (dagger_[s] == s) throw DataError("involution must be fixed-point-free");
            if (dagger_[dagger_[s]] != s) throw DataError("dagger is not an involution");
        }
    }

    /// The standard field of size 2g: sigma and sigma+g are conjugate.
    static CMField standard(std::size_t g) {
        std::vector<std::size_t> dag(2 * g);
        for (std::size_t s = 0; s < g; ++s) {
            dag[s] = s + g;
            dag[s + g] = s;
        }
        return CMField(2 * g, std::move(dag));
    }

    std::size_t size() const { return size_; }
    std::size_t dagger(std::size_t s) const { return dagger_[s]; }

    std::set<std::size_t> dagger_image(const std::set<std::size_t>& t) const {
        std::set<std::size_t> out;
        for (std::size_t s : t) out.insert(dagger_[s]);
        return out;
    }

    friend bool operator==(const CMField& a, const CMField& b) {
        return a.size_ == b.size_ && a.dagger_ == b.dagger_;
    }

  private:
    std::size_t size_;
    std::vector<std::size_t> dagger_;
};

/// A CM type: one embedding out of every conjugate pair.
class CMType {
  public:
    CMType(CMField field, std::set<std::size_t> phi) : field_(std::move(field)), phi_(std::move(phi)) {
        for (std::size_t s = 0; s < field_.size(); ++s) {
            bool in_phi = phi_.count(s) > 0;
            bool conj_in_phi = phi_.count(field_.dagger(s)) > 0;
            if (in_phi == conj_in_phi)
                throw DataError("CM type must contain exactly one of each conjugate pair");
        }
    }

    const CMField& field() const { return field_; }
    const std::set<std::size_t>& phi() const { return phi_; }
    bool contains(std::size_t s) const { return phi_.count(s) > 0; }

    /// All CM types on the field, lexicographically ordered; 2^g of them.
    static std::vector<CMType> enumerate(const CMField& field) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::set<std::size_t> seen;
        for (std::size_t s = 0; s < field.size(); ++s) {
            if (seen.count(s)) continue;
            seen.insert(s);
            seen.insert(field.dagger(s));
            pairs.emplace_back(s, field.dagger(s));
        }
        std::vector<CMType> out;
        for (std::size_t mask = 0; mask < (std::size_t(1) << pairs.size()); ++mask) {
            std::set<std::size_t> phi;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                phi.insert(mask & (std::size_t(1) << i) ? pairs[i].second : pairs[i].first);
            out.emplace_back(field, std::move(phi));
        }
        std::sort(out.begin(), out.end(), [](const CMType& a, const CMType& b) {
            return std::lexicographical_compare(a.phi().begin(), a.phi().end(), b.phi().begin(),
                                                b.phi().end());
        });
        return out;
    }

  private:
    CMField field_;
    std::set<std::size_t> phi_;
};

/// Rank-one E-Hodge type: one bidegree (p, q) per embedding, p + q = weight.
class EHodgeType {
  public:
    EHodgeType(CMField field, int weight, std::vector<std::pair<int, int>> bidegree)
        : field_(std::move(field)), weight_(weight), bidegree_(std::move(bidegree)) {
        if (bidegree_.size() != field_.size())
            throw DataError("bidegree map must cover every embedding");
        for (const auto& [p, q] : bidegree_)
            if (p + q != weight_) throw DataError("bidegree does not sum to the weight");
    }

    const CMField& field() const { return field_; }
    int weight() const { return weight_; }
    const std::vector<std::pair<int, int>>& bidegree() const { return bidegree_; }

    friend bool operator==(const EHodgeType& a, const EHodgeType& b) {
        return a.field_ == b.field_ && a.weight_ == b.weight_ && a.bidegree_ == b.bidegree_;
    }

  private:
    CMField field_;
    int weight_;
    std::vector<std::pair<int, int>> bidegree_;
};

/// Level: max(p - q) over the embeddings. Always computed, never stored.
inline int level(const EHodgeType& v) {
    int m = v.bidegree().front().first - v.bidegree().front().second;
    for (const auto& [p, q] : v.bidegree()) m = std::max(m, p - q);
    return m;
}

/// The embeddings acting on the upper half of the Hodge decomposition:
/// T = { sigma : p(sigma) >= ceil(weight / 2) }.
inline std::set<std::size_t> upper_set(const EHodgeType& v) {
    int n1 = v.weight() + 1;  // ceil(w/2) = floor((w+1)/2)
    int half = n1 / 2 - (n1 % 2 != 0 && n1 < 0 ? 1 : 0);
    std::set<std::size_t> t;
    for (std::size_t s = 0; s < v.field().size(); ++s)
        if (v.bidegree()[s].first >= half) t.insert(s);
    return t;
}

/// The strictly-upper set { sigma : p(sigma) > q(sigma) }. This is the set
/// that must avoid Phi for a half-twist to lower the level; it agrees with
/// upper_set at odd weights and drops the balanced slots at even weights,
/// which is what makes the level-lowering ladder run to the bottom.
inline std::set<std::size_t> twist_blocking_set(const EHodgeType& v) {
    std::set<std::size_t> t;
    for (std::size_t s = 0; s < v.field().size(); ++s)
        if (v.bidegree()[s].first > v.bidegree()[s].second) t.insert(s);
    return t;
}

/// Weight-1 Hodge type of a CM type: (1,0) on Phi, (0,1) on the conjugates.
inline EHodgeType cm_type_hodge(const CMType& phi) {
    std::vector<std::pair<int, int>> bid(phi.field().size());
    for (std::size_t s = 0; s < phi.field().size(); ++s)
        bid[s] = phi.contains(s) ? std::make_pair(1, 0) : std::make_pair(0, 1);
    return EHodgeType(phi.field(), 1, std::move(bid));
}

/// Tensor by the CM type's rank-one structure: bidegrees shift by (1,0) on
/// Phi and (0,1) on the conjugates. Requires level >= 1 and Phi disjoint
/// from the strictly-upper set; the postconditions weight+1 and level-1 are
/// asserted.
inline EHodgeType half_twist(const EHodgeType& v, const CMType& phi) {
    if (!(v.field() == phi.field())) throw DataError("half twist across different CM fields");
    int m = level(v);
    if (m < 1) throw DataError("half twist requires level >= 1");
    auto blocked = twist_blocking_set(v);
    for (std::size_t s : phi.phi())
        if (blocked.count(s))
            throw DataError("CM type meets the upper set; the twist would not lower the level");

    std::vector<std::pair<int, int>> bid = v.bidegree();
    for (std::size_t s = 0; s < bid.size(); ++s) {
        if (phi.contains(s))
            bid[s].first += 1;
        else
            bid[s].second += 1;
    }
    EHodgeType w(v.field(), v.weight() + 1, std::move(bid));
    if (w.weight() != v.weight() + 1 || level(w) != m - 1)
        throw Error("half twist postcondition failed");
    return w;
}

/// Lexicographically least CM type disjoint from the strictly-upper set T:
/// it must contain the conjugates of T and takes the smaller index from every
/// remaining pair. None when T meets its own conjugate.
inline std::optional<CMType> find_compatible_cm_type(const EHodgeType& v) {
    auto t = twist_blocking_set(v);
    auto tdag = v.field().dagger_image(t);
    for (std::size_t s : t)
        if (tdag.count(s)) return std::nullopt;
    std::set<std::size_t> phi = tdag;
    for (std::size_t s = 0; s < v.field().size(); ++s) {
        if (phi.count(s) || phi.count(v.field().dagger(s))) continue;
        phi.insert(std::min(s, v.field().dagger(s)));
    }
    return CMType(v.field(), std::move(phi));
}

/// The full level-lowering ladder: repeated compatible half twists down to
/// level 0. Length equals the initial level for honest rank-one inputs
/// (whose bidegrees are conjugate-symmetric).
inline std::vector<std::pair<CMType, EHodgeType>> half_twist_ladder(const EHodgeType& v) {
    std::vector<std::pair<CMType, EHodgeType>> ladder;
    EHodgeType current = v;
    while (level(current) >= 1) {
        auto phi = find_compatible_cm_type(current);
        if (!phi)
            throw DataError("no compatible CM type at level " + std::to_string(level(current)) +
                            "; input is not conjugate-symmetric");
        current = half_twist(current, *phi);
        ladder.emplace_back(std::move(*phi), current);
    }
    return ladder;
}

}  // namespace frobsys

#endif
