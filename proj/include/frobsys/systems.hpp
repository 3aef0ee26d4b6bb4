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

#ifndef FROBSYS_SYSTEMS_HPP
#define FROBSYS_SYSTEMS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charpoly.hpp"
#include "error.hpp"
#include "polynomial.hpp"
#include "threads.hpp"

namespace frobsys {

/// A finite place: residue characteristic p, residue degree f, q = p^f.
struct Place {
    std::string label;
    std::uint64_t p = 0;
    unsigned f = 1;
    Int q;

    Place() = default;
    Place(std::string label_, std::uint64_t p_, unsigned f_) : label(std::move(label_)), p(p_), f(f_) {
        if (!is_prime(p)) throw DataError("place '" + label + "': " + std::to_string(p) + " is not prime");
        if (f < 1) throw DataError("place '" + label + "': residue degree must be >= 1");
        mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), f);
    }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    /// Validates a claimed q against p^f (dataset files may carry q).
    void check_q(const Int& claimed) const {
        if (claimed != q)
            throw DataError("place '" + label + "': q != p^f");
    }
};

/// One datum: the charpoly of the n-th Frobenius power at a place.
struct FrobSample {
    Place place;
    long n = 1;
    CharPoly P;

    FrobSample(Place place_, long n_, CharPoly P_)
        : place(std::move(place_)), n(n_), P(std::move(P_)) {
        if (n < 1) throw DataError("sample exponent must be >= 1");
    }
};

enum class EntryStatus { Unramified, Ramified, Unknown };

/// Per-place entry of a sheet: a sample, or a ramified/unknown marker.
struct SheetEntry {
    EntryStatus status = EntryStatus::Unknown;
    std::optional<FrobSample> sample;  // engaged iff status == Unramified
    Place place;                       // always set

    static SheetEntry unramified(FrobSample s) {
        SheetEntry e;
        e.status = EntryStatus::Unramified;
        e.place = s.place;
        e.sample = std::move(s);
        return e;
    }
    static SheetEntry ramified(Place p) {
        SheetEntry e;
        e.status = EntryStatus::Ramified;
        e.place = std::move(p);
        return e;
    }
    static SheetEntry unknown(Place p) {
        SheetEntry e;
        e.status = EntryStatus::Unknown;
        e.place = std::move(p);
        return e;
    }
};

/// A lambda-indexed sheet of Frobenius samples, all over the same field E
/// and of one fixed dimension.
struct RepSheet {
    FieldPtr E;
    std::string label;
    std::uint64_t ell = 0;  // residue characteristic of lambda
    std::optional<std::string> over_label;
    int dim = 0;
    std::map<std::string, SheetEntry> entries;  // keyed by place label
    // Q-level polynomials kept aside for places that did not split in E;
    // in-process only, never serialized.
    std::map<std::string, CharPoly> qlevel_side;

    void add_entry(SheetEntry e) {
        if (!Place::is_prime(ell)) throw DataError("sheet '" + label + "': ell is not prime");
        auto [it, inserted] = entries.emplace(e.place.label, std::move(e));
        if (!inserted)
            throw DataError("sheet '" + label + "': duplicate entry at place '" + it->first + "'");
        const SheetEntry& in = it->second;
        if (in.status == EntryStatus::Unramified) {
            if (!same_field(in.sample->P.field(), E))
                throw FieldMismatchError("sheet '" + label + "': sample over the wrong field");
            if (in.sample->P.degree() != dim)
                throw DataError("sheet '" + label + "': sample degree does not match sheet dimension");
        }
    }
};

/// An E-indexed family of sheets of one common dimension.
struct System {
    FieldPtr E;
    int dim = 0;
    std::vector<RepSheet> sheets;

    void validate() const {
        for (const auto& s : sheets) {
            if (!same_field(s.E, E)) throw FieldMismatchError("sheet '" + s.label + "' over a different field");
            if (s.dim != dim) throw DataError("sheet '" + s.label + "' has inconsistent dimension");
        }
        std::set<std::string> labels;
        for (const auto& s : sheets)
            if (!labels.insert(s.label).second)
                throw DataError("duplicate sheet label '" + s.label + "'");
    }

    const RepSheet* find_sheet(const std::string& label) const {
        for (const auto& s : sheets)
            if (s.label == label) return &s;
        return nullptr;
    }
};

/// Charpoly of F_x^N from a sample with exponent dividing N.
inline CharPoly normalize_to_level(const FrobSample& s, long N) {
    if (N < 1 || N % s.n != 0)
        throw DataError("level " + std::to_string(N) + " is not a multiple of the sample exponent " +
                        std::to_string(s.n));
    return power_charpoly(s.P, N / s.n);
}

/// Least admissible common level N <= n_max at which the two samples' level-N
/// charpolys agree exactly, or nullopt.
///
/// Candidates are multiples of lcm(n1, n2). Equality at level N forces the
/// determinant ratio delta = c1/c2 (constant terms at the base level) to
/// satisfy delta^(N/L) = 1, so the search runs only over multiples of the
/// torsion order of delta and stops immediately when delta has infinite
/// order; this is answer-preserving pruning, not a semantic change.
inline std::optional<long> quasi_compatible_at(const FrobSample& s1, const FrobSample& s2,
                                               long n_max) {
    if (s1.P.degree() != s2.P.degree())
        throw DataError("degree mismatch between samples at place '" + s1.place.label +
                        "': malformed data, not incompatibility");
    if (!same_field(s1.P.field(), s2.P.field()))
        throw FieldMismatchError("samples over different fields");
    long L = std::lcm(s1.n, s2.n);
    if (L > n_max) return std::nullopt;
    CharPoly P1 = normalize_to_level(s1, L);
    CharPoly P2 = normalize_to_level(s2, L);
    if (P1 == P2) return L;
    NFElement delta = P1.poly().constant_term() / P2.poly().constant_term();
    auto order = root_of_unity_order(delta);
    if (!order) return std::nullopt;
    for (long k = *order; k * L <= n_max; k += *order) {
        if (k == 1) continue;  // k = 1 was the direct comparison above
        if (power_charpoly(P1, k) == power_charpoly(P2, k)) return k * L;
    }
    return std::nullopt;
}

enum class Verdict {
    CompatibleAt,
    IncompatibleUpTo,
    ExcludedResidueCharClash,
    ExcludedRamified,
    ExcludedUnknown,
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CompatibleAt: return "compatible_at";
        case Verdict::IncompatibleUpTo: return "incompatible_up_to";
        case Verdict::ExcludedResidueCharClash: return "excluded_residue_char_clash";
        case Verdict::ExcludedRamified: return "excluded_ramified";
        case Verdict::ExcludedUnknown: return "excluded_unknown";
    }
    return "?";
}

struct CellVerdict {
    std::string sheet1, sheet2;
    std::string place_label;
    std::uint64_t p = 0;
    unsigned f = 1;
    Verdict verdict = Verdict::ExcludedUnknown;
    long level = 0;  // witness N for CompatibleAt, n_max for IncompatibleUpTo
};

/// Full audit of a system: one verdict per (unordered sheet pair, place).
struct CompatReport {
    long n_max = 0;
    std::vector<CellVerdict> cells;  // deterministic order: pair-major, then (p, f, label)
    bool strong_quasi_compatible = true;
    bool plain_quasi_compatible = true;
    std::size_t tested = 0;       // cells that received a compatibility check
    std::size_t failures = 0;     // IncompatibleUpTo cells
    std::optional<CellVerdict> first_failure;

    void finalize() {
        tested = failures = 0;
        std::map<std::pair<std::string, std::string>, std::pair<std::size_t, std::size_t>>
            per_pair;  // (tested, failed) per sheet pair
        for (const auto& c : cells) {
            if (c.verdict == Verdict::CompatibleAt) {
                ++tested;
                ++per_pair[{c.sheet1, c.sheet2}].first;
            } else if (c.verdict == Verdict::IncompatibleUpTo) {
                ++tested;
                ++failures;
                auto& pp = per_pair[{c.sheet1, c.sheet2}];
                ++pp.first;
                ++pp.second;
                if (!first_failure) first_failure = c;
            }
        }
        strong_quasi_compatible = failures == 0;
        // Data-scale reading of "compatible on a non-empty open subset",
        // pair by pair: the failure list is reported and must not exhaust
        // the pair's tested places.
        plain_quasi_compatible = true;
        for (const auto& [pair, counts] : per_pair)
            if (counts.second > 0 && counts.second >= counts.first) plain_quasi_compatible = false;
    }

    void print_table(std::ostream& os) const {
        for (const auto& c : cells) {
            os << "  (" << c.sheet1 << ", " << c.sheet2 << ") @ " << c.place_label << " [p=" << c.p
               << ", f=" << c.f << "]: " << verdict_name(c.verdict);
            if (c.verdict == Verdict::CompatibleAt) os << "(N=" << c.level << ")";
            if (c.verdict == Verdict::IncompatibleUpTo) os << "(n_max=" << c.level << ")";
            os << "\n";
        }
        os << "summary: strong=" << (strong_quasi_compatible ? "yes" : "no")
           << " plain=" << (plain_quasi_compatible ? "yes" : "no") << " tested=" << tested
           << " failures=" << failures << "\n";
        if (first_failure)
            os << "first failing place: " << first_failure->place_label << " (pair "
               << first_failure->sheet1 << ", " << first_failure->sheet2 << ")\n";
    }
};

/// Checks every unordered sheet pair at every place present in either sheet,
/// with the strong-condition filter: residue-characteristic clashes and
/// ramified/unknown entries are excluded rather than tested. Cells evaluate
/// in parallel; the verdict list order is deterministic.
inline CompatReport check_system(const System& sys, long n_max = 120) {
    if (sys.sheets.empty()) throw DataError("check_system needs at least one sheet");
    sys.validate();
    CompatReport report;
    report.n_max = n_max;

    struct Cell {
        const RepSheet* a;
        const RepSheet* b;
        const SheetEntry* ea;  // may be null (missing place)
        const SheetEntry* eb;
        std::string place_label;
        std::uint64_t p;
        unsigned f;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < sys.sheets.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.sheets.size(); ++j) {
            const RepSheet& a = sys.sheets[i];
            const RepSheet& b = sys.sheets[j];
            std::map<std::string, std::pair<const SheetEntry*, const SheetEntry*>> merged;
            for (const auto& [label, e] : a.entries) merged[label].first = &e;
            for (const auto& [label, e] : b.entries) merged[label].second = &e;
            std::vector<Cell> pair_cells;
            for (const auto& [label, pr] : merged) {
                const SheetEntry* any = pr.first ? pr.first : pr.second;
                pair_cells.push_back(
                    Cell{&a, &b, pr.first, pr.second, label, any->place.p, any->place.f});
            }
            std::sort(pair_cells.begin(), pair_cells.end(), [](const Cell& x, const Cell& y) {
                return std::tie(x.p, x.f, x.place_label) < std::tie(y.p, y.f, y.place_label);
            });
            cells.insert(cells.end(), pair_cells.begin(), pair_cells.end());
        }
    }

    report.cells.assign(cells.size(), {});
    parallel_for(cells.size(), [&](std::size_t idx) {
        const Cell& c = cells[idx];
        CellVerdict v;
        v.sheet1 = c.a->label;
        v.sheet2 = c.b->label;
        v.place_label = c.place_label;
        v.p = c.p;
        v.f = c.f;
        if (c.p == c.a->ell || c.p == c.b->ell) {
            v.verdict = Verdict::ExcludedResidueCharClash;
        } else if ((c.ea && c.ea->status == EntryStatus::Ramified) ||
                   (c.eb && c.eb->status == EntryStatus::Ramified)) {
            v.verdict = Verdict::ExcludedRamified;
        } else if (!c.ea || !c.eb || c.ea->status == EntryStatus::Unknown ||
                   c.eb->status == EntryStatus::Unknown) {
            v.verdict = Verdict::ExcludedUnknown;
        } else {
            auto N = quasi_compatible_at(*c.ea->sample, *c.eb->sample, n_max);
            if (N) {
                v.verdict = Verdict::CompatibleAt;
                v.level = *N;
            } else {
                v.verdict = Verdict::IncompatibleUpTo;
                v.level = n_max;
            }
        }
        report.cells[idx] = std::move(v);
    });
    report.finalize();
    return report;
}

/// Sample at the degree-k extension of the place: q -> q^k, same exponent,
/// polynomial replaced by the k-th power charpoly.
inline FrobSample base_change_sample(const FrobSample& s, long k, const std::string& label_suffix_sep = ".") {
    if (k < 1) throw DataError("base change degree must be >= 1");
    Place ext(s.place.label + label_suffix_sep + std::to_string(k), s.place.p,
              s.place.f * static_cast<unsigned>(k));
    return FrobSample(std::move(ext), s.n, power_charpoly(s.P, k));
}

/// Options for restrict_system.
struct RestrictOptions {
    long level_cap = 120;
};

/// Coefficient-field restriction along E over its base E': sheets sharing an
/// over_label group into one sheet over E'; at each place all group samples
/// are brought to the group's common level N and the new sample is the
/// product of their polynomial norms. Groups must have equal sizes so that
/// the restricted system keeps one dimension: d * [E:E'] * group size.
inline System restrict_system(const System& sys, const RestrictOptions& opts = {}) {
    sys.validate();
    if (!sys.E) throw DataError("system is already over Q; nothing to restrict");
    const FieldPtr base = sys.E->base();
    const int rel_deg = sys.E->degree();

    std::map<std::string, std::vector<const RepSheet*>> groups;
    for (const auto& s : sys.sheets) {
        if (!s.over_label)
            throw DataError("sheet '" + s.label + "' carries no over-label; cannot restrict");
        groups[*s.over_label].push_back(&s);
    }
    std::optional<std::size_t> group_size;
    for (const auto& [label, members] : groups) {
        if (!group_size) group_size = members.size();
        if (members.size() != *group_size)
            throw DataError("over-label groups have different sizes; restricted dimensions clash");
    }

    System out;
    out.E = base;
    out.dim = sys.dim * rel_deg * static_cast<int>(*group_size);
    for (const auto& [over, members] : groups) {
        RepSheet sheet;
        sheet.E = base;
        sheet.label = over;
        sheet.ell = members.front()->ell;
        sheet.dim = out.dim;
        for (const RepSheet* m : members)
            if (m->ell != sheet.ell)
                throw DataError("sheets over '" + over + "' disagree on the residue characteristic");

        // place sets must align across the group
        for (const RepSheet* m : members)
            if (m->entries.size() != members.front()->entries.size())
                throw DataError("sheets over '" + over + "' have different place sets");
        for (const auto& [plabel, e0] : members.front()->entries) {
            std::vector<const SheetEntry*> es;
            for (const RepSheet* m : members) {
                auto it = m->entries.find(plabel);
                if (it == m->entries.end())
                    throw DataError("sheets over '" + over + "' have different place sets (place '" +
                                    plabel + "')");
                es.push_back(&it->second);
            }
            bool any_ramified = false, any_unknown = false;
            for (const SheetEntry* e : es) {
                if (e->status == EntryStatus::Ramified) any_ramified = true;
                if (e->status == EntryStatus::Unknown) any_unknown = true;
            }
            if (any_ramified) {
                sheet.add_entry(SheetEntry::ramified(e0.place));
                continue;
            }
            if (any_unknown) {
                sheet.add_entry(SheetEntry::unknown(e0.place));
                continue;
            }
            long N = 1;
            for (const SheetEntry* e : es) N = std::lcm(N, e->sample->n);
            if (N > opts.level_cap)
                throw DataError("no common level <= cap at place '" + plabel + "'");
            Polynomial prod = Polynomial::constant(base, base ? base->one() : NFElement(Rational(1)));
            for (const SheetEntry* e : es) {
                CharPoly lifted = normalize_to_level(*e->sample, N);
                prod *= norm_poly(lifted.poly());
            }
            sheet.add_entry(SheetEntry::unramified(
                FrobSample(e0.place, N, CharPoly(base, std::move(prod)))));
        }
        out.sheets.push_back(std::move(sheet));
    }
    std::sort(out.sheets.begin(), out.sheets.end(),
              [](const RepSheet& a, const RepSheet& b) { return a.label < b.label; });
    out.validate();
    return out;
}

/// Coefficient-field extension along an embedding E -> Etilde: one new sheet
/// per fiber entry, polynomials mapped coefficientwise, dimensions kept.
inline System extend_system(const System& sys, const Embedding& phi,
                            const std::map<std::string, std::string>& fiber) {
    sys.validate();
    if (!same_field(sys.E, phi.source())) throw FieldMismatchError("embedding source is not the system field");
    System out;
    out.E = phi.target();
    out.dim = sys.dim;
    for (const auto& [new_label, old_label] : fiber) {
        const RepSheet* src = sys.find_sheet(old_label);
        if (!src) throw DataError("fiber references unknown sheet '" + old_label + "'");
        RepSheet sheet;
        sheet.E = out.E;
        sheet.label = new_label;
        sheet.ell = src->ell;
        sheet.over_label = old_label;
        sheet.dim = src->dim;
        for (const auto& [plabel, e] : src->entries) {
            switch (e.status) {
                case EntryStatus::Unramified: {
                    CharPoly mapped(out.E, embed_poly(e.sample->P.poly(), phi));
                    sheet.add_entry(SheetEntry::unramified(FrobSample(e.place, e.sample->n, mapped)));
                    break;
                }
                case EntryStatus::Ramified:
                    sheet.add_entry(SheetEntry::ramified(e.place));
                    break;
                case EntryStatus::Unknown:
                    sheet.add_entry(SheetEntry::unknown(e.place));
                    break;
            }
        }
        out.sheets.push_back(std::move(sheet));
    }
    std::sort(out.sheets.begin(), out.sheets.end(),
              [](const RepSheet& a, const RepSheet& b) { return a.label < b.label; });
    out.validate();
    return out;
}

enum class CombineOp { Dual, Sum, Tensor, Hom };

inline const char* combine_op_name(CombineOp op) {
    switch (op) {
        case CombineOp::Dual: return "dual";
        case CombineOp::Sum: return "sum";
        case CombineOp::Tensor: return "tensor";
        case CombineOp::Hom: return "hom";
    }
    return "?";
}

/// Placewise dual of a system.
inline System dual_system(const System& sys) {
    sys.validate();
    System out;
    out.E = sys.E;
    out.dim = sys.dim;
    for (const auto& s : sys.sheets) {
        RepSheet sheet = s;
        sheet.entries.clear();
        sheet.qlevel_side.clear();
        for (const auto& [plabel, e] : s.entries) {
            if (e.status == EntryStatus::Unramified) {
                sheet.add_entry(SheetEntry::unramified(
                    FrobSample(e.place, e.sample->n, dual_charpoly(e.sample->P))));
            } else {
                sheet.add_entry(e);
            }
        }
        out.sheets.push_back(std::move(sheet));
    }
    out.validate();
    return out;
}

/// Placewise binary combinator over matching lambda labels. Both samples are
/// brought to the lcm level first; a place missing on either side becomes
/// Unknown, Ramified on either side stays Ramified.
inline System combine_systems(CombineOp op, const System& a, const System& b) {
    if (op == CombineOp::Dual) throw DataError("dual takes a single system");
    a.validate();
    b.validate();
    if (!same_field(a.E, b.E)) throw FieldMismatchError("combining systems over different fields");
    std::set<std::string> labels_a, labels_b;
    for (const auto& s : a.sheets) labels_a.insert(s.label);
    for (const auto& s : b.sheets) labels_b.insert(s.label);
    if (labels_a != labels_b) throw DataError("combining systems with different lambda label sets");

    System out;
    out.E = a.E;
    out.dim = op == CombineOp::Sum ? a.dim + b.dim : a.dim * b.dim;
    for (const auto& sa : a.sheets) {
        const RepSheet* sb = b.find_sheet(sa.label);
        if (sa.ell != sb->ell)
            throw DataError("sheet '" + sa.label + "' has mismatched residue characteristics");
        RepSheet sheet;
        sheet.E = out.E;
        sheet.label = sa.label;
        sheet.ell = sa.ell;
        sheet.over_label = sa.over_label;
        sheet.dim = out.dim;
        std::map<std::string, std::pair<const SheetEntry*, const SheetEntry*>> merged;
        for (const auto& [label, e] : sa.entries) merged[label].first = &e;
        for (const auto& [label, e] : sb->entries) merged[label].second = &e;
        for (const auto& [plabel, pr] : merged) {
            const SheetEntry* ea = pr.first;
            const SheetEntry* eb = pr.second;
            const Place& place = (ea ? ea : eb)->place;
            bool ramified = (ea && ea->status == EntryStatus::Ramified) ||
                            (eb && eb->status == EntryStatus::Ramified);
            if (ramified) {
                sheet.add_entry(SheetEntry::ramified(place));
                continue;
            }
            if (!ea || !eb || ea->status != EntryStatus::Unramified ||
                eb->status != EntryStatus::Unramified) {
                sheet.add_entry(SheetEntry::unknown(place));
                continue;
            }
            long N = std::lcm(ea->sample->n, eb->sample->n);
            CharPoly pa = normalize_to_level(*ea->sample, N);
            CharPoly pb = normalize_to_level(*eb->sample, N);
            CharPoly combined = op == CombineOp::Sum      ? sum_charpoly(pa, pb)
                                : op == CombineOp::Tensor ? tensor_charpoly(pa, pb)
                                                          : hom_charpoly(pa, pb);
            sheet.add_entry(SheetEntry::unramified(FrobSample(place, N, std::move(combined))));
        }
        out.sheets.push_back(std::move(sheet));
    }
    std::sort(out.sheets.begin(), out.sheets.end(),
              [](const RepSheet& x, const RepSheet& y) { return x.label < y.label; });
    out.validate();
    return out;
}

/// Lower bound for the degree over Q of the subfield generated by the
/// selected samples' coefficients: the maximum degree of the minimal
/// polynomial over the coefficients themselves and a few random small-integer
/// combinations of them.
struct SubfieldDegreeResult {
    int degree = 1;
    std::vector<NFElement> witnesses;
};

inline SubfieldDegreeResult coefficient_subfield_degree(
    const RepSheet& sheet, const std::vector<std::string>& place_selection = {},
    int random_combinations = 8, std::uint64_t seed = 1) {
    std::vector<NFElement> coeffs;
    auto want = [&](const std::string& label) {
        return place_selection.empty() ||
               std::find(place_selection.begin(), place_selection.end(), label) !=
                   place_selection.end();
    };
    for (const auto& [plabel, e] : sheet.entries) {
        if (e.status != EntryStatus::Unramified || !want(plabel)) continue;
        for (int i = 0; i < e.sample->P.degree(); ++i)
            coeffs.push_back(e.sample->P.poly().coeff(static_cast<std::size_t>(i)));
    }
    if (coeffs.empty()) throw DataError("empty sample selection");

    std::vector<NFElement> candidates = coeffs;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> small(-4, 4);
    for (int k = 0; k < random_combinations; ++k) {
        NFElement combo = sheet.E ? sheet.E->zero() : NFElement(Rational(0));
        for (const auto& c : coeffs) combo += NFElement(Rational(small(rng))) * c;
        candidates.push_back(std::move(combo));
    }

    SubfieldDegreeResult result;
    for (const auto& theta : candidates) {
        int deg = minimal_polynomial(theta).degree();
        if (deg > result.degree) {
            result.degree = deg;
            result.witnesses.clear();
        }
        if (deg == result.degree) result.witnesses.push_back(theta);
    }
    return result;
}

}  // namespace frobsys

#endif
