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

#ifndef FROBSYS_DATASET_HPP
#define FROBSYS_DATASET_HPP

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "systems.hpp"

namespace frobsys {

using json = nlohmann::json;

// Line-delimited JSON dataset format. Records, one per line:
//   {"kind":"field","name":...,"base":"Q"|name,"min_poly":[element encodings]}
//   {"kind":"sheet","label":...,"field":"Q"|name,"ell":int,"dim":int[,"over":...]}
//   {"kind":"sample","sheet":...,"place":...,"p":int,"f":int,
//    "status":"unramified"|"ramified"|"unknown"[,"n":int,"coeffs":[...]]}
// Element encodings are recursive: a rational is a string "num" or
// "num/den"; an element of an extension is the array of its base-field
// coordinate encodings. Sample polynomials are monic with the leading 1
// omitted. Store emits a canonical order; store-load-store is the identity
// on bytes.

inline json encode_element(const NFElement& x) {
    if (x.is_rational_field()) return x.rat().str();
    json arr = json::array();
    for (const auto& c : x.coords()) arr.push_back(encode_element(c));
    return arr;
}

inline NFElement decode_element(const json& j, const FieldPtr& field) {
    if (!field) {
        if (!j.is_string()) throw DataError("rational encoding must be a string");
        return NFElement(Rational::parse(j.get<std::string>()));
    }
    if (j.is_string()) {
        // allow a bare rational where an extension element is expected
        return field->from_rational(Rational::parse(j.get<std::string>()));
    }
    if (!j.is_array()) throw DataError("element encoding must be a string or array");
    if (static_cast<int>(j.size()) != field->degree())
        throw DataError("element encoding has wrong length for field '" + field->name() + "'");
    std::vector<NFElement> coords;
    coords.reserve(j.size());
    for (const auto& c : j) coords.push_back(decode_element(c, field->base()));
    return field->element(std::move(coords));
}

namespace detail {

inline const json& require_key(const json& rec, const char* key, const char* kind) {
    auto it = rec.find(key);
    if (it == rec.end())
        throw DataError(std::string(kind) + " record is missing key '" + key + "'");
    return *it;
}

inline std::string field_name_of(const FieldPtr& f) { return f ? f->name() : "Q"; }

}  // namespace detail

/// Writes the canonical line-delimited form.
inline void store_dataset(const System& sys, std::ostream& os) {
    sys.validate();
    // field records, tower order
    std::vector<FieldPtr> tower;
    for (FieldPtr f = sys.E; f; f = f->base()) tower.push_back(f);
    for (auto it = tower.rbegin(); it != tower.rend(); ++it) {
        const FieldPtr& f = *it;
        json rec;
        rec["kind"] = "field";
        rec["name"] = f->name();
        rec["base"] = detail::field_name_of(f->base());
        json mp = json::array();
        for (const auto& c : f->min_poly()) mp.push_back(encode_element(c));
        rec["min_poly"] = mp;
        os << rec.dump() << "\n";
    }
    // sheets sorted by label
    std::vector<const RepSheet*> sheets;
    for (const auto& s : sys.sheets) sheets.push_back(&s);
    std::sort(sheets.begin(), sheets.end(),
              [](const RepSheet* a, const RepSheet* b) { return a->label < b->label; });
    for (const RepSheet* s : sheets) {
        json rec;
        rec["kind"] = "sheet";
        rec["label"] = s->label;
        rec["field"] = detail::field_name_of(s->E);
        rec["ell"] = s->ell;
        rec["dim"] = s->dim;
        if (s->over_label) rec["over"] = *s->over_label;
        os << rec.dump() << "\n";
    }
    // samples sorted by (sheet label, p, f, place label)
    for (const RepSheet* s : sheets) {
        std::vector<const SheetEntry*> entries;
        for (const auto& [plabel, e] : s->entries) entries.push_back(&e);
        std::sort(entries.begin(), entries.end(), [](const SheetEntry* a, const SheetEntry* b) {
            return std::tie(a->place.p, a->place.f, a->place.label) <
                   std::tie(b->place.p, b->place.f, b->place.label);
        });
        for (const SheetEntry* e : entries) {
            json rec;
            rec["kind"] = "sample";
            rec["sheet"] = s->label;
            rec["place"] = e->place.label;
            rec["p"] = e->place.p;
            rec["f"] = e->place.f;
            switch (e->status) {
                case EntryStatus::Unramified: {
                    rec["status"] = "unramified";
                    rec["n"] = e->sample->n;
                    json coeffs = json::array();
                    for (int i = 0; i < e->sample->P.degree(); ++i)
                        coeffs.push_back(encode_element(
                            e->sample->P.poly().coeff(static_cast<std::size_t>(i))));
                    rec["coeffs"] = coeffs;
                    break;
                }
                case EntryStatus::Ramified:
                    rec["status"] = "ramified";
                    break;
                case EntryStatus::Unknown:
                    rec["status"] = "unknown";
                    break;
            }
            os << rec.dump() << "\n";
        }
    }
}

inline void store_dataset(const System& sys, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open '" + path + "' for writing");
    store_dataset(sys, os);
}

inline std::string dataset_to_string(const System& sys) {
    std::ostringstream os;
    store_dataset(sys, os);
    return os.str();
}

/// Parses a dataset; every diagnostic carries its line number.
inline System load_dataset(std::istream& is, const std::string& origin = "<stream>") {
    std::map<std::string, FieldPtr> fields;
    System sys;
    bool have_sheet = false;
    std::map<std::string, std::pair<std::uint64_t, unsigned>> place_registry;

    std::string line;
    long line_no = 0;
    auto fail = [&](const std::string& why) -> void {
        throw DataError(origin + ":" + std::to_string(line_no) + ": " + why);
    };

    auto lookup_field = [&](const std::string& name) -> FieldPtr {
        if (name == "Q") return nullptr;
        auto it = fields.find(name);
        if (it == fields.end()) fail("unknown field reference '" + name + "'");
        return it->second;
    };

    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            fail(std::string("invalid JSON: ") + e.what());
        }
        if (!rec.is_object()) fail("record is not a JSON object");
        std::string kind;
        try {
            kind = detail::require_key(rec, "kind", "dataset").get<std::string>();

            if (kind == "field") {
                std::string name = detail::require_key(rec, "name", "field").get<std::string>();
                if (name == "Q") fail("field name 'Q' is reserved");
                if (fields.count(name)) fail("duplicate field '" + name + "'");
                FieldPtr base = lookup_field(
                    detail::require_key(rec, "base", "field").get<std::string>());
                const json& mp = detail::require_key(rec, "min_poly", "field");
                if (!mp.is_array() || mp.size() < 2) fail("min_poly must be an array of degree >= 1");
                std::vector<NFElement> coeffs;
                for (const auto& c : mp) coeffs.push_back(decode_element(c, base));
                fields[name] = NumberField::extension(base, name, std::move(coeffs));
            } else if (kind == "sheet") {
                std::string label = detail::require_key(rec, "label", "sheet").get<std::string>();
                if (sys.find_sheet(label)) fail("duplicate sheet '" + label + "'");
                RepSheet sheet;
                sheet.label = label;
                sheet.E = lookup_field(detail::require_key(rec, "field", "sheet").get<std::string>());
                sheet.ell = detail::require_key(rec, "ell", "sheet").get<std::uint64_t>();
                if (!Place::is_prime(sheet.ell)) fail("sheet ell is not prime");
                sheet.dim = detail::require_key(rec, "dim", "sheet").get<int>();
                if (sheet.dim < 1) fail("sheet dimension must be >= 1");
                if (rec.contains("over")) sheet.over_label = rec["over"].get<std::string>();
                if (!have_sheet) {
                    sys.E = sheet.E;
                    sys.dim = sheet.dim;
                    have_sheet = true;
                } else {
                    if (!same_field(sys.E, sheet.E)) fail("sheets over different fields");
                    if (sys.dim != sheet.dim) fail("sheets of different dimensions");
                }
                sys.sheets.push_back(std::move(sheet));
            } else if (kind == "sample") {
                std::string sheet_label =
                    detail::require_key(rec, "sheet", "sample").get<std::string>();
                RepSheet* sheet = nullptr;
                for (auto& s : sys.sheets)
                    if (s.label == sheet_label) sheet = &s;
                if (!sheet) fail("sample references unknown sheet '" + sheet_label + "'");
                std::string plabel = detail::require_key(rec, "place", "sample").get<std::string>();
                std::uint64_t p = detail::require_key(rec, "p", "sample").get<std::uint64_t>();
                unsigned f = detail::require_key(rec, "f", "sample").get<unsigned>();
                Place place(plabel, p, f);
                if (rec.contains("q")) {
                    Int q = rec["q"].is_string() ? Int(rec["q"].get<std::string>())
                                                 : Int(rec["q"].get<long>());
                    place.check_q(q);
                }
                auto [it, inserted] = place_registry.emplace(plabel, std::make_pair(p, f));
                if (!inserted && it->second != std::make_pair(p, f))
                    fail("place '" + plabel + "' redefined with different (p, f)");
                std::string status = detail::require_key(rec, "status", "sample").get<std::string>();
                if (status == "unramified") {
                    long n = detail::require_key(rec, "n", "sample").get<long>();
                    if (n < 1) fail("sample exponent must be >= 1");
                    const json& coeffs = detail::require_key(rec, "coeffs", "sample");
                    if (!coeffs.is_array() || coeffs.empty())
                        fail("unramified sample needs a nonempty coefficient list");
                    std::vector<NFElement> c;
                    for (const auto& cc : coeffs) c.push_back(decode_element(cc, sheet->E));
                    c.push_back(sheet->E ? sheet->E->one() : NFElement(Rational(1)));
                    CharPoly P(sheet->E, Polynomial::from_coeffs(sheet->E, std::move(c)));
                    sheet->add_entry(SheetEntry::unramified(FrobSample(place, n, std::move(P))));
                } else if (status == "ramified") {
                    sheet->add_entry(SheetEntry::ramified(place));
                } else if (status == "unknown") {
                    sheet->add_entry(SheetEntry::unknown(place));
                } else {
                    fail("unknown sample status '" + status + "'");
                }
            } else {
                fail("unknown record kind '" + kind + "'");
            }
        } catch (const json::exception& e) {
            fail(std::string("bad record field: ") + e.what());
        }
    }
    if (!have_sheet) throw DataError(origin + ": dataset defines no sheets (empty system)");
    sys.validate();
    return sys;
}

inline System load_dataset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open '" + path + "'");
    return load_dataset(is, path);
}

}  // namespace frobsys

#endif
