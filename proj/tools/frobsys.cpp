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

// frobsys: exact Frobenius charpoly datasets and the quasi-compatibility
// calculus over them. Subcommands: count, cm-build, check, combine,
// restrict, extend, torus-rank, subfield-degree, halftwist.
//
// Exit codes: 0 success (check: compatible), 1 check found incompatibility,
// 2 usage/data errors, 3 precision exhaustion.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frobsys/cmtype.hpp"
#include "frobsys/dataset.hpp"
#include "frobsys/elliptic.hpp"
#include "frobsys/torus.hpp"

using namespace frobsys;

namespace {

std::string file_digest(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return fnv1a_hex(ss.str());
}

void echo_config(std::ostream& os, const std::string& sub,
                 const std::vector<std::pair<std::string, std::string>>& kv,
                 const std::vector<std::string>& inputs) {
    os << "# frobsys " << sub;
    for (const auto& [k, v] : kv) os << " " << k << "=" << v;
    os << "\n";
    const char* threads = std::getenv("FROBSYS_THREADS");
    os << "# threads=" << (threads ? threads : "auto") << "\n";
    for (const auto& path : inputs) os << "# input " << path << " digest=" << file_digest(path) << "\n";
}

/// Reads only the field records of a dataset file.
std::map<std::string, FieldPtr> load_field_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open '" + path + "'");
    std::map<std::string, FieldPtr> fields;
    std::string line;
    long line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded())
            throw DataError(path + ":" + std::to_string(line_no) + ": invalid JSON");
        if (!rec.is_object() || rec.value("kind", "") != "field") continue;
        std::string name = rec.at("name").get<std::string>();
        std::string base_name = rec.at("base").get<std::string>();
        FieldPtr base = nullptr;
        if (base_name != "Q") {
            auto it = fields.find(base_name);
            if (it == fields.end())
                throw DataError(path + ":" + std::to_string(line_no) + ": unknown base field '" +
                                base_name + "'");
            base = it->second;
        }
        std::vector<NFElement> mp;
        for (const auto& c : rec.at("min_poly")) mp.push_back(decode_element(c, base));
        fields[name] = NumberField::extension(base, name, std::move(mp));
    }
    return fields;
}

/// Merges the sheets of two files into one system; clashing labels from the
/// second file get a "~b" suffix so a fixture can be checked against itself.
System merge_for_check(const System& a, const System& b) {
    if (!same_field(a.E, b.E)) throw DataError("datasets live over different coefficient fields");
    if (a.dim != b.dim) throw DataError("datasets have different dimensions");
    System merged = a;
    for (RepSheet sheet : b.sheets) {
        if (merged.find_sheet(sheet.label)) sheet.label += "~b";
        if (merged.find_sheet(sheet.label))
            throw DataError("sheet label collision on '" + sheet.label + "'");
        merged.sheets.push_back(std::move(sheet));
    }
    merged.validate();
    return merged;
}

json verdict_record(const CellVerdict& c) {
    json rec;
    rec["kind"] = "verdict";
    rec["sheet1"] = c.sheet1;
    rec["sheet2"] = c.sheet2;
    rec["place"] = c.place_label;
    rec["p"] = c.p;
    rec["f"] = c.f;
    rec["verdict"] = verdict_name(c.verdict);
    if (c.verdict == Verdict::CompatibleAt || c.verdict == Verdict::IncompatibleUpTo)
        rec["n"] = c.level;
    return rec;
}

std::vector<std::size_t> parse_cycles(const std::string& text, std::size_t size) {
    std::vector<std::size_t> dag(size);
    for (std::size_t i = 0; i < size; ++i) dag[i] = i;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '(') {
            ++pos;
            continue;
        }
        std::size_t close = text.find(')', pos);
        if (close == std::string::npos) throw DataError("unbalanced cycle notation");
        std::istringstream cyc(text.substr(pos + 1, close - pos - 1));
        std::vector<std::size_t> idx;
        std::size_t v;
        while (cyc >> v) {
            if (v >= size) throw DataError("cycle index out of range");
            idx.push_back(v);
        }
        for (std::size_t i = 0; i + 1 < idx.size(); ++i) dag[idx[i]] = idx[i + 1];
        if (!idx.empty()) dag[idx.back()] = idx.front();
        pos = close + 1;
    }
    return dag;
}

std::vector<std::pair<int, int>> parse_slots(const std::string& text) {
    std::vector<std::pair<int, int>> slots;
    std::istringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto comma = part.find(',');
        if (comma == std::string::npos) throw DataError("slot must be 'p,q'");
        slots.emplace_back(std::stoi(part.substr(0, comma)), std::stoi(part.substr(comma + 1)));
    }
    return slots;
}

std::set<std::size_t> parse_index_list(const std::string& text) {
    std::set<std::size_t> out;
    std::istringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (!part.empty()) out.insert(static_cast<std::size_t>(std::stoul(part)));
    }
    return out;
}

int cmd_check_run(const std::string& file_a, const std::string& file_b, long n_max, bool strict,
                  bool machine, const std::string& report_out) {
    System a = load_dataset(file_a);
    System b = load_dataset(file_b);
    System merged = merge_for_check(a, b);
    CompatReport rep = check_system(merged, n_max);

    std::ostringstream machine_lines;
    for (const auto& c : rep.cells) machine_lines << verdict_record(c).dump() << "\n";
    json summary;
    summary["kind"] = "summary";
    summary["strong"] = rep.strong_quasi_compatible;
    summary["plain"] = rep.plain_quasi_compatible;
    summary["n_max"] = rep.n_max;
    summary["tested"] = rep.tested;
    summary["failures"] = rep.failures;
    if (rep.first_failure) summary["first_failure"] = rep.first_failure->place_label;
    machine_lines << summary.dump() << "\n";

    if (machine)
        std::cout << machine_lines.str();
    else
        rep.print_table(std::cout);
    if (!report_out.empty()) {
        std::ofstream os(report_out, std::ios::binary);
        if (!os) throw DataError("cannot open '" + report_out + "' for writing");
        os << machine_lines.str();
    }
    bool ok = strict ? rep.strong_quasi_compatible : rep.plain_quasi_compatible;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Frobenius charpoly systems and their compatibility calculus"};
    app.require_subcommand(1);

    // ---- count ----
    auto* count = app.add_subcommand("count", "point-count a curve into a Q-level dataset");
    long count_a = 0, count_b = 0;
    std::uint64_t count_pmax = 100, count_ell = 2;
    std::vector<unsigned> count_ext;
    std::string count_label = "l2", count_out;
    bool count_twist = false;
    count->add_option("--a", count_a, "curve coefficient a")->required();
    count->add_option("--b", count_b, "curve coefficient b")->required();
    count->add_option("--p-max", count_pmax, "prime bound (exclusive)")->required();
    count->add_option("--ext-degrees", count_ext, "extension place degrees");
    count->add_option("--label", count_label, "sheet label");
    count->add_option("--ell", count_ell, "residue characteristic of the sheet's place");
    count->add_flag("--twist", count_twist, "count the per-prime quadratic twist by a non-residue");
    count->add_option("--out", count_out, "output dataset")->required();

    // ---- cm-build ----
    auto* cmb = app.add_subcommand("cm-build", "build the two-sheet CM system over Q(sqrt(-d))");
    long cmb_a = 1, cmb_b = 0, cmb_d = 1;
    std::uint64_t cmb_pmax = 100, cmb_ell1 = 3, cmb_ell2 = 7;
    std::string cmb_l1 = "l3", cmb_l2 = "l7", cmb_out;
    bool cmb_conj = false;
    cmb->add_option("--a", cmb_a, "curve coefficient a")->required();
    cmb->add_option("--b", cmb_b, "curve coefficient b")->required();
    cmb->add_option("--d", cmb_d, "imaginary quadratic field Q(sqrt(-d)), minimal polynomial u^2+d");
    cmb->add_option("--p-max", cmb_pmax, "prime bound (exclusive)")->required();
    cmb->add_option("--label1", cmb_l1, "first lambda label");
    cmb->add_option("--ell1", cmb_ell1, "first residue characteristic");
    cmb->add_option("--label2", cmb_l2, "second lambda label");
    cmb->add_option("--ell2", cmb_ell2, "second residue characteristic");
    cmb->add_flag("--conjugate", cmb_conj, "conjugate assignment (negative fixture)");
    cmb->add_option("--out", cmb_out, "output dataset")->required();

    // ---- check ----
    auto* check = app.add_subcommand("check", "quasi-compatibility audit of two datasets");
    std::string check_a, check_b, check_report;
    long check_nmax = 120;
    bool check_strict = false, check_machine = false;
    check->add_option("fileA", check_a, "first dataset")->required();
    check->add_option("fileB", check_b, "second dataset")->required();
    check->add_option("--n-max", check_nmax, "witness level bound");
    check->add_flag("--strict", check_strict, "exit 0 only on the strong verdict");
    check->add_flag("--machine", check_machine, "machine-readable report on stdout");
    check->add_option("--report-out", check_report, "also write the machine report here");

    // ---- combine ----
    auto* comb = app.add_subcommand("combine", "placewise dual/sum/tensor/hom of datasets");
    std::string comb_op, comb_a, comb_b, comb_out;
    comb->add_option("--op", comb_op, "dual|sum|tensor|hom")->required();
    comb->add_option("fileA", comb_a, "first dataset")->required();
    comb->add_option("fileB", comb_b, "second dataset (binary ops)");
    comb->add_option("--out", comb_out, "output dataset")->required();

    // ---- restrict ----
    auto* restr = app.add_subcommand("restrict", "restrict the coefficient field to the base");
    std::string restr_file, restr_out;
    long restr_cap = 120;
    restr->add_option("file", restr_file, "input dataset")->required();
    restr->add_option("--level-cap", restr_cap, "cap on the common level");
    restr->add_option("--out", restr_out, "output dataset")->required();

    // ---- extend ----
    auto* ext = app.add_subcommand("extend", "extend the coefficient field along an embedding");
    std::string ext_file, ext_fields, ext_target, ext_embed, ext_out;
    std::vector<std::string> ext_fiber;
    ext->add_option("file", ext_file, "input dataset")->required();
    ext->add_option("--field", ext_fields, "dataset whose field records define the target")->required();
    ext->add_option("--target", ext_target, "name of the target field")->required();
    ext->add_option("--embed", ext_embed, "JSON encoding of the source generator's image")->required();
    ext->add_option("--fiber", ext_fiber, "NEWLABEL=OLDLABEL, one per new sheet")->required();
    ext->add_option("--out", ext_out, "output dataset")->required();

    // ---- torus-rank ----
    auto* torus = app.add_subcommand("torus-rank", "Frobenius torus ranks per (lambda, place)");
    std::string torus_file, torus_mode = "exact";
    std::vector<std::string> torus_places;
    long torus_prec = 256, torus_bound = 32;
    bool torus_machine = false;
    torus->add_option("file", torus_file, "input dataset")->required();
    torus->add_option("--place", torus_places, "restrict to these place labels");
    torus->add_option("--mode", torus_mode, "exact|heuristic");
    torus->add_option("--precision-bits", torus_prec, "working precision");
    torus->add_option("--relation-bound", torus_bound, "bound on relation exponents");
    torus->add_flag("--machine", torus_machine, "machine-readable output");

    // ---- subfield-degree ----
    auto* sub = app.add_subcommand("subfield-degree",
                                   "lower bound for the coefficient subfield degree of a sheet");
    std::string sub_file, sub_sheet;
    std::vector<std::string> sub_places;
    std::uint64_t sub_seed = 1;
    int sub_combos = 8;
    sub->add_option("file", sub_file, "input dataset")->required();
    sub->add_option("--sheet", sub_sheet, "sheet label")->required();
    sub->add_option("--place", sub_places, "restrict to these place labels");
    sub->add_option("--seed", sub_seed, "seed for the random combinations");
    sub->add_option("--combos", sub_combos, "number of random combinations");

    // ---- halftwist ----
    auto* ht = app.add_subcommand("halftwist", "half twists and level-lowering ladders");
    std::size_t ht_sigma = 0;
    std::string ht_dagger, ht_slots, ht_phi;
    bool ht_ladder = false;
    ht->add_option("--sigma", ht_sigma, "size of the embedding set (2g)")->required();
    ht->add_option("--dagger", ht_dagger, "involution in cycle notation, e.g. \"(0 2)(1 3)\"")
        ->required();
    ht->add_option("--slots", ht_slots, "bidegrees 'p,q;p,q;...' in index order")->required();
    ht->add_option("--phi", ht_phi, "CM type as a comma-separated index list (single twist)");
    ht->add_flag("--ladder", ht_ladder, "run the full ladder down to level 0");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) {
            echo_config(std::cout, "count",
                        {{"a", std::to_string(count_a)},
                         {"b", std::to_string(count_b)},
                         {"p-max", std::to_string(count_pmax)},
                         {"label", count_label},
                         {"ell", std::to_string(count_ell)},
                         {"twist", count_twist ? "yes" : "no"}},
                        {});
            BuildOptions opts;
            opts.twist_by_nonresidue = count_twist;
            System sys;
            sys.E = nullptr;
            sys.dim = 2;
            sys.sheets = {build_q_sheet(count_a, count_b, count_pmax, count_label, count_ell,
                                        count_ext, opts)};
            store_dataset(sys, count_out);
            std::cout << "wrote " << count_out << " (" << sys.sheets[0].entries.size()
                      << " places)\n";
            return 0;
        }

        if (*cmb) {
            echo_config(std::cout, "cm-build",
                        {{"a", std::to_string(cmb_a)},
                         {"b", std::to_string(cmb_b)},
                         {"d", std::to_string(cmb_d)},
                         {"p-max", std::to_string(cmb_pmax)},
                         {"conjugate", cmb_conj ? "yes" : "no"}},
                        {});
            auto E = NumberField::extension(nullptr, "u",
                                            {NFElement(Rational(cmb_d)), NFElement(Rational(0)),
                                             NFElement(Rational(1))});
            BuildOptions opts;
            opts.conjugate_assignment = cmb_conj;
            System sys = build_cm_system(cmb_a, cmb_b, E, cmb_pmax, cmb_l1, cmb_ell1, cmb_l2,
                                         cmb_ell2, opts);
            store_dataset(sys, cmb_out);
            std::size_t split = 0;
            for (const auto& [label, e] : sys.sheets[0].entries)
                if (e.status == EntryStatus::Unramified) ++split;
            std::cout << "wrote " << cmb_out << " (" << split << " split places, "
                      << sys.sheets[0].entries.size() - split << " unknown)\n";
            return 0;
        }

        if (*check) {
            if (!check_machine)
                echo_config(std::cout, "check",
                            {{"n-max", std::to_string(check_nmax)},
                             {"strict", check_strict ? "yes" : "no"}},
                            {check_a, check_b});
            return cmd_check_run(check_a, check_b, check_nmax, check_strict, check_machine,
                                 check_report);
        }

        if (*comb) {
            echo_config(std::cout, "combine", {{"op", comb_op}},
                        comb_b.empty() ? std::vector<std::string>{comb_a}
                                       : std::vector<std::string>{comb_a, comb_b});
            System a = load_dataset(comb_a);
            System out;
            if (comb_op == "dual") {
                if (!comb_b.empty()) throw DataError("dual takes a single dataset");
                out = dual_system(a);
            } else {
                if (comb_b.empty()) throw DataError("binary op needs two datasets");
                System b = load_dataset(comb_b);
                CombineOp op = comb_op == "sum"      ? CombineOp::Sum
                               : comb_op == "tensor" ? CombineOp::Tensor
                               : comb_op == "hom"    ? CombineOp::Hom
                                                     : throw DataError("unknown op '" + comb_op + "'");
                out = combine_systems(op, a, b);
            }
            store_dataset(out, comb_out);
            std::cout << "wrote " << comb_out << " (dim " << out.dim << ")\n";
            return 0;
        }

        if (*restr) {
            echo_config(std::cout, "restrict", {{"level-cap", std::to_string(restr_cap)}},
                        {restr_file});
            System sys = load_dataset(restr_file);
            RestrictOptions opts;
            opts.level_cap = restr_cap;
            System out = restrict_system(sys, opts);
            store_dataset(out, restr_out);
            std::cout << "wrote " << restr_out << " (dim " << out.dim << ")\n";
            return 0;
        }

        if (*ext) {
            echo_config(std::cout, "extend", {{"target", ext_target}}, {ext_file, ext_fields});
            System sys = load_dataset(ext_file);
            auto fields = load_field_table(ext_fields);
            auto it = fields.find(ext_target);
            if (it == fields.end()) throw DataError("target field '" + ext_target + "' not defined");
            NFElement image = decode_element(json::parse(ext_embed), it->second);
            Embedding phi(sys.E, it->second, image);
            std::map<std::string, std::string> fiber;
            for (const auto& f : ext_fiber) {
                auto eq = f.find('=');
                if (eq == std::string::npos) throw DataError("fiber entries are NEWLABEL=OLDLABEL");
                fiber[f.substr(0, eq)] = f.substr(eq + 1);
            }
            System out = extend_system(sys, phi, fiber);
            store_dataset(out, ext_out);
            std::cout << "wrote " << ext_out << " (" << out.sheets.size() << " sheets)\n";
            return 0;
        }

        if (*torus) {
            if (!torus_machine)
                echo_config(std::cout, "torus-rank",
                            {{"mode", torus_mode},
                             {"precision-bits", std::to_string(torus_prec)},
                             {"relation-bound", std::to_string(torus_bound)}},
                            {torus_file});
            System sys = load_dataset(torus_file);
            TorusOptions opts;
            opts.mode = torus_mode == "heuristic" ? TorusMode::Heuristic : TorusMode::ExactInField;
            opts.precision_bits = torus_prec;
            opts.relation_bound = torus_bound;

            std::set<std::string> places;
            for (const auto& s : sys.sheets)
                for (const auto& [label, e] : s.entries)
                    if (e.status == EntryStatus::Unramified) places.insert(label);
            if (!torus_places.empty())
                places = std::set<std::string>(torus_places.begin(), torus_places.end());

            for (const std::string& plabel : places) {
                std::vector<std::pair<std::string, FrobSample>> samples;
                for (const auto& s : sys.sheets) {
                    auto it = s.entries.find(plabel);
                    if (it == s.entries.end() || it->second.status != EntryStatus::Unramified)
                        continue;
                    FrobSample sample = *it->second.sample;
                    if (opts.mode == TorusMode::ExactInField)
                        sample = FrobSample(sample.place, sample.n,
                                            lift_quadratic_for_exact(sample.P));
                    samples.emplace_back(s.label, sample);
                }
                if (samples.empty()) {
                    std::cout << "place " << plabel << ": no unramified samples\n";
                    continue;
                }
                auto report = rank_compare(samples, opts);
                for (const auto& e : report.entries) {
                    if (torus_machine) {
                        json rec;
                        rec["kind"] = "rank";
                        rec["sheet"] = e.label;
                        rec["place"] = plabel;
                        rec["rank"] = e.result.rank_estimate;
                        rec["upper"] = e.result.rank_certified_upper;
                        rec["certified"] = e.result.certified;
                        rec["precision_bits"] = static_cast<long>(e.result.precision_bits_used);
                        std::cout << rec.dump() << "\n";
                    } else {
                        std::cout << "  (" << e.label << ", " << plabel
                                  << "): rank " << e.result.rank_estimate << " (upper "
                                  << e.result.rank_certified_upper << ", "
                                  << (e.result.certified ? "certified" : "heuristic") << ")\n";
                    }
                }
                if (torus_machine) {
                    json rec;
                    rec["kind"] = "rank_compare";
                    rec["place"] = plabel;
                    rec["agree"] = report.ranks_agree;
                    rec["all_certified"] = report.all_certified;
                    rec["level"] = report.common_level;
                    std::cout << rec.dump() << "\n";
                } else {
                    std::cout << "place " << plabel << ": ranks "
                              << (report.ranks_agree ? "agree" : "DISAGREE") << " at level "
                              << report.common_level
                              << (report.all_certified ? " (all certified)" : "") << "\n";
                }
            }
            return 0;
        }

        if (*sub) {
            echo_config(std::cout, "subfield-degree",
                        {{"sheet", sub_sheet}, {"seed", std::to_string(sub_seed)}}, {sub_file});
            System sys = load_dataset(sub_file);
            const RepSheet* sheet = sys.find_sheet(sub_sheet);
            if (!sheet) throw DataError("no sheet labeled '" + sub_sheet + "'");
            auto res = coefficient_subfield_degree(*sheet, sub_places, sub_combos, sub_seed);
            std::cout << "coefficient subfield degree >= " << res.degree << " ("
                      << res.witnesses.size() << " witnesses)\n";
            if (!res.witnesses.empty())
                std::cout << "witness: " << res.witnesses.front().str() << "\n";
            return 0;
        }

        if (*ht) {
            echo_config(std::cout, "halftwist",
                        {{"sigma", std::to_string(ht_sigma)},
                         {"ladder", ht_ladder ? "yes" : "no"}},
                        {});
            CMField field(ht_sigma, parse_cycles(ht_dagger, ht_sigma));
            auto slots = parse_slots(ht_slots);
            if (slots.empty()) throw DataError("no slots given");
            int weight = slots.front().first + slots.front().second;
            EHodgeType v(field, weight, slots);
            std::cout << "input: weight " << v.weight() << ", level " << level(v) << "\n";
            if (ht_ladder) {
                auto ladder = half_twist_ladder(v);
                int step = 1;
                for (const auto& [phi, w] : ladder) {
                    std::cout << "step " << step++ << ": phi={";
                    bool first = true;
                    for (std::size_t s : phi.phi()) {
                        std::cout << (first ? "" : ",") << s;
                        first = false;
                    }
                    std::cout << "} weight=" << w.weight() << " level=" << level(w) << "\n";
                }
                std::cout << "ladder length " << ladder.size() << "\n";
            } else if (!ht_phi.empty()) {
                CMType phi(field, parse_index_list(ht_phi));
                EHodgeType w = half_twist(v, phi);
                std::cout << "twist: weight=" << w.weight() << " level=" << level(w) << "\n";
            } else {
                auto phi = find_compatible_cm_type(v);
                if (!phi) {
                    std::cout << "no compatible CM type (upper set meets its conjugate)\n";
                    return 2;
                }
                std::cout << "compatible phi={";
                bool first = true;
                for (std::size_t s : phi->phi()) {
                    std::cout << (first ? "" : ",") << s;
                    first = false;
                }
                std::cout << "}\n";
            }
            return 0;
        }
    } catch (const PrecisionError& e) {
        std::cerr << "frobsys: precision exhaustion: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "frobsys: error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "frobsys: bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "frobsys: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
