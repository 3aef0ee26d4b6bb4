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

#include <frobsys/dataset.hpp>
#include <frobsys/elliptic.hpp>

#include <sstream>

#include "catch_amalgamated.hpp"

using namespace frobsys;

namespace {

FieldPtr gaussian() {
    return NumberField::extension(nullptr, "i",
                                  {NFElement(Rational(1)), NFElement(Rational(0)), NFElement(Rational(1))});
}

System load_str(const std::string& text) {
    std::istringstream is(text);
    return load_dataset(is, "<test>");
}

}  // namespace

TEST_CASE("store then load then store is byte-identical") {
    System cm = build_cm_system(1, 0, gaussian(), 60, "l3", 3, "l7", 7);
    std::string first = dataset_to_string(cm);
    System reloaded = load_str(first);
    std::string second = dataset_to_string(reloaded);
    CHECK(first == second);

    // and again through a Q-level dataset with extension places
    System qsys;
    qsys.E = nullptr;
    qsys.dim = 2;
    qsys.sheets = {build_q_sheet(1, 0, 30, "l2", 2, {2, 3})};
    std::string qfirst = dataset_to_string(qsys);
    CHECK(qfirst == dataset_to_string(load_str(qfirst)));
}

TEST_CASE("round trip preserves values over towers") {
    auto E = NumberField::extension(
        nullptr, "s", {NFElement(Rational(-2)), NFElement(Rational(0)), NFElement(Rational(1))});
    auto Et = NumberField::extension(E, "v", {-E->generator(), E->zero(), E->one()});
    System sys;
    sys.E = Et;
    sys.dim = 1;
    RepSheet sheet;
    sheet.E = Et;
    sheet.label = "lt";
    sheet.ell = 3;
    sheet.dim = 1;
    NFElement root = Et->generator() + Et->from_rational(Rational(1, 2));
    sheet.add_entry(SheetEntry::unramified(
        FrobSample(Place("p5", 5, 1), 1,
                   CharPoly(Et, Polynomial::from_coeffs(Et, {-root, Et->one()})))));
    sys.sheets = {sheet};

    System back = load_str(dataset_to_string(sys));
    CHECK(same_field(back.E, Et));
    CHECK(back.sheets[0].entries.at("p5").sample->P.poly().coeff(0) == -root);
    CHECK(dataset_to_string(back) == dataset_to_string(sys));
}

TEST_CASE("malformed records are rejected with line numbers") {
    // bad q
    CHECK_THROWS_WITH(
        load_str("{\"kind\":\"sheet\",\"label\":\"l2\",\"field\":\"Q\",\"ell\":2,\"dim\":2}\n"
                 "{\"kind\":\"sample\",\"sheet\":\"l2\",\"place\":\"p5\",\"p\":5,\"f\":2,\"q\":20,"
                 "\"status\":\"unramified\",\"n\":1,\"coeffs\":[\"5\",\"-2\"]}\n"),
        Catch::Matchers::ContainsSubstring("q != p^f"));

    // unknown field reference
    CHECK_THROWS_WITH(
        load_str("{\"kind\":\"sheet\",\"label\":\"l2\",\"field\":\"E\",\"ell\":2,\"dim\":1}\n"),
        Catch::Matchers::ContainsSubstring("unknown field"));

    // invalid JSON carries the line number
    CHECK_THROWS_WITH(load_str("{\"kind\":\"field\"\n"),
                      Catch::Matchers::ContainsSubstring("<test>:1"));

    // non-prime p
    CHECK_THROWS_WITH(
        load_str("{\"kind\":\"sheet\",\"label\":\"l2\",\"field\":\"Q\",\"ell\":2,\"dim\":1}\n"
                 "{\"kind\":\"sample\",\"sheet\":\"l2\",\"place\":\"p9\",\"p\":9,\"f\":1,"
                 "\"status\":\"unramified\",\"n\":1,\"coeffs\":[\"9\"]}\n"),
        Catch::Matchers::ContainsSubstring("not prime"));

    // zero constant term violates the charpoly invariant
    CHECK_THROWS_AS(
        load_str("{\"kind\":\"sheet\",\"label\":\"l2\",\"field\":\"Q\",\"ell\":2,\"dim\":1}\n"
                 "{\"kind\":\"sample\",\"sheet\":\"l2\",\"place\":\"p5\",\"p\":5,\"f\":1,"
                 "\"status\":\"unramified\",\"n\":1,\"coeffs\":[\"0\"]}\n"),
        DataError);

    // sample for an unknown sheet
    CHECK_THROWS_WITH(
        load_str("{\"kind\":\"sheet\",\"label\":\"l2\",\"field\":\"Q\",\"ell\":2,\"dim\":1}\n"
                 "{\"kind\":\"sample\",\"sheet\":\"zz\",\"place\":\"p5\",\"p\":5,\"f\":1,"
                 "\"status\":\"unramified\",\"n\":1,\"coeffs\":[\"5\"]}\n"),
        Catch::Matchers::ContainsSubstring("unknown sheet"));

    // duplicate samples at one place
    CHECK_THROWS_WITH(
        load_str("{\"kind\":\"sheet\",\"label\":\"l2\",\"field\":\"Q\",\"ell\":2,\"dim\":1}\n"
                 "{\"kind\":\"sample\",\"sheet\":\"l2\",\"place\":\"p5\",\"p\":5,\"f\":1,"
                 "\"status\":\"unramified\",\"n\":1,\"coeffs\":[\"5\"]}\n"
                 "{\"kind\":\"sample\",\"sheet\":\"l2\",\"place\":\"p5\",\"p\":5,\"f\":1,"
                 "\"status\":\"unramified\",\"n\":1,\"coeffs\":[\"5\"]}\n"),
        Catch::Matchers::ContainsSubstring("duplicate"));
}

TEST_CASE("empty files and empty systems are rejected") {
    CHECK_THROWS_WITH(load_str(""), Catch::Matchers::ContainsSubstring("empty system"));
    CHECK_THROWS_WITH(load_str("{\"kind\":\"field\",\"name\":\"E\",\"base\":\"Q\","
                               "\"min_poly\":[\"1\",\"0\",\"1\"]}\n"),
                      Catch::Matchers::ContainsSubstring("empty system"));
}

TEST_CASE("ramified and unknown entries round trip") {
    System sys;
    sys.E = nullptr;
    sys.dim = 2;
    RepSheet s;
    s.E = nullptr;
    s.label = "l2";
    s.ell = 2;
    s.dim = 2;
    s.add_entry(SheetEntry::ramified(Place("p7", 7, 1)));
    s.add_entry(SheetEntry::unknown(Place("p11", 11, 1)));
    s.add_entry(SheetEntry::unramified(
        FrobSample(Place("p5", 5, 1), 1, CharPoly::from_rationals({Rational(5), Rational(-2), Rational(1)}))));
    sys.sheets = {s};

    System back = load_str(dataset_to_string(sys));
    CHECK(back.sheets[0].entries.at("p7").status == EntryStatus::Ramified);
    CHECK(back.sheets[0].entries.at("p11").status == EntryStatus::Unknown);
    CHECK(back.sheets[0].entries.at("p5").status == EntryStatus::Unramified);
    CHECK(dataset_to_string(back) == dataset_to_string(sys));
}
