#include "mte/report.hpp"
#include "mte/spec.hpp"

#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <sstream>

using namespace mte;
using support::fixture_spec;

TEST_CASE("fixture loads with the expected shape") {
    const Specification& spec = fixture_spec();
    REQUIRE(spec.categories.size() == 6);
    CHECK(spec.languages == std::vector<std::string>{"bg", "en", "mk", "ru", "sl"});
    const Category* noun = spec.category("N");
    REQUIRE(noun != nullptr);
    CHECK(noun->attributes.size() == 5);
    CHECK(noun->max_common_position() == 5);
    CHECK(spec.category("V")->max_common_position() == 14);
    CHECK(spec.category_rank("N") == 0);
    CHECK(spec.category_rank("Q") == 4);
}

TEST_CASE("position lookup under both orderings") {
    const Specification& spec = fixture_spec();
    CHECK(lookup(spec, "sl", "N", 3, Ordering::particular).name == "Number");
    CHECK(lookup(spec, "", "Q", 2, Ordering::common).name == "Formation");
    // Slovene re-orders the verb table: position 2 is Aspect, not VForm.
    CHECK(lookup(spec, "sl", "V", 2, Ordering::particular).name == "Aspect");
    CHECK(lookup(spec, "sl", "V", 2, Ordering::common).name == "VForm");
    CHECK_THROWS_AS(lookup(spec, "sl", "N", 0, Ordering::common), Error);
    CHECK_THROWS_AS(lookup(spec, "sl", "N", 99, Ordering::particular), Error);
}

TEST_CASE("Slovene particle declares a category with no attributes") {
    const Specification& spec = fixture_spec();
    const LanguageSection* sl = spec.section("sl");
    REQUIRE(sl != nullptr);
    const ParticularTable* q = sl->table("Q");
    REQUIRE(q != nullptr);
    CHECK(q->attributes.empty());
    REQUIRE(q->localised.has_value());
    CHECK(q->localised->name == "členek");
    CHECK(q->localised->code == "L");
    // the language still counts for the category
    auto langs = spec.category_languages("Q");
    CHECK(std::find(langs.begin(), langs.end(), "sl") != langs.end());
}

TEST_CASE("stats count attributes, values and languages per category") {
    const Specification& spec = fixture_spec();
    auto stats = spec_stats(spec);
    REQUIRE(stats.size() == 6);
    CHECK(stats[0].code == "N");
    CHECK(stats[0].attribute_count == 5);
    CHECK(stats[0].value_count == 15);
    CHECK(stats[0].language_count == 5);
    CHECK(stats[4].code == "Q");
    CHECK(stats[4].language_count == 4); // bg, mk, ru + the empty Slovene table
}

TEST_CASE("tabular emission round-trips") {
    const Specification& spec = fixture_spec();
    Specification again = load_spec(emit_spec(spec, SpecFormat::tabular), SpecFormat::tabular);
    CHECK(again == spec);
}

TEST_CASE("TEI emission round-trips") {
    const Specification& spec = fixture_spec();
    Specification again = load_spec(emit_spec(spec, SpecFormat::tei), SpecFormat::tei);
    CHECK(again == spec);
}

TEST_CASE("language sections round-trip standalone") {
    const Specification& spec = fixture_spec();
    const LanguageSection& sl = *spec.section("sl");
    CHECK(load_language_section(emit_language_section(sl)) == sl);
}

TEST_CASE("invariants reject structural corruption") {
    std::string bad = "CATEGORY N Noun\nATTR 1 Type\nVAL cc common sl\n";
    CHECK_THROWS_AS(load_spec(bad, SpecFormat::tabular), Error); // multi-char value code
    std::string dup = "CATEGORY N Noun\nCATEGORY N Nope\n";
    CHECK_THROWS_AS(load_spec(dup, SpecFormat::tabular), Error);
    std::string lower = "CATEGORY n Noun\n";
    CHECK_THROWS_AS(load_spec(lower, SpecFormat::tabular), Error);
}

TEST_CASE("validation flags unflagged section values as errors") {
    std::string text =
        "CATEGORY N Noun\n"
        "ATTR 1 Type\n"
        "VAL c common sl\n"
        "VAL p proper bg\n"
        "LANG-SECTION sl\n"
        "CAT N - -\n"
        "ATTR 1 Type\n"
        "VAL c common\n"
        "VAL p proper\n"; // listed for sl, flagged only for bg
    Specification spec = load_spec(text, SpecFormat::tabular);
    Report report = validate_spec(spec);
    CHECK(report.has_errors());
}

TEST_CASE("fixture passes validation without errors") {
    CHECK(!validate_spec(fixture_spec()).has_errors());
}
