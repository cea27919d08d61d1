#include "mte/msd.hpp"
#include "mte/report.hpp"
#include "mte/text.hpp"

#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace mte;
using support::fixture_spec;
using support::sample_structures;

namespace {

FeatureStructure noun_ncndl() {
    FeatureStructure fs;
    fs.language = "sl";
    fs.category_code = "N";
    fs.assignments = {{"Type", "common"},
                      {"Gender", "neuter"},
                      {"Number", "dual"},
                      {"Case", "locative"}};
    return fs;
}

FeatureStructure verb_vmen() {
    FeatureStructure fs;
    fs.language = "sl";
    fs.category_code = "V";
    fs.assignments = {{"Type", "main"}, {"Aspect", "perfective"}, {"VForm", "infinitive"}};
    return fs;
}

} // namespace

TEST_CASE("golden: Ncndl decodes to the five-feature noun structure") {
    const Specification& spec = fixture_spec();
    FeatureStructure fs = decode(Msd{"Ncndl", "sl", Ordering::particular, false}, spec);
    CHECK(fs == noun_ncndl());
    CHECK(encode(fs, spec, Ordering::particular).text == "Ncndl");
}

TEST_CASE("golden: Rp-y leaves Degree unassigned") {
    const Specification& spec = fixture_spec();
    FeatureStructure fs = decode(Msd{"Rp-y", "sl", Ordering::particular, false}, spec);
    CHECK(fs.category_code == "R");
    CHECK(fs.assignments.at("Type") == "particle");
    CHECK(fs.assignments.at("Clitic") == "yes");
    CHECK(fs.assignments.count("Degree") == 0);
    CHECK(encode(fs, spec, Ordering::particular).text == "Rp-y");
}

TEST_CASE("golden: common, particular and localised verb forms are equivalent") {
    const Specification& spec = fixture_spec();
    FeatureStructure fs = verb_vmen();
    CHECK(encode(fs, spec, Ordering::common).text == "Vmn-----------e");
    CHECK(encode(fs, spec, Ordering::particular).text == "Vmen");
    CHECK(encode(fs, spec, Ordering::particular, true).text == "Ggdn");

    CHECK(decode(Msd{"Vmn-----------e", "sl", Ordering::common, false}, spec) == fs);
    CHECK(decode(Msd{"Vmen", "sl", Ordering::particular, false}, spec) == fs);
    CHECK(decode(Msd{"Ggdn", "sl", Ordering::particular, true}, spec) == fs);
}

TEST_CASE("relocalise switches codes without changing the analysis") {
    const Specification& spec = fixture_spec();
    Msd somer = relocalise(Msd{"Ncmsg", "sl", Ordering::particular, false}, spec,
                           Localisation::native);
    CHECK(somer.text == "Somer");
    CHECK(somer.localised);
    Msd back = relocalise(somer, spec, Localisation::english);
    CHECK(back.text == "Ncmsg");
    CHECK(relocalise(Msd{"Ncndl", "sl", Ordering::particular, false}, spec,
                     Localisation::native)
              .text == "Sosdm");
    CHECK(decode(somer, spec) == decode(back, spec));
}

TEST_CASE("expansion forms") {
    const Specification& spec = fixture_spec();
    Msd m{"Vmn-----------e", "sl", Ordering::common, false};
    CHECK(expand(m, spec, ExpandForm::minimal) ==
          "Verb Type=main Aspect=perfective VForm=infinitive");
    CHECK(expand(m, spec, ExpandForm::minimal_localised) ==
          "glagol vrsta=glavni vid=dovršni oblika=nedoločnik");
    CHECK(expand(m, spec, ExpandForm::canonical_language) ==
          "Verb Type=main Aspect=perfective VForm=infinitive Person=0 Number=0 Gender=0 "
          "Negative=0");
    CHECK(expand(Msd{"Ncmsg", "sl", Ordering::particular, false}, spec,
                 ExpandForm::verbose_string) ==
          "Noun Type=common Gender=masculine Number=singular Case=genitive");
}

TEST_CASE("canonical-universal expansion spans every attribute name") {
    const Specification& spec = fixture_spec();
    std::string rendered =
        expand(Msd{"Vmen", "sl", Ordering::particular, false}, spec,
               ExpandForm::canonical_universal);
    auto fields = split_ws(rendered);
    REQUIRE(!fields.empty());
    CHECK(fields[0] == "Verb");

    std::set<std::string> expected;
    for (const auto& cat : spec.categories)
        for (const auto& attr : cat.attributes) expected.insert(attr.name);
    std::set<std::string> seen;
    int unset = 0;
    for (size_t i = 1; i < fields.size(); ++i) {
        auto eq = fields[i].find('=');
        REQUIRE(eq != std::string::npos);
        seen.insert(fields[i].substr(0, eq));
        if (fields[i].substr(eq + 1) == "0") ++unset;
    }
    CHECK(seen == expected);
    CHECK(unset == static_cast<int>(expected.size()) - 3); // Type, Aspect, VForm set
}

TEST_CASE("canonical mode rejects trailing hyphens; lenient normalises") {
    const Specification& spec = fixture_spec();
    auto checks = validate_msd_list({"Ncmsn----"}, spec, "sl", Ordering::particular);
    REQUIRE(checks.size() == 1);
    CHECK(!checks[0].valid);
    CHECK(checks[0].reason.find("non-canonical trailing hyphens") != std::string::npos);

    auto lenient = validate_msd_list({"Ncmsn----"}, spec, "sl", Ordering::particular,
                                     DecodeMode::lenient);
    REQUIRE(lenient.size() == 1);
    CHECK(lenient[0].valid);
    CHECK(lenient[0].normalised == "Ncmsn");
    // normalisation oracle: strip the hyphens by hand and re-validate
    CHECK(validate_msd_list({"Ncmsn"}, spec, "sl", Ordering::particular)[0].valid);
}

TEST_CASE("invalid inputs are rejected with reasons") {
    const Specification& spec = fixture_spec();
    auto checks = validate_msd_list({"Xcmsn", "Nxmsn", "Ncmsn", ""}, spec, "sl",
                                    Ordering::particular);
    CHECK(!checks[0].valid); // unknown category
    CHECK(!checks[1].valid); // unknown value code
    CHECK(checks[2].valid);
    CHECK(!checks[3].valid);
    // a value not flagged for the language is invalid there
    auto bg = validate_msd_list({"Ncmdn"}, spec, "bg", Ordering::common);
    CHECK(!bg[0].valid); // dual is Slovene-only
}

TEST_CASE("property: round-trip and ordering equivalence over sampled structures") {
    const Specification& spec = fixture_spec();
    for (const auto& lang : {"sl", "en"}) {
        for (const auto& fs : sample_structures(spec, lang, 150, 20260826)) {
            Msd particular = encode(fs, spec, Ordering::particular);
            Msd common = encode(fs, spec, Ordering::common);
            CHECK(decode(particular, spec) == fs);
            CHECK(decode(common, spec) == fs);
            CHECK(encode(decode(particular, spec), spec, Ordering::particular) == particular);
            CHECK(encode(decode(common, spec), spec, Ordering::common) == common);
            CHECK(particular.text.back() != '-');
            CHECK(common.text.back() != '-');
        }
    }
}

TEST_CASE("property: localisation is transparent to decoding (Slovene)") {
    const Specification& spec = fixture_spec();
    for (const auto& fs : sample_structures(spec, "sl", 60, 7)) {
        Msd native = encode(fs, spec, Ordering::particular, true);
        CHECK(decode(native, spec) == fs);
        CHECK(relocalise(relocalise(native, spec, Localisation::english), spec,
                         Localisation::native) == native);
    }
}

TEST_CASE("the full English tagset enumerates and validates") {
    const Specification& spec = fixture_spec();
    const LanguageSection* en = spec.section("en");
    REQUIRE(en != nullptr);
    std::set<std::string> tagset;
    for (const auto& table : en->tables) {
        std::vector<FeatureStructure> partial{FeatureStructure{"en", table.category_code, {}}};
        for (const auto& attr : table.attributes) {
            std::vector<FeatureStructure> next;
            for (const auto& fs : partial) {
                next.push_back(fs); // attribute unassigned
                for (const auto& v : attr.values) {
                    FeatureStructure withv = fs;
                    withv.assignments[attr.name] = v.name;
                    next.push_back(std::move(withv));
                }
            }
            partial = std::move(next);
        }
        for (const auto& fs : partial)
            tagset.insert(encode(fs, spec, Ordering::particular).text);
    }
    CHECK(tagset.size() >= 135);
    auto checks = validate_msd_list(std::vector<std::string>(tagset.begin(), tagset.end()),
                                    spec, "en", Ordering::particular);
    CHECK(std::all_of(checks.begin(), checks.end(), [](const MsdCheck& c) { return c.valid; }));
}

TEST_CASE("collation matches a brute-force tuple oracle") {
    const Specification& spec = fixture_spec();
    // independent oracle: rank tuples computed directly from the raw text
    auto oracle_key = [&](const std::string& text) {
        auto chars = utf8_chars(text);
        std::vector<uint32_t> key;
        int rank = 0;
        for (const auto& cat : spec.categories) {
            if (cat.code == chars[0]) break;
            ++rank;
        }
        key.push_back(static_cast<uint32_t>(rank));
        const LanguageSection* sl = spec.section("sl");
        const ParticularTable* table = sl->table(chars[0]);
        for (size_t i = 1; i < chars.size(); ++i) {
            uint32_t r = 0;
            if (chars[i] != "-") {
                const ParticularAttribute* pa = table->at(static_cast<int>(i));
                const Attribute& attr =
                    *spec.category(chars[0])->attribute_by_name(pa->name);
                for (size_t v = 0; v < attr.values.size(); ++v)
                    if (attr.values[v].code == chars[i]) r = static_cast<uint32_t>(v + 1);
            }
            key.push_back(r);
        }
        return key;
    };

    std::vector<std::string> msds = {"Vmen",  "Ncndl", "Rp-y",   "Ncmsn", "Agpmsny",
                                     "Ncmsg", "Rgpy",  "Va-p-sm", "Agpmsnn", "Va-r3s-n"};
    auto sorted = msds;
    std::sort(sorted.begin(), sorted.end(), [&](const std::string& a, const std::string& b) {
        return collation_key(Msd{a, "sl", Ordering::particular, false}, spec) <
               collation_key(Msd{b, "sl", Ordering::particular, false}, spec);
    });
    auto expected = msds;
    std::sort(expected.begin(), expected.end(),
              [&](const std::string& a, const std::string& b) {
                  return oracle_key(a) < oracle_key(b);
              });
    CHECK(sorted == expected);
    // spot order: bare prefix before longer assignments, category rank first
    CHECK(sorted.front().front() == 'N');
    CHECK(sorted.back().front() == 'R');
}
