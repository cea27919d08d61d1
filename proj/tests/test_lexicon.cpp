#include "mte/corpus.hpp"
#include "mte/lexicon.hpp"
#include "mte/report.hpp"

#include "doctest.h"
#include "support.hpp"

#include <sstream>

using namespace mte;
using support::fixture_path;
using support::fixture_spec;

namespace {

Lexicon fixture_lexicon() {
    LexiconOptions opts;
    opts.equals_shorthand = true;
    return load_lexicon_file(fixture_path("lexicon-sl.tsv"), "sl", opts);
}

AnnotatedCorpus fixture_corpus() {
    return load_corpus_file(fixture_path("corpus-sl.xml"), CorpusParseMode::strict);
}

} // namespace

TEST_CASE("lexicon lines parse with the equals shorthand") {
    Lexicon lex = fixture_lexicon();
    REQUIRE(lex.entries.size() == 9);
    CHECK(lex.entries[0] == LexiconEntry{"Bil", "biti", "Va-p-sm"});
    CHECK(lex.entries[5] == LexiconEntry{"dan", "dan", "Ncmsn"}); // '=' expanded
    std::istringstream eq("=\tdan\tNcmsn\n");
    LexiconOptions opts;
    opts.equals_shorthand = true;
    Lexicon mirrored = load_lexicon(eq, "sl", opts);
    CHECK(mirrored.entries[0].word_form == "dan");
}

TEST_CASE("wrong field counts are reported with line numbers") {
    std::istringstream in("dan\tdan\tNcmsn\nbroken line\n");
    try {
        load_lexicon(in, "sl");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    std::istringstream empty_field("dan\t\tNcmsn\n");
    CHECK_THROWS_AS(load_lexicon(empty_field, "sl"), Error);
}

TEST_CASE("space-run separation for historic lexicons") {
    std::istringstream in("dan   dan   Ncmsn\n");
    LexiconOptions opts;
    opts.separator = ' ';
    opts.space_runs = true;
    Lexicon lex = load_lexicon(in, "sl", opts);
    REQUIRE(lex.entries.size() == 1);
    CHECK(lex.entries[0].msd == "Ncmsn");
}

TEST_CASE("validation flags invalid MSDs, duplicates, and unindexed MSDs") {
    Lexicon lex = fixture_lexicon();
    CHECK(!validate_lexicon(lex, fixture_spec()).has_errors());

    Lexicon bad = lex;
    bad.entries.push_back({"dnevu", "dan", "Nxmsd"});
    bad.entries.push_back({"dan", "dan", "Ncmsn"}); // duplicate triple
    Report report = validate_lexicon(bad, fixture_spec());
    CHECK(report.has_errors());
    bool names_entry = false, warns_duplicate = false;
    for (const auto& r : report.records()) {
        if (r.kind == "ERROR" && r.path.find("dnevu") != std::string::npos) names_entry = true;
        if (r.kind == "WARNING" && r.detail.find("duplicate") != std::string::npos)
            warns_duplicate = true;
    }
    CHECK(names_entry);
    CHECK(warns_duplicate);

    // valid but absent from the Slovene MSD index: warning, not error
    Lexicon unindexed = lex;
    unindexed.entries.push_back({"dnevu", "dan", "Ncmsd"});
    Report r2 = validate_lexicon(unindexed, fixture_spec());
    CHECK(!r2.has_errors());
    CHECK(r2.count() > 0);
}

TEST_CASE("MSD index counts and examples match manual counts") {
    Lexicon lex = fixture_lexicon();
    AnnotatedCorpus corpus = fixture_corpus();
    auto index = build_msd_index(lex, fixture_spec(), &corpus);

    // collation order: noun rows first, nominative before genitive
    REQUIRE(index.size() == 6);
    CHECK(index[0].msd == "Ncmsn");
    CHECK(index[1].msd == "Ncmsg");
    CHECK(index[2].msd == "Va-p-sm");
    CHECK(index[3].msd == "Va-r3s-n");

    // hand counts: Ncmsn tags dan, dan, svet
    REQUIRE(index[0].token_count.has_value());
    CHECK(*index[0].token_count == 3);
    CHECK(*index[0].type_count == 2);
    REQUIRE(index[0].examples.size() == 2);
    CHECK(index[0].examples[0] == std::pair<std::string, std::string>{"dan", "dan"});
    CHECK(index[0].examples[1] == std::pair<std::string, std::string>{"svet", "svet"});
    CHECK(index[0].verbose ==
          "Noun Type=common Gender=masculine Number=singular Case=nominative");
    CHECK(index[0].msd_localised == "Somei");

    // Ncmsg never occurs in the mini corpus
    CHECK(*index[1].token_count == 0);
    CHECK(*index[1].type_count == 0);
}

TEST_CASE("MSD index without a corpus lists examples alphabetically, no counts") {
    Lexicon lex = fixture_lexicon();
    auto index = build_msd_index(lex, fixture_spec());
    REQUIRE(index.size() == 6);
    CHECK(!index[0].token_count.has_value());
    CHECK(!index[0].type_count.has_value());
    REQUIRE(index[0].examples.size() == 2);
    CHECK(index[0].examples[0].first == "dan");
    CHECK(index[0].examples[1].first == "svet");
}
