#include "mte/align.hpp"
#include "mte/corpus.hpp"
#include "mte/report.hpp"

#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace mte;
using support::fixture_path;
using support::read_file;

namespace {

AlignmentGroup make_group(const std::vector<std::string>& docs,
                          const std::vector<std::vector<std::vector<std::string>>>& links) {
    AlignmentGroup g;
    g.documents = docs;
    for (const auto& l : links) g.links.push_back(AlignmentLink{l});
    return g;
}

/// Brute-force composition oracle: transitive closure over "shares a hub
/// sentence with", ignoring the union-find construction entirely.
std::set<std::multiset<std::string>> oracle_blocks(const AlignmentGroup& a,
                                                   const AlignmentGroup& b) {
    // collect hub-side sets (slot 0 = hub by construction in these tests)
    std::vector<std::pair<std::set<std::string>, std::pair<int, size_t>>> members;
    for (size_t i = 0; i < a.links.size(); ++i)
        members.push_back({{a.links[i].targets[0].begin(), a.links[i].targets[0].end()},
                           {0, i}});
    for (size_t i = 0; i < b.links.size(); ++i)
        members.push_back({{b.links[i].targets[0].begin(), b.links[i].targets[0].end()},
                           {1, i}});

    // repeatedly merge any two clusters whose hub sets intersect
    std::vector<std::pair<std::set<std::string>, std::vector<std::pair<int, size_t>>>> clusters;
    for (const auto& [hub, ref] : members) clusters.push_back({hub, {ref}});
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < clusters.size() && !changed; ++i)
            for (size_t j = i + 1; j < clusters.size() && !changed; ++j) {
                bool meets = std::any_of(
                    clusters[i].first.begin(), clusters[i].first.end(),
                    [&](const std::string& id) { return clusters[j].first.count(id); });
                if (meets) {
                    clusters[i].first.insert(clusters[j].first.begin(),
                                             clusters[j].first.end());
                    clusters[i].second.insert(clusters[i].second.end(),
                                              clusters[j].second.begin(),
                                              clusters[j].second.end());
                    clusters.erase(clusters.begin() + static_cast<long>(j));
                    changed = true;
                }
            }
    }

    std::set<std::multiset<std::string>> blocks;
    for (const auto& [hub, refs] : clusters) {
        std::multiset<std::string> block;
        for (const auto& [side, idx] : refs) {
            const AlignmentLink& link = side == 0 ? a.links[idx] : b.links[idx];
            for (const auto& id : link.targets[1])
                block.insert((side == 0 ? "x:" : "y:") + id);
        }
        blocks.insert(std::move(block));
    }
    blocks.erase(std::multiset<std::string>{}); // all-null clusters carry no content
    return blocks;
}

std::set<std::multiset<std::string>> result_blocks(const AlignmentGroup& composed) {
    std::set<std::multiset<std::string>> blocks;
    for (const auto& link : composed.links) {
        std::multiset<std::string> block;
        for (const auto& id : link.targets[0]) block.insert("x:" + id);
        for (const auto& id : link.targets[1]) block.insert("y:" + id);
        blocks.insert(std::move(block));
    }
    return blocks;
}

AlignmentGroup random_hub_group(std::mt19937& rng, const std::string& doc, int hub_size,
                                double null_share) {
    AlignmentGroup g;
    g.documents = {"hub.xml", doc};
    std::uniform_int_distribution<int> arity(1, 3);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int hub_next = 1, other_next = 1;
    while (hub_next <= hub_size) {
        AlignmentLink link;
        link.targets.resize(2);
        bool null_link = coin(rng) < null_share;
        int m = null_link && coin(rng) < 0.5 ? 0 : arity(rng);
        int n = null_link && m != 0 ? 0 : arity(rng);
        if (m == 0 && n == 0) n = 1;
        for (int i = 0; i < m && hub_next <= hub_size; ++i)
            link.targets[0].push_back("h." + std::to_string(hub_next++));
        for (int i = 0; i < n; ++i)
            link.targets[1].push_back(doc + "." + std::to_string(other_next++));
        if (link.targets[0].empty() && link.targets[1].empty()) continue;
        g.links.push_back(std::move(link));
    }
    return g;
}

} // namespace

TEST_CASE("the published fragment loads, validates and re-emits byte-identically") {
    std::string original = read_file(fixture_path("align-mk-sl.xml"));
    Report findings;
    AlignmentGroup group = load_alignment(original, &findings);
    CHECK(group.documents ==
          std::vector<std::string>{"oana-mk.xml", "oana-sl.xml"});
    REQUIRE(group.links.size() == 6);
    CHECK(group.links[2].arity_string() == "2:1");
    CHECK(group.links[5].is_null());
    CHECK(group.links[5].targets[1] == std::vector<std::string>{"Osl.4.12.2"});
    // the commented 0:1 link is reported, not silently dropped
    CHECK(findings.count() > 0);
    CHECK(emit_alignment(group) == original);
    CHECK(null_link_report(group) == "NULL-LINK\t0:1\toana-sl.xml#Osl.4.12.2\n");
}

TEST_CASE("duplicate sentences within a slot are rejected") {
    std::string text =
        "<linkGrp type=\"alignment\" corresp=\"a.xml b.xml\">\n"
        "  <link n=\"1:1\" targets=\"a.xml#A.1 b.xml#B.1\"/>\n"
        "  <link n=\"1:1\" targets=\"a.xml#A.1 b.xml#B.2\"/>\n"
        "</linkGrp>\n";
    CHECK_THROWS_AS(load_alignment(text), Error);
}

TEST_CASE("arity mismatches and unknown documents are rejected") {
    std::string bad_arity =
        "<linkGrp type=\"alignment\" corresp=\"a.xml b.xml\">\n"
        "  <link n=\"2:1\" targets=\"a.xml#A.1 b.xml#B.1\"/>\n"
        "</linkGrp>\n";
    CHECK_THROWS_AS(load_alignment(bad_arity), Error);
    std::string bad_doc =
        "<linkGrp type=\"alignment\" corresp=\"a.xml b.xml\">\n"
        "  <link n=\"1:1\" targets=\"a.xml#A.1 c.xml#C.1\"/>\n"
        "</linkGrp>\n";
    CHECK_THROWS_AS(load_alignment(bad_doc), Error);
}

TEST_CASE("validation resolves targets against corpora") {
    AlignmentGroup group = make_group(
        {"oana-mk.xml", "oana-sl.xml"},
        {{{"Omk.1"}, {"Osl.1.2.2.1"}}, {{"Omk.2"}, {"Osl.9.9.9"}}});
    AnnotatedCorpus sl = load_corpus_file(fixture_path("corpus-sl.xml"),
                                          CorpusParseMode::strict);
    Report report = validate_alignment(group, {nullptr, &sl});
    CHECK(report.has_errors()); // Osl.9.9.9 does not exist
    bool unaligned_noted = std::any_of(
        report.records().begin(), report.records().end(), [](const Record& r) {
            return r.kind == "INFO" && r.path.find("Osl.1.2.2.2") != std::string::npos;
        });
    CHECK(unaligned_noted);
}

TEST_CASE("crossing links are reported as warnings") {
    AlignmentGroup group = make_group(
        {"a.xml", "b.xml"},
        {{{"A.1"}, {"B.2"}}, {{"A.2"}, {"B.1"}}});
    Report report = validate_alignment(group, {nullptr, nullptr});
    CHECK(!report.has_errors());
    CHECK(report.count() > 0);
}

TEST_CASE("composition merges exactly the blocks forced by shared hub sentences") {
    AlignmentGroup to_x = make_group(
        {"hub.xml", "x.xml"},
        {{{"h.1", "h.2"}, {"x.1"}}, {{"h.3"}, {"x.2"}}, {{"h.4"}, {"x.3"}}});
    AlignmentGroup to_y = make_group(
        {"hub.xml", "y.xml"},
        {{{"h.1"}, {"y.1"}}, {{"h.2"}, {"y.2", "y.3"}}, {{"h.3"}, {"y.4"}}});
    AlignmentGroup out = compose(to_x, to_y);
    CHECK(out.documents == std::vector<std::string>{"x.xml", "y.xml"});
    REQUIRE(out.links.size() == 3);
    // h.1 and h.2 glue x.1 to all of y.1 y.2 y.3
    CHECK(out.links[0].targets[0] == std::vector<std::string>{"x.1"});
    CHECK(out.links[0].targets[1] == std::vector<std::string>{"y.1", "y.2", "y.3"});
    CHECK(out.links[1].targets[0] == std::vector<std::string>{"x.2"});
    CHECK(out.links[1].targets[1] == std::vector<std::string>{"y.4"});
    // h.4 is covered on the x side only: a null-link
    CHECK(out.links[2].targets[0] == std::vector<std::string>{"x.3"});
    CHECK(out.links[2].is_null());
}

TEST_CASE("multiway composition can keep the hub slot") {
    AlignmentGroup to_x = make_group({"hub.xml", "x.xml"}, {{{"h.1"}, {"x.1"}}});
    AlignmentGroup to_y = make_group({"hub.xml", "y.xml"}, {{{"h.1"}, {"y.1"}}});
    AlignmentGroup out = compose_multiway({to_x, to_y}, true);
    CHECK(out.documents ==
          std::vector<std::string>{"hub.xml", "x.xml", "y.xml"});
    REQUIRE(out.links.size() == 1);
    CHECK(out.links[0].targets[0] == std::vector<std::string>{"h.1"});
    CHECK(out.links[0].arity_string() == "1:1:1");
}

TEST_CASE("property: composition equals the transitive-closure oracle") {
    std::mt19937 rng(97);
    for (int round = 0; round < 25; ++round) {
        int hub_size = 5 + static_cast<int>(rng() % 26);
        AlignmentGroup a = random_hub_group(rng, "x", hub_size, 0.1);
        AlignmentGroup b = random_hub_group(rng, "y", hub_size, 0.1);
        AlignmentGroup composed = compose(a, b);
        CHECK(result_blocks(composed) == oracle_blocks(a, b));

        // conservation: every non-hub sentence appears exactly once
        std::multiset<std::string> seen;
        for (const auto& link : composed.links) {
            for (const auto& id : link.targets[0]) seen.insert("x:" + id);
            for (const auto& id : link.targets[1]) seen.insert("y:" + id);
        }
        std::multiset<std::string> expected;
        for (const auto& link : a.links)
            for (const auto& id : link.targets[1]) expected.insert("x:" + id);
        for (const auto& link : b.links)
            for (const auto& id : link.targets[1]) expected.insert("y:" + id);
        CHECK(seen == expected);
    }
}
