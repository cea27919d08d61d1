#include "mte/lexicon.hpp"

#include "mte/msd.hpp"
#include "mte/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mte {

Lexicon load_lexicon(std::istream& in, const std::string& language,
                     const LexiconOptions& options) {
    Lexicon lex;
    lex.language = to_lower_ascii(language);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = line;
        if (trim(sv).empty() || trim(sv)[0] == '#') continue;
        std::vector<std::string> fields =
            options.space_runs ? split_ws(sv) : split(sv, options.separator);
        if (fields.size() != 3)
            throw Error("line " + std::to_string(lineno),
                        "expected 3 fields, got " + std::to_string(fields.size()));
        LexiconEntry e;
        e.word_form = std::string(trim(fields[0]));
        e.lemma = std::string(trim(fields[1]));
        e.msd = std::string(trim(fields[2]));
        if (options.equals_shorthand) {
            if (e.word_form == "=") e.word_form = e.lemma;
            if (e.lemma == "=") e.lemma = e.word_form;
        }
        if (e.word_form.empty() || e.lemma.empty() || e.msd.empty())
            throw Error("line " + std::to_string(lineno), "empty field");
        lex.entries.push_back(std::move(e));
    }
    return lex;
}

Lexicon load_lexicon_file(const std::string& path, const std::string& language,
                          const LexiconOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path, "cannot open file");
    return load_lexicon(in, language, options);
}

Report validate_lexicon(const Lexicon& lex, const Specification& spec, Ordering ordering) {
    Report report;

    std::vector<std::string> msds;
    msds.reserve(lex.entries.size());
    for (const auto& e : lex.entries) msds.push_back(e.msd);
    auto checks = validate_msd_list(msds, spec, lex.language, ordering);
    for (size_t i = 0; i < checks.size(); ++i) {
        if (!checks[i].valid)
            report.error(lex.entries[i].word_form + "/" + lex.entries[i].lemma, checks[i].reason);
    }

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& e : lex.entries)
        if (!seen.insert({e.word_form, e.lemma, e.msd}).second)
            report.warning(e.word_form + "/" + e.lemma + "/" + e.msd, "duplicate entry");

    const LanguageSection* sec = spec.section(lex.language);
    if (sec && !sec->msd_index.empty()) {
        std::set<std::string> indexed;
        for (const auto& ie : sec->msd_index) indexed.insert(ie.msd);
        std::set<std::string> reported;
        for (size_t i = 0; i < checks.size(); ++i)
            if (checks[i].valid && !indexed.count(msds[i]) && reported.insert(msds[i]).second)
                report.warning(msds[i], "MSD valid but not listed in the MSD index for " +
                                            lex.language);
    }
    return report;
}

std::vector<MsdIndexEntry> build_msd_index(const Lexicon& lex, const Specification& spec,
                                           const AnnotatedCorpus* corpus, Ordering ordering) {
    // distinct MSDs, ordered by collation key (undecodable ones last, by text)
    std::set<std::string> distinct;
    for (const auto& e : lex.entries) distinct.insert(e.msd);

    std::vector<std::pair<std::vector<uint32_t>, std::string>> keyed;
    std::vector<std::string> unkeyed;
    for (const auto& m : distinct) {
        try {
            keyed.emplace_back(collation_key(Msd{m, lex.language, ordering, false}, spec), m);
        } catch (const Error&) {
            unkeyed.push_back(m);
        }
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<std::string> order;
    for (const auto& [k, m] : keyed) order.push_back(m);
    order.insert(order.end(), unkeyed.begin(), unkeyed.end());

    auto usage = corpus ? msd_usage(*corpus)
                        : std::map<std::string, std::map<std::pair<std::string, std::string>, long>>{};

    std::vector<MsdIndexEntry> index;
    for (const auto& m : order) {
        MsdIndexEntry entry;
        entry.msd = m;
        Msd msd{m, lex.language, ordering, false};
        try {
            entry.verbose = expand(msd, spec, ExpandForm::verbose_string);
            Msd native = relocalise(msd, spec, Localisation::native);
            entry.msd_localised = native.text;
            entry.verbose_localised = expand(msd, spec, ExpandForm::minimal_localised);
        } catch (const Error&) {
            // verbose columns stay empty for MSDs the spec cannot expand
        }

        if (corpus) {
            auto it = usage.find(m);
            long tokens = 0;
            std::set<std::string> forms;
            std::vector<std::pair<std::pair<std::string, std::string>, long>> pairs;
            if (it != usage.end()) {
                for (const auto& [wf_lemma, n] : it->second) {
                    tokens += n;
                    forms.insert(wf_lemma.first);
                    pairs.emplace_back(wf_lemma, n);
                }
            }
            entry.token_count = tokens;
            entry.type_count = static_cast<long>(forms.size());
            std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            for (size_t i = 0; i < pairs.size() && i < 10; ++i)
                entry.examples.push_back(pairs[i].first);
        } else {
            std::set<std::pair<std::string, std::string>> forms;
            for (const auto& e : lex.entries)
                if (e.msd == m) forms.insert({e.word_form, e.lemma});
            for (const auto& p : forms) {
                if (entry.examples.size() >= 10) break;
                entry.examples.push_back(p);
            }
        }
        index.push_back(std::move(entry));
    }
    return index;
}

} // namespace mte
