#ifndef MTE_LEXICON_HPP
#define MTE_LEXICON_HPP

#include "mte/corpus.hpp"
#include "mte/report.hpp"
#include "mte/spec.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mte {

/// A three-field lexicon line: word-form, lemma, MSD.
struct LexiconEntry {
    std::string word_form;
    std::string lemma;
    std::string msd;
    friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct Lexicon {
    std::string language;
    std::vector<LexiconEntry> entries;
    friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

struct LexiconOptions {
    char separator = '\t';
    bool space_runs = false;        // historic MULTEXT lexicons use space runs
    bool equals_shorthand = false;  // '=' copies the other field
};

Lexicon load_lexicon(std::istream& in, const std::string& language,
                     const LexiconOptions& options = {});
Lexicon load_lexicon_file(const std::string& path, const std::string& language,
                          const LexiconOptions& options = {});

/// MSD validity per entry, duplicate triples, and MSDs absent from the
/// language's MSD index (warning) when the spec carries one.
Report validate_lexicon(const Lexicon& lex, const Specification& spec,
                        Ordering ordering = Ordering::particular);

/// One index entry per distinct MSD. With a corpus: token/type counts and
/// up to 10 word/lemma examples by descending token frequency, ties broken
/// by word form; without one, counts absent and examples alphabetical.
std::vector<MsdIndexEntry> build_msd_index(const Lexicon& lex, const Specification& spec,
                                           const AnnotatedCorpus* corpus = nullptr,
                                           Ordering ordering = Ordering::particular);

} // namespace mte

#endif
