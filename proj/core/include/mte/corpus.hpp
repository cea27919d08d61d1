#ifndef MTE_CORPUS_HPP
#define MTE_CORPUS_HPP

#include "mte/report.hpp"
#include "mte/spec.hpp"
#include "mte/spec_ops.hpp"

#include <map>
#include <string>
#include <vector>

namespace mte {

struct Token {
    enum class Kind { word, punctuation };
    Kind kind = Kind::word;
    std::string surface;
    std::string lemma;    // word tokens only
    std::string msd_ref;  // word tokens only; leading '#' stripped

    friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
    std::string id;
    std::vector<Token> tokens;
    friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Paragraph {
    std::string id;
    std::vector<Sentence> sentences;
    friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

struct Division {
    std::string type;  // "part", "chapter", ...
    std::string id;
    std::vector<Division> divisions;
    std::vector<Paragraph> paragraphs;
    friend bool operator==(const Division&, const Division&) = default;
};

struct FLibEntry {
    std::string name;    // attribute name, "CATEGORY" for category entries
    std::string id;
    std::string lang;
    std::string symbol;  // value name
    friend bool operator==(const FLibEntry&, const FLibEntry&) = default;
};

struct FvLibEntry {
    std::string id;                   // the MSD text
    std::string lang;
    std::vector<std::string> feats;   // '#' stripped
    friend bool operator==(const FvLibEntry&, const FvLibEntry&) = default;
};

struct AnnotatedCorpus {
    std::string text_id;
    std::string language;
    std::vector<Division> divisions;
    bool has_back = false;
    std::vector<FLibEntry> flib;
    std::vector<FvLibEntry> fvlib;

    friend bool operator==(const AnnotatedCorpus&, const AnnotatedCorpus&) = default;
};

enum class CorpusParseMode { permissive, strict };

/// permissive skips unknown elements with a warning into `findings`;
/// strict rejects them.
AnnotatedCorpus load_corpus(const std::string& content, CorpusParseMode mode,
                            Report* findings = nullptr);
AnnotatedCorpus load_corpus_file(const std::string& path, CorpusParseMode mode,
                                 Report* findings = nullptr);

/// Canonical emission: declared subset only, fixed attribute order. For a
/// document already in this form, load followed by emit is byte-identical.
std::string emit_corpus(const AnnotatedCorpus& corpus);

/// Checks msd_ref resolution against the fvLib, fLib reference closure,
/// the identifier hierarchy, and (with a spec) that every fvLib entry's
/// decomposition matches the codec's decode of its identifier.
Report validate_corpus(const AnnotatedCorpus& corpus, const Specification* spec = nullptr);

/// Regenerate back matter from the set of MSDs actually used in the text.
AnnotatedCorpus attach_libraries(AnnotatedCorpus corpus, const Specification& spec,
                                 Ordering ordering = Ordering::particular);

struct CountRow {
    std::string id;
    long words = 0;
    long punctuation = 0;
    long distinct_msds = 0;
    friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct CorpusStats {
    CountRow total;
    std::vector<CountRow> divisions;
    std::vector<CountRow> sentences;
};

CorpusStats corpus_stats(const AnnotatedCorpus& corpus);

/// MSD -> (word-form, lemma) -> token count, for MSD-index building.
std::map<std::string, std::map<std::pair<std::string, std::string>, long>>
msd_usage(const AnnotatedCorpus& corpus);

/// All sentence ids in document order.
std::vector<std::string> sentence_ids(const AnnotatedCorpus& corpus);

} // namespace mte

#endif
