#ifndef MTE_SPEC_HPP
#define MTE_SPEC_HPP

#include "mte/report.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mte {

enum class Ordering { common, particular };

/// A localised (translated) name and its one-character code.
struct Localised {
    std::string name;
    std::string code;

    friend bool operator==(const Localised&, const Localised&) = default;
};

/// One value of an attribute, with the languages it is flagged for.
struct AttrValue {
    std::string name;
    std::string code;                      // single code point, never "-"
    std::vector<std::string> languages;    // lowercase, sorted, non-empty

    bool flagged(std::string_view lang) const;

    friend bool operator==(const AttrValue&, const AttrValue&) = default;
};

struct Attribute {
    std::string name;
    int common_position = 0;               // > 0; 0 is the category itself
    std::vector<AttrValue> values;         // spec order (= collation order)

    const AttrValue* value_by_code(std::string_view code) const;
    const AttrValue* value_by_name(std::string_view name) const;
    /// Index of a value in spec order, or -1.
    int value_rank(std::string_view code) const;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Category {
    std::string code;                      // single uppercase letter
    std::string name;
    std::vector<Attribute> attributes;     // ascending common position

    const Attribute* attribute_at(int common_position) const;
    const Attribute* attribute_by_name(std::string_view name) const;
    Attribute* attribute_by_name(std::string_view name);
    int max_common_position() const;

    friend bool operator==(const Category&, const Category&) = default;
};

/// A value row inside a language-particular table. Carries its own name so
/// a standalone section can introduce values unknown to the common tables
/// (merge reports those).
struct ParticularValue {
    std::string code;
    std::string name;
    std::optional<Localised> localised;

    friend bool operator==(const ParticularValue&, const ParticularValue&) = default;
};

struct ParticularAttribute {
    std::string name;
    int position = 0;                      // particular MSD position, > 0
    std::optional<std::string> localised_name;
    std::vector<ParticularValue> values;

    const ParticularValue* value_by_code(std::string_view code) const;
    const ParticularValue* value_by_localised_code(std::string_view code) const;

    friend bool operator==(const ParticularAttribute&, const ParticularAttribute&) = default;
};

struct ParticularTable {
    std::string category_code;             // common (English) category code
    std::optional<Localised> localised;    // localised category name/code
    std::vector<ParticularAttribute> attributes;  // ascending position

    const ParticularAttribute* at(int position) const;
    const ParticularAttribute* by_name(std::string_view name) const;
    ParticularAttribute* by_name(std::string_view name);
    int max_position() const;

    friend bool operator==(const ParticularTable&, const ParticularTable&) = default;
};

struct MsdIndexEntry {
    std::string msd;
    std::optional<std::string> verbose;            // English expansion
    std::optional<std::string> msd_localised;
    std::optional<std::string> verbose_localised;
    std::optional<long> token_count;
    std::optional<long> type_count;
    std::vector<std::pair<std::string, std::string>> examples;  // word-form/lemma

    friend bool operator==(const MsdIndexEntry&, const MsdIndexEntry&) = default;
};

struct LanguageSection {
    std::string language;                  // lowercase two-letter code
    std::vector<ParticularTable> tables;   // common category order
    std::vector<MsdIndexEntry> msd_index;
    std::vector<std::string> constraints;  // preserved verbatim, not evaluated

    const ParticularTable* table(std::string_view category_code) const;
    ParticularTable* table(std::string_view category_code);
    const ParticularTable* table_by_localised_code(std::string_view code) const;

    friend bool operator==(const LanguageSection&, const LanguageSection&) = default;
};

struct Specification {
    std::vector<Category> categories;      // order defines collation rank
    std::vector<std::string> languages;    // sorted, lowercase
    std::map<std::string, LanguageSection> sections;

    const Category* category(std::string_view code) const;
    Category* category(std::string_view code);
    int category_rank(std::string_view code) const;  // -1 when unknown
    const LanguageSection* section(std::string_view language) const;
    bool has_language(std::string_view language) const;

    /// Languages using a category: any value flagged for the language, or
    /// the language's particular section declares the category (possibly
    /// with an empty attribute table, as the Slovene Particle).
    std::vector<std::string> category_languages(std::string_view category_code) const;

    friend bool operator==(const Specification&, const Specification&) = default;
};

enum class SpecFormat { tabular, tei };

Specification load_spec(std::istream& in, SpecFormat format);
Specification load_spec(const std::string& content, SpecFormat format);
Specification load_spec_file(const std::string& path, SpecFormat format);
void emit_spec(std::ostream& out, const Specification& spec, SpecFormat format);
std::string emit_spec(const Specification& spec, SpecFormat format);

/// A standalone language section in the tabular format (one LANG-SECTION
/// block), as produced by split and consumed by merge.
LanguageSection load_language_section(const std::string& content);
std::string emit_language_section(const LanguageSection& section);

/// A bare MSD index: tabular MSD rows, or the TEI table form.
std::string emit_msd_index(const std::vector<MsdIndexEntry>& index, SpecFormat format,
                           const std::string& language = "");

struct CategoryStats {
    std::string code;
    std::string name;
    int attribute_count = 0;
    int value_count = 0;      // distinct attribute-value entries
    int language_count = 0;

    friend bool operator==(const CategoryStats&, const CategoryStats&) = default;
};

std::vector<CategoryStats> spec_stats(const Specification& spec);

/// Attribute occupying an MSD position under the chosen ordering.
/// Position 0 is the category itself and is rejected here.
const Attribute& lookup(const Specification& spec, const std::string& language,
                        std::string_view category_code, int position, Ordering ordering);

/// Structural checks beyond what loading already enforces: values listed in
/// a particular section but not flagged for the language (warning), gaps in
/// particular positions (warning), missing localisations (warning).
Report validate_spec(const Specification& spec);

/// Enforce the hard invariants; throws Error on violation. Called by the
/// loaders after construction.
void check_spec_invariants(const Specification& spec);

} // namespace mte

#endif
