#ifndef MTE_SPEC_OPS_HPP
#define MTE_SPEC_OPS_HPP

#include "mte/report.hpp"
#include "mte/spec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mte {

/// Template a language section for a new language out of the common
/// tables: every category, attribute and value flagged for at least one
/// seed language, with particular positions renumbered contiguously in
/// common order. Localisation is left for the author to fill in.
LanguageSection split(const Specification& spec, const std::vector<std::string>& seed_languages,
                      const std::string& new_language);

struct MergeResult {
    Specification spec;
    Report warnings;
};

/// Fold a language section back into the common tables: flags the
/// section's language on matching attribute-value pairs, appends unknown
/// attributes/values with a warning, and attaches the section. A value
/// code bound to a different value name within one attribute is an error.
MergeResult merge(const Specification& spec, const LanguageSection& section);

/// Structured change report between two specifications. Record kinds:
/// ADDED, REMOVED, CHANGED; paths are slash-joined object paths.
Report diff(const Specification& a, const Specification& b);

struct FeatureEntry {
    std::string id;          // "N0." for the category, "N1.c" for a value
    std::string attr_name;   // "CATEGORY" for the category entry
    std::string value_name;
    friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

struct FeatureValueEntry {
    std::string msd;                       // identifier = the MSD text
    std::vector<std::string> feature_ids;  // ascending position order
    friend bool operator==(const FeatureValueEntry&, const FeatureValueEntry&) = default;
};

struct FeatureLibraries {
    std::string language;
    std::vector<FeatureEntry> features;
    std::vector<FeatureValueEntry> values;
    friend bool operator==(const FeatureLibraries&, const FeatureLibraries&) = default;
};

/// fLib/fvLib content for a set of MSDs. One feature entry per distinct
/// (category, position, value) used; one feature-value entry per distinct
/// MSD, in first-seen order.
FeatureLibraries emit_feature_libraries(const Specification& spec, const std::string& language,
                                        const std::vector<std::string>& msds, Ordering ordering);

/// TEI-subset rendering: <fLib> then <fvLib>.
std::string feature_libraries_to_xml(const FeatureLibraries& libs);

/// Deterministic plain-text report: category/attribute/value indexes, one
/// language section (or all), MSD index rows with verbose expansions, and
/// a warnings section when validate_spec finds any.
std::string render_report(const Specification& spec,
                          const std::optional<std::string>& language = std::nullopt);

} // namespace mte

#endif
