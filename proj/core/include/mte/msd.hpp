#ifndef MTE_MSD_HPP
#define MTE_MSD_HPP

#include "mte/spec.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mte {

/// Logical form of one word analysis: a category plus the instantiated
/// attribute-value assignments. Absence of an attribute encodes
/// non-applicability; the pseudo-value "0" of canonical expansions is a
/// rendering artefact and is never stored here.
struct FeatureStructure {
    std::string language;
    std::string category_code;                     // common (English) code
    std::map<std::string, std::string> assignments;  // attribute name -> value name

    friend bool operator==(const FeatureStructure&, const FeatureStructure&) = default;
};

/// An MSD string together with the context needed to interpret it. A bare
/// string is ambiguous between common and particular readings; the context
/// is always explicit, never guessed.
struct Msd {
    std::string text;
    std::string language;
    Ordering ordering = Ordering::particular;
    bool localised = false;

    friend bool operator==(const Msd&, const Msd&) = default;
};

/// canonical rejects trailing hyphens and over-long strings; lenient
/// accepts both (legacy MULTEXT style) and normalises.
enum class DecodeMode { canonical, lenient };

FeatureStructure decode(const Msd& msd, const Specification& spec,
                        DecodeMode mode = DecodeMode::canonical);

Msd encode(const FeatureStructure& fs, const Specification& spec, Ordering ordering,
           bool localise = false);

/// Switch the surface codes between English and native localisation;
/// decode(relocalise(m)) == decode(m).
enum class Localisation { english, native };
Msd relocalise(const Msd& msd, const Specification& spec, Localisation target);

enum class ExpandForm {
    minimal,             // instantiated features only, English
    minimal_localised,   // instantiated features, localised names
    canonical_language,  // every attribute defined for the language, "0" when unset
    canonical_universal, // every attribute defined anywhere (untyped union view)
    verbose_string       // the MSD-index rendering (same as minimal)
};

/// Space-separated `Category Attr=value ...` rendering. Features are listed
/// in the language's particular attribute order when the language declares
/// the category, else in common order.
std::string expand(const Msd& msd, const Specification& spec, ExpandForm form);

/// Sort key: category rank in the spec, then position by position the rank
/// of the value in its attribute's value list, unassigned before all codes.
std::vector<uint32_t> collation_key(const Msd& msd, const Specification& spec);

struct MsdCheck {
    std::string msd;
    bool valid = false;
    std::string reason;      // empty when valid
    std::string normalised;  // canonical form (lenient mode only, when it differs)

    friend bool operator==(const MsdCheck&, const MsdCheck&) = default;
};

std::vector<MsdCheck> validate_msd_list(const std::vector<std::string>& msds,
                                        const Specification& spec, const std::string& language,
                                        Ordering ordering,
                                        DecodeMode mode = DecodeMode::canonical);

} // namespace mte

#endif
