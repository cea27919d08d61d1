#ifndef MTE_ALIGN_HPP
#define MTE_ALIGN_HPP

#include "mte/corpus.hpp"
#include "mte/report.hpp"

#include <string>
#include <vector>

namespace mte {

/// One sentence-alignment link. Slot i holds sentence identifiers from
/// documents[i], in document order. A link with some empty slot is a
/// null-link (m:0 / 0:n); null-links are emitted as XML comments, in the
/// style the resource files use.
struct AlignmentLink {
    std::vector<std::vector<std::string>> targets;  // per slot

    std::vector<int> arity() const;
    std::string arity_string() const;
    bool is_null() const;

    friend bool operator==(const AlignmentLink&, const AlignmentLink&) = default;
};

struct AlignmentGroup {
    std::vector<std::string> documents;  // slot labels, e.g. "oana-mk.xml"
    std::vector<AlignmentLink> links;    // document order; null-links included

    int slot_of(const std::string& document) const;  // -1 when absent

    friend bool operator==(const AlignmentGroup&, const AlignmentGroup&) = default;
};

/// linkGrp parser. Commented-out links (the 0:1 / 1:0 encodings) are
/// parsed into null-links and reported as INFO findings.
AlignmentGroup load_alignment(const std::string& content, Report* findings = nullptr);
AlignmentGroup load_alignment_file(const std::string& path, Report* findings = nullptr);

/// Canonical emission; null-links become comments. A canonical document
/// re-emits byte-identically.
std::string emit_alignment(const AlignmentGroup& group);

/// Sidecar text listing of the group's null-links.
std::string null_link_report(const AlignmentGroup& group);

/// Target resolution, per-slot coverage and cross-slot monotonicity.
/// Corpora are matched to slots positionally; a null pointer skips that
/// slot's checks.
Report validate_alignment(const AlignmentGroup& group,
                          const std::vector<const AnnotatedCorpus*>& corpora);

/// Pairwise composition through the shared hub document: hub sentences are
/// partitioned into the finest blocks containing every source link's
/// hub-side set; each block becomes one x:y link. Hub sentences covered on
/// one side only yield null-links.
AlignmentGroup compose(const AlignmentGroup& hub_to_x, const AlignmentGroup& hub_to_y);

/// Same block construction merged across all groups at once. Output slots:
/// hub first (when include_hub), then the non-hub document of each group
/// in input order.
AlignmentGroup compose_multiway(const std::vector<AlignmentGroup>& hub_groups, bool include_hub);

} // namespace mte

#endif
