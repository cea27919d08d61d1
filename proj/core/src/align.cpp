#include "mte/align.hpp"

#include "mte/text.hpp"
#include "mte/xml.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mte {

std::vector<int> AlignmentLink::arity() const {
    std::vector<int> out;
    out.reserve(targets.size());
    for (const auto& slot : targets) out.push_back(static_cast<int>(slot.size()));
    return out;
}

std::string AlignmentLink::arity_string() const {
    std::vector<std::string> parts;
    for (const auto& slot : targets) parts.push_back(std::to_string(slot.size()));
    return join(parts, ":");
}

bool AlignmentLink::is_null() const {
    return std::any_of(targets.begin(), targets.end(),
                       [](const auto& slot) { return slot.empty(); });
}

int AlignmentGroup::slot_of(const std::string& document) const {
    for (size_t i = 0; i < documents.size(); ++i)
        if (documents[i] == document) return static_cast<int>(i);
    return -1;
}

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw Error("alignment", msg);
}

AlignmentLink parse_link(const AlignmentGroup& group, const XmlNode& node) {
    AlignmentLink link;
    link.targets.resize(group.documents.size());
    const std::string* n = node.attr("n");
    const std::string* targets = node.attr("targets");
    if (!n || !targets) fail("<link> needs both n and targets attributes");
    for (const auto& ref : split_ws(*targets)) {
        auto hash = ref.find('#');
        if (hash == std::string::npos)
            fail("target '" + ref + "' is not a fully qualified document#id reference");
        std::string doc = ref.substr(0, hash);
        std::string id = ref.substr(hash + 1);
        int slot = group.slot_of(doc);
        if (slot < 0) fail("target document '" + doc + "' not declared in corresp");
        link.targets[static_cast<size_t>(slot)].push_back(id);
    }
    // arity cross-check against @n
    std::vector<std::string> declared = split(*n, ':');
    if (declared.size() != group.documents.size())
        fail("arity '" + *n + "' has " + std::to_string(declared.size()) + " slots, corresp has " +
             std::to_string(group.documents.size()));
    for (size_t i = 0; i < declared.size(); ++i) {
        int count = 0;
        try {
            count = std::stoi(declared[i]);
        } catch (...) {
            fail("non-numeric arity component '" + declared[i] + "'");
        }
        if (count != static_cast<int>(link.targets[i].size()))
            fail("arity '" + *n + "' does not match targets (slot " + std::to_string(i) +
                 " has " + std::to_string(link.targets[i].size()) + ")");
    }
    return link;
}

void check_slot_uniqueness(const AlignmentGroup& group) {
    for (size_t slot = 0; slot < group.documents.size(); ++slot) {
        std::set<std::string> seen;
        for (const auto& link : group.links)
            for (const auto& id : link.targets[slot])
                if (!seen.insert(id).second)
                    fail("sentence '" + id + "' appears in more than one link in slot " +
                         group.documents[slot]);
    }
}

std::string link_markup(const AlignmentGroup& group, const AlignmentLink& link) {
    std::vector<std::string> refs;
    for (size_t slot = 0; slot < link.targets.size(); ++slot)
        for (const auto& id : link.targets[slot])
            refs.push_back(group.documents[slot] + "#" + id);
    return "link n=\"" + link.arity_string() + "\" targets=\"" + join(refs, " ") + "\"/";
}

} // namespace

AlignmentGroup load_alignment(const std::string& content, Report* findings) {
    XmlNode root = xml_parse(content);
    if (root.name != "linkGrp") fail("root element must be <linkGrp>");
    AlignmentGroup group;
    group.documents = split_ws(root.attr_or("corresp", ""));
    if (group.documents.size() < 2) fail("corresp must name at least two documents");

    for (const auto& child : root.children) {
        if (child.kind == XmlNode::Kind::element) {
            if (child.name != "link") fail("unexpected element <" + child.name + ">");
            group.links.push_back(parse_link(group, child));
            continue;
        }
        if (child.kind != XmlNode::Kind::comment) continue;
        // commented-out null-links ("it is also not possible to encode 1:0
        // and 0:1 alignments" in the element form)
        std::string body(trim(child.content));
        if (!starts_with(body, "link")) continue;
        try {
            XmlNode node = xml_parse("<" + body + ">");
            AlignmentLink link = parse_link(group, node);
            if (!link.is_null()) {
                if (findings)
                    findings->info("comment", "commented link '" + node.attr_or("n", "") +
                                                  "' is not a null-link; ignored");
                continue;
            }
            if (findings)
                findings->info("comment", "null-link " + link.arity_string() + " kept from comment");
            group.links.push_back(std::move(link));
        } catch (const Error&) {
            // unrelated comment, leave it alone
        }
    }
    check_slot_uniqueness(group);
    return group;
}

AlignmentGroup load_alignment_file(const std::string& path, Report* findings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path, "cannot open file");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_alignment(content, findings);
}

std::string emit_alignment(const AlignmentGroup& group) {
    std::string out = "<linkGrp type=\"alignment\" corresp=\"" + join(group.documents, " ") + "\">\n";
    for (const auto& link : group.links) {
        if (link.is_null())
            out += "  <!--" + link_markup(group, link) + "-->\n";
        else
            out += "  <" + link_markup(group, link) + ">\n";
    }
    out += "</linkGrp>\n";
    return out;
}

std::string null_link_report(const AlignmentGroup& group) {
    std::string out;
    for (const auto& link : group.links) {
        if (!link.is_null()) continue;
        std::vector<std::string> refs;
        for (size_t slot = 0; slot < link.targets.size(); ++slot)
            for (const auto& id : link.targets[slot])
                refs.push_back(group.documents[slot] + "#" + id);
        out += "NULL-LINK\t" + link.arity_string() + "\t" + join(refs, " ") + "\n";
    }
    return out;
}

Report validate_alignment(const AlignmentGroup& group,
                          const std::vector<const AnnotatedCorpus*>& corpora) {
    Report report;
    for (size_t slot = 0; slot < group.documents.size(); ++slot) {
        if (slot >= corpora.size() || !corpora[slot]) continue;
        const std::string& doc = group.documents[slot];
        std::vector<std::string> ids = sentence_ids(*corpora[slot]);
        std::set<std::string> known(ids.begin(), ids.end());

        std::set<std::string> aligned;
        for (const auto& link : group.links) {
            bool real = !link.is_null();
            for (const auto& id : link.targets[slot]) {
                if (!known.count(id))
                    report.error(doc + "#" + id, "dangling target: sentence not in corpus");
                if (real) aligned.insert(id);
            }
        }
        for (const auto& id : ids)
            if (!aligned.count(id)) report.info(doc + "#" + id, "unaligned sentence");
    }

    // monotonicity: ordering by one slot must not cross another
    for (size_t i = 0; i < group.documents.size(); ++i) {
        for (size_t j = i + 1; j < group.documents.size(); ++j) {
            std::vector<const AlignmentLink*> both;
            for (const auto& link : group.links)
                if (!link.targets[i].empty() && !link.targets[j].empty()) both.push_back(&link);
            std::sort(both.begin(), both.end(), [&](const AlignmentLink* a, const AlignmentLink* b) {
                return dotted_id_less(a->targets[i].front(), b->targets[i].front());
            });
            for (size_t k = 1; k < both.size(); ++k) {
                if (dotted_id_less(both[k]->targets[j].front(), both[k - 1]->targets[j].front())) {
                    report.warning(group.documents[i] + "/" + group.documents[j],
                                   "crossing links around " + both[k]->targets[j].front());
                }
            }
        }
    }
    return report;
}

namespace {

class UnionFind {
public:
    int make() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

std::string find_hub(const std::vector<AlignmentGroup>& groups) {
    if (groups.empty()) fail("no groups to compose");
    if (groups.size() == 1) {
        if (groups[0].documents.size() != 2) fail("pairwise groups must have two slots");
        return groups[0].documents[0];
    }
    std::vector<std::string> shared = groups[0].documents;
    for (const auto& g : groups) {
        std::vector<std::string> next;
        for (const auto& d : shared)
            if (g.slot_of(d) >= 0) next.push_back(d);
        shared = next;
    }
    if (shared.empty()) fail("groups share no hub document");
    if (shared.size() > 1) fail("hub document is ambiguous: " + join(shared, ", "));
    return shared[0];
}

void sort_links(AlignmentGroup& group) {
    auto first_id = [](const AlignmentLink& link) -> const std::string& {
        for (const auto& slot : link.targets)
            if (!slot.empty()) return slot.front();
        static const std::string empty;
        return empty;
    };
    std::stable_sort(group.links.begin(), group.links.end(),
                     [&](const AlignmentLink& a, const AlignmentLink& b) {
                         return dotted_id_less(first_id(a), first_id(b));
                     });
}

} // namespace

AlignmentGroup compose_multiway(const std::vector<AlignmentGroup>& hub_groups, bool include_hub) {
    std::string hub_doc = find_hub(hub_groups);

    struct Source {
        const AlignmentGroup* group;
        size_t hub_slot;
        size_t other_slot;
    };
    std::vector<Source> sources;
    for (const auto& g : hub_groups) {
        if (g.documents.size() != 2) fail("compose expects pairwise hub groups");
        int hs = g.slot_of(hub_doc);
        if (hs < 0) fail("group lacks the hub document " + hub_doc);
        sources.push_back({&g, static_cast<size_t>(hs), static_cast<size_t>(1 - hs)});
        check_slot_uniqueness(g);
    }

    // union-find over all hub sentences seen anywhere
    std::map<std::string, int> hub_index;
    UnionFind uf;
    auto hub_node = [&](const std::string& id) {
        auto [it, inserted] = hub_index.try_emplace(id, 0);
        if (inserted) it->second = uf.make();
        return it->second;
    };
    for (const auto& src : sources) {
        for (const auto& link : src.group->links) {
            const auto& hub_side = link.targets[src.hub_slot];
            for (size_t k = 0; k + 1 < hub_side.size(); ++k)
                uf.unite(hub_node(hub_side[k]), hub_node(hub_side[k + 1]));
            if (!hub_side.empty()) hub_node(hub_side.front());
        }
    }

    size_t n_out_slots = sources.size() + (include_hub ? 1 : 0);
    size_t hub_out = 0;                       // hub slot index in output
    size_t lang_base = include_hub ? 1 : 0;   // first language slot

    // block representative -> accumulating output link
    std::map<int, AlignmentLink> blocks;
    auto block_for = [&](const std::string& hub_id) -> AlignmentLink& {
        int rep = uf.find(hub_index.at(hub_id));
        auto [it, inserted] = blocks.try_emplace(rep);
        if (inserted) it->second.targets.resize(n_out_slots);
        return it->second;
    };

    for (const auto& entry : hub_index) {
        AlignmentLink& block = block_for(entry.first);
        if (include_hub) block.targets[hub_out].push_back(entry.first);
    }

    std::vector<AlignmentLink> pass_through; // source links with an empty hub side
    for (size_t s = 0; s < sources.size(); ++s) {
        const Source& src = sources[s];
        for (const auto& link : src.group->links) {
            const auto& hub_side = link.targets[src.hub_slot];
            const auto& other = link.targets[src.other_slot];
            if (hub_side.empty()) {
                if (!other.empty()) {
                    AlignmentLink null_link;
                    null_link.targets.resize(n_out_slots);
                    null_link.targets[lang_base + s] = other;
                    pass_through.push_back(std::move(null_link));
                }
                continue;
            }
            AlignmentLink& block = block_for(hub_side.front());
            auto& slot = block.targets[lang_base + s];
            slot.insert(slot.end(), other.begin(), other.end());
        }
    }

    AlignmentGroup out;
    if (include_hub) out.documents.push_back(hub_doc);
    for (const auto& src : sources)
        out.documents.push_back(src.group->documents[src.other_slot]);

    for (auto& [rep, link] : blocks) {
        for (auto& slot : link.targets) {
            std::sort(slot.begin(), slot.end(),
                      [](const std::string& a, const std::string& b) { return dotted_id_less(a, b); });
        }
        bool all_empty = std::all_of(link.targets.begin(), link.targets.end(),
                                     [](const auto& slot) { return slot.empty(); });
        if (!all_empty) out.links.push_back(std::move(link));
    }
    out.links.insert(out.links.end(), pass_through.begin(), pass_through.end());
    sort_links(out);
    return out;
}

AlignmentGroup compose(const AlignmentGroup& hub_to_x, const AlignmentGroup& hub_to_y) {
    return compose_multiway({hub_to_x, hub_to_y}, false);
}

} // namespace mte
