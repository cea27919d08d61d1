#ifndef MTE_XML_HPP
#define MTE_XML_HPP

#include <string>
#include <string_view>
#include <vector>

namespace mte {

/// Minimal XML reader/writer for the TEI subsets this toolkit handles
/// (elements, ordered attributes, text, comments). Comments are kept as
/// nodes: alignment files carry commented-out null-links that must survive
/// a round trip.
struct XmlNode {
    enum class Kind { element, text, comment };

    Kind kind = Kind::element;
    std::string name;                                        // element only
    std::vector<std::pair<std::string, std::string>> attrs;  // document order
    std::string content;                                     // text/comment
    std::vector<XmlNode> children;

    const std::string* attr(std::string_view key) const;
    const std::string& attr_or(std::string_view key, const std::string& fallback) const;
    const XmlNode* child(std::string_view element_name) const;
    std::vector<const XmlNode*> children_named(std::string_view element_name) const;
    /// Concatenated text content of this element (non-recursive).
    std::string text() const;

    static XmlNode element(std::string name) {
        XmlNode n;
        n.name = std::move(name);
        return n;
    }
    XmlNode& set(std::string key, std::string value) {
        attrs.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    XmlNode& add_text(std::string t) {
        XmlNode n;
        n.kind = Kind::text;
        n.content = std::move(t);
        children.push_back(std::move(n));
        return *this;
    }
};

/// Parse a document; returns the root element. Skips an XML declaration and
/// whitespace outside the root. Throws Error with a line number on
/// malformed input.
XmlNode xml_parse(std::string_view doc);

std::string xml_escape(std::string_view s);

/// Pretty serialisation: one element per line, `indent_step` spaces per
/// level; elements whose children are only text are written inline.
std::string xml_serialize(const XmlNode& root, int indent_step = 1);

} // namespace mte

#endif
