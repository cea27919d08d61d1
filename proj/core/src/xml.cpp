#include "mte/xml.hpp"

#include "mte/report.hpp"
#include "mte/text.hpp"

#include <cctype>

namespace mte {

const std::string* XmlNode::attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
        if (k == key) return &v;
    return nullptr;
}

const std::string& XmlNode::attr_or(std::string_view key, const std::string& fallback) const {
    const std::string* v = attr(key);
    return v ? *v : fallback;
}

const XmlNode* XmlNode::child(std::string_view element_name) const {
    for (const auto& c : children)
        if (c.kind == Kind::element && c.name == element_name) return &c;
    return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(std::string_view element_name) const {
    std::vector<const XmlNode*> out;
    for (const auto& c : children)
        if (c.kind == Kind::element && c.name == element_name) out.push_back(&c);
    return out;
}

std::string XmlNode::text() const {
    std::string out;
    for (const auto& c : children)
        if (c.kind == Kind::text) out += c.content;
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view doc) : s_(doc) {}

    XmlNode parse_document() {
        skip_prolog();
        XmlNode root = parse_element();
        skip_ws();
        if (pos_ < s_.size()) fail("trailing content after root element");
        return root;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        size_t line = 1;
        for (size_t i = 0; i < pos_ && i < s_.size(); ++i)
            if (s_[i] == '\n') ++line;
        throw Error("xml:" + std::to_string(line), msg);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool eof() const { return pos_ >= s_.size(); }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(std::string_view lit) {
        if (s_.substr(pos_, lit.size()) == lit) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    void skip_prolog() {
        skip_ws();
        if (consume("<?")) {
            size_t end = s_.find("?>", pos_);
            if (end == std::string_view::npos) fail("unterminated XML declaration");
            pos_ = end + 2;
            skip_ws();
        }
        while (consume("<!--")) {
            size_t end = s_.find("-->", pos_);
            if (end == std::string_view::npos) fail("unterminated comment");
            pos_ = end + 3;
            skip_ws();
        }
    }

    std::string parse_name() {
        size_t start = pos_;
        while (!eof()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' ||
                c == '-' || c == '.')
                ++pos_;
            else
                break;
        }
        if (pos_ == start) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string unescape(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            size_t semi = raw.find(';', i);
            if (semi == std::string_view::npos) fail("unterminated entity reference");
            std::string_view ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else fail("unknown entity &" + std::string(ent) + ";");
            i = semi + 1;
        }
        return out;
    }

    XmlNode parse_element() {
        if (!consume("<")) fail("expected '<'");
        XmlNode node;
        node.name = parse_name();
        while (true) {
            skip_ws();
            if (consume("/>")) return node;
            if (consume(">")) break;
            std::string key = parse_name();
            skip_ws();
            if (!consume("=")) fail("expected '=' in attribute");
            skip_ws();
            char quote = peek();
            if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
            ++pos_;
            size_t end = s_.find(quote, pos_);
            if (end == std::string_view::npos) fail("unterminated attribute value");
            node.attrs.emplace_back(std::move(key), unescape(s_.substr(pos_, end - pos_)));
            pos_ = end + 1;
        }
        // children until matching close tag
        while (true) {
            if (eof()) fail("unterminated element <" + node.name + ">");
            if (consume("</")) {
                std::string close = parse_name();
                if (close != node.name)
                    fail("mismatched close tag </" + close + "> for <" + node.name + ">");
                skip_ws();
                if (!consume(">")) fail("malformed close tag");
                return node;
            }
            if (consume("<!--")) {
                size_t end = s_.find("-->", pos_);
                if (end == std::string_view::npos) fail("unterminated comment");
                XmlNode c;
                c.kind = XmlNode::Kind::comment;
                c.content = std::string(s_.substr(pos_, end - pos_));
                node.children.push_back(std::move(c));
                pos_ = end + 3;
                continue;
            }
            if (peek() == '<') {
                node.children.push_back(parse_element());
                continue;
            }
            size_t end = s_.find('<', pos_);
            if (end == std::string_view::npos) fail("text outside element");
            std::string_view raw = s_.substr(pos_, end - pos_);
            pos_ = end;
            if (trim(raw).empty()) continue; // inter-element whitespace
            XmlNode t;
            t.kind = XmlNode::Kind::text;
            t.content = unescape(raw);
            node.children.push_back(std::move(t));
        }
    }
};

bool text_only(const XmlNode& n) {
    for (const auto& c : n.children)
        if (c.kind != XmlNode::Kind::text) return false;
    return true;
}

void serialize(std::string& out, const XmlNode& n, int depth, int step) {
    std::string pad(static_cast<size_t>(depth * step), ' ');
    switch (n.kind) {
    case XmlNode::Kind::text:
        out += pad + xml_escape(n.content) + "\n";
        return;
    case XmlNode::Kind::comment:
        out += pad + "<!--" + n.content + "-->\n";
        return;
    case XmlNode::Kind::element:
        break;
    }
    out += pad + "<" + n.name;
    for (const auto& [k, v] : n.attrs)
        out += " " + k + "=\"" + xml_escape(v) + "\"";
    if (n.children.empty()) {
        out += "/>\n";
        return;
    }
    if (text_only(n)) {
        out += ">";
        for (const auto& c : n.children) out += xml_escape(c.content);
        out += "</" + n.name + ">\n";
        return;
    }
    out += ">\n";
    for (const auto& c : n.children) serialize(out, c, depth + 1, step);
    out += pad + "</" + n.name + ">\n";
}

} // namespace

XmlNode xml_parse(std::string_view doc) {
    return Parser(doc).parse_document();
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c; break;
        }
    }
    return out;
}

std::string xml_serialize(const XmlNode& root, int indent_step) {
    std::string out;
    serialize(out, root, 0, indent_step);
    return out;
}

} // namespace mte
