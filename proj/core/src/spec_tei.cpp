#include "mte/spec.hpp"
#include "mte/text.hpp"
#include "mte/xml.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

// TEI table-row serialisation of a specification. The element and role
// inventory is the one used by the MULTEXT-East resource files:
// table/row/cell with @role in {type, attribute, value, msd, position,
// name, code, lang, verbose}, @xml:lang on localised cells and @select on
// language-particular divs/tables.

namespace mte {

Specification load_spec_tabular(std::istream&);
void emit_spec_tabular(std::ostream&, const Specification&);

namespace {

const std::string kEmpty;

std::string cell_role(const XmlNode& cell) {
    return cell.attr_or("role", kEmpty);
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw Error("tei/" + where, msg);
}

// ---- emission ----------------------------------------------------------

XmlNode cell(const std::string& role, const std::string& text) {
    XmlNode c = XmlNode::element("cell");
    if (!role.empty()) c.set("role", role);
    if (!text.empty()) c.add_text(text);
    return c;
}

XmlNode cell_lang(const std::string& role, const std::string& lang, const std::string& text) {
    XmlNode c = XmlNode::element("cell");
    c.set("role", role);
    c.set("xml:lang", lang);
    if (!text.empty()) c.add_text(text);
    return c;
}

XmlNode common_category_table(const Category& cat) {
    XmlNode table = XmlNode::element("table");
    table.set("n", "msd.cat");
    table.set("xml:id", "msd.cat." + cat.code);
    XmlNode head = XmlNode::element("head");
    head.add_text(cat.name);
    table.children.push_back(std::move(head));

    XmlNode type_row = XmlNode::element("row");
    type_row.set("role", "type");
    type_row.children.push_back(cell("position", "0"));
    type_row.children.push_back(cell("name", "CATEGORY"));
    type_row.children.push_back(cell("value", cat.name));
    type_row.children.push_back(cell("code", cat.code));
    table.children.push_back(std::move(type_row));

    for (const auto& a : cat.attributes) {
        XmlNode row = XmlNode::element("row");
        row.set("role", "attribute");
        row.children.push_back(cell("position", std::to_string(a.common_position)));
        row.children.push_back(cell("name", a.name));
        XmlNode holder = XmlNode::element("cell");
        XmlNode inner = XmlNode::element("table");
        for (const auto& v : a.values) {
            XmlNode vrow = XmlNode::element("row");
            vrow.set("role", "value");
            vrow.children.push_back(cell("name", v.name));
            vrow.children.push_back(cell("code", v.code));
            for (const auto& l : v.languages) vrow.children.push_back(cell("lang", l));
            inner.children.push_back(std::move(vrow));
        }
        holder.children.push_back(std::move(inner));
        row.children.push_back(std::move(holder));
        table.children.push_back(std::move(row));
    }
    return table;
}

XmlNode particular_category_table(const Specification& spec, const LanguageSection& sec,
                                  const ParticularTable& t) {
    const Category* cat = spec.category(t.category_code);
    XmlNode table = XmlNode::element("table");
    table.set("n", "msd.cat");
    table.set("select", sec.language);
    table.set("xml:id", "msd.cat." + t.category_code + "-" + sec.language);

    XmlNode type_row = XmlNode::element("row");
    type_row.set("role", "type");
    type_row.children.push_back(cell("position", "0"));
    if (t.localised) {
        type_row.children.push_back(cell_lang("value", sec.language, t.localised->name));
        type_row.children.push_back(cell_lang("code", sec.language, t.localised->code));
    }
    type_row.children.push_back(cell_lang("name", "en", "CATEGORY"));
    type_row.children.push_back(cell_lang("value", "en", cat ? cat->name : std::string()));
    type_row.children.push_back(cell_lang("code", "en", t.category_code));
    table.children.push_back(std::move(type_row));

    for (const auto& pa : t.attributes) {
        XmlNode row = XmlNode::element("row");
        row.set("role", "attribute");
        row.children.push_back(cell("position", std::to_string(pa.position)));
        row.children.push_back(cell_lang("name", "en", pa.name));
        if (pa.localised_name)
            row.children.push_back(cell_lang("name", sec.language, *pa.localised_name));
        XmlNode holder = XmlNode::element("cell");
        XmlNode inner = XmlNode::element("table");
        for (const auto& pv : pa.values) {
            XmlNode vrow = XmlNode::element("row");
            vrow.set("role", "value");
            vrow.children.push_back(cell_lang("name", "en", pv.name));
            vrow.children.push_back(cell_lang("code", "en", pv.code));
            if (pv.localised) {
                vrow.children.push_back(cell_lang("name", sec.language, pv.localised->name));
                vrow.children.push_back(cell_lang("code", sec.language, pv.localised->code));
            }
            inner.children.push_back(std::move(vrow));
        }
        holder.children.push_back(std::move(inner));
        row.children.push_back(std::move(holder));
        table.children.push_back(std::move(row));
    }
    return table;
}

XmlNode msd_index_table(const LanguageSection& sec) {
    XmlNode table = XmlNode::element("table");
    table.set("n", "msd.msds");
    table.set("select", sec.language);
    table.set("xml:id", "msd.msds-" + sec.language);
    for (const auto& e : sec.msd_index) {
        XmlNode row = XmlNode::element("row");
        row.set("role", "msd");
        row.children.push_back(cell_lang("msd", "en", e.msd));
        if (e.verbose) row.children.push_back(cell_lang("verbose", "en", *e.verbose));
        if (e.msd_localised)
            row.children.push_back(cell_lang("msd", sec.language, *e.msd_localised));
        if (e.verbose_localised)
            row.children.push_back(cell_lang("verbose", sec.language, *e.verbose_localised));
        row.children.push_back(cell("", e.token_count ? std::to_string(*e.token_count) : ""));
        row.children.push_back(cell("", e.type_count ? std::to_string(*e.type_count) : ""));
        if (!e.examples.empty()) {
            std::vector<std::string> parts;
            for (const auto& [wf, lemma] : e.examples) parts.push_back(wf + "/" + lemma);
            row.children.push_back(cell("", join(parts, ", ")));
        }
        table.children.push_back(std::move(row));
    }
    return table;
}

// ---- loading -----------------------------------------------------------

AttrValue load_common_value(const XmlNode& vrow) {
    AttrValue v;
    for (const auto& c : vrow.children_named("cell")) {
        std::string role = cell_role(*c);
        if (role == "name") v.name = c->text();
        else if (role == "code") v.code = c->text();
        else if (role == "lang") v.languages.push_back(to_lower_ascii(trim(c->text())));
        else fail("value-row", "unexpected cell role '" + role + "'");
    }
    if (v.name.empty() || v.code.empty()) fail("value-row", "value row lacks name or code cell");
    std::sort(v.languages.begin(), v.languages.end());
    v.languages.erase(std::unique(v.languages.begin(), v.languages.end()), v.languages.end());
    return v;
}

int parse_position(const XmlNode& c) {
    std::string t(trim(c.text()));
    try {
        return std::stoi(t);
    } catch (...) {
        fail("row", "non-numeric position cell '" + t + "'");
    }
}

void load_common_table(Specification& spec, const XmlNode& table) {
    Category cat;
    for (const auto& row : table.children_named("row")) {
        std::string role = row->attr_or("role", kEmpty);
        if (role == "type") {
            for (const auto& c : row->children_named("cell")) {
                std::string r = cell_role(*c);
                if (r == "value") cat.name = c->text();
                else if (r == "code") cat.code = c->text();
            }
        } else if (role == "attribute") {
            Attribute a;
            for (const auto& c : row->children_named("cell")) {
                std::string r = cell_role(*c);
                if (r == "position") a.common_position = parse_position(*c);
                else if (r == "name") a.name = c->text();
                else if (r.empty()) {
                    const XmlNode* inner = c->child("table");
                    if (!inner) fail("attribute-row", "expected nested value table");
                    for (const auto& vrow : inner->children_named("row")) {
                        if (vrow->attr_or("role", kEmpty) != "value")
                            fail("value-table", "expected row role 'value'");
                        a.values.push_back(load_common_value(*vrow));
                    }
                } else {
                    fail("attribute-row", "unexpected cell role '" + r + "'");
                }
            }
            cat.attributes.push_back(std::move(a));
        } else {
            fail("common-table", "unexpected row role '" + role + "'");
        }
    }
    if (cat.code.empty()) {
        // fall back to head text / xml:id when there is no type row
        fail("common-table", "category table lacks a type row with a code cell");
    }
    std::sort(cat.attributes.begin(), cat.attributes.end(),
              [](const Attribute& x, const Attribute& y) {
                  return x.common_position < y.common_position;
              });
    spec.categories.push_back(std::move(cat));
}

ParticularValue load_particular_value(const XmlNode& vrow, const std::string& lang) {
    ParticularValue pv;
    Localised loc;
    for (const auto& c : vrow.children_named("cell")) {
        std::string role = cell_role(*c);
        std::string clang = to_lower_ascii(c->attr_or("xml:lang", "en"));
        if (role == "name") {
            if (clang == "en") pv.name = c->text();
            else if (clang == lang) loc.name = c->text();
        } else if (role == "code") {
            if (clang == "en") pv.code = c->text();
            else if (clang == lang) loc.code = c->text();
        }
    }
    if (!loc.name.empty() || !loc.code.empty()) pv.localised = loc;
    return pv;
}

void load_particular_table(LanguageSection& sec, const XmlNode& table) {
    ParticularTable t;
    for (const auto& row : table.children_named("row")) {
        std::string role = row->attr_or("role", kEmpty);
        if (role == "type") {
            Localised loc;
            for (const auto& c : row->children_named("cell")) {
                std::string r = cell_role(*c);
                std::string clang = to_lower_ascii(c->attr_or("xml:lang", "en"));
                if (r == "code" && clang == "en") t.category_code = c->text();
                else if (sec.language == "en") continue; // no separate localisation
                else if (r == "value" && clang == sec.language) loc.name = c->text();
                else if (r == "code" && clang == sec.language) loc.code = c->text();
            }
            if (!loc.name.empty() || !loc.code.empty()) t.localised = loc;
        } else if (role == "attribute") {
            ParticularAttribute pa;
            for (const auto& c : row->children_named("cell")) {
                std::string r = cell_role(*c);
                std::string clang = to_lower_ascii(c->attr_or("xml:lang", "en"));
                if (r == "position") pa.position = parse_position(*c);
                else if (r == "name" && clang == "en") pa.name = c->text();
                else if (r == "name" && clang == sec.language && sec.language != "en")
                    pa.localised_name = c->text();
                else if (r.empty()) {
                    const XmlNode* inner = c->child("table");
                    if (!inner) fail("attribute-row", "expected nested value table");
                    for (const auto& vrow : inner->children_named("row"))
                        pa.values.push_back(load_particular_value(*vrow, sec.language));
                }
            }
            t.attributes.push_back(std::move(pa));
        }
    }
    if (t.category_code.empty())
        fail("particular-table", "table lacks an English category code cell");
    std::sort(t.attributes.begin(), t.attributes.end(),
              [](const ParticularAttribute& x, const ParticularAttribute& y) {
                  return x.position < y.position;
              });
    sec.tables.push_back(std::move(t));
}

bool numeric_or_empty(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void load_msd_index(LanguageSection& sec, const XmlNode& table) {
    for (const auto& row : table.children_named("row")) {
        if (row->attr_or("role", kEmpty) != "msd") fail("msd-index", "expected row role 'msd'");
        MsdIndexEntry e;
        std::vector<std::string> plain;
        for (const auto& c : row->children_named("cell")) {
            std::string role = cell_role(*c);
            std::string clang = to_lower_ascii(c->attr_or("xml:lang", "en"));
            std::string text(trim(c->text()));
            if (role == "msd") {
                if (clang == "en") e.msd = text;
                else e.msd_localised = text;
            } else if (role == "verbose") {
                if (clang == "en") e.verbose = text;
                else e.verbose_localised = text;
            } else if (role.empty()) {
                plain.push_back(text);
            }
        }
        for (size_t i = 0; i < plain.size(); ++i) {
            if (i < 2 && numeric_or_empty(plain[i])) {
                if (!plain[i].empty()) {
                    long n = std::stol(plain[i]);
                    (i == 0 ? e.token_count : e.type_count) = n;
                }
            } else {
                for (const auto& ex : split(plain[i], ',')) {
                    std::string item(trim(ex));
                    if (item.empty()) continue;
                    auto slash = item.find('/');
                    if (slash == std::string::npos)
                        fail("msd-index", "example '" + item + "' lacks wf/lemma slash");
                    e.examples.emplace_back(item.substr(0, slash), item.substr(slash + 1));
                }
            }
        }
        sec.msd_index.push_back(std::move(e));
    }
}

} // namespace

Specification load_spec_tei(std::istream& in) {
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    XmlNode root = xml_parse(content);
    Specification spec;
    std::set<std::string> languages;

    auto handle_section = [&](const XmlNode& div) {
        const std::string* select = div.attr("select");
        if (!select) {
            for (const auto& table : div.children_named("table"))
                load_common_table(spec, *table);
            return;
        }
        std::string lang = to_lower_ascii(*select);
        auto [it, inserted] = spec.sections.try_emplace(lang);
        if (!inserted) fail("section", "duplicate language section " + lang);
        LanguageSection& sec = it->second;
        sec.language = lang;
        languages.insert(lang);
        for (const auto& table : div.children_named("table")) {
            if (table->attr_or("n", kEmpty) == "msd.msds") load_msd_index(sec, *table);
            else load_particular_table(sec, *table);
        }
        for (const auto& note : div.children_named("note"))
            if (note->attr_or("type", kEmpty) == "constraint")
                sec.constraints.push_back(note->text());
    };

    if (root.name == "div" && root.attr_or("type", kEmpty) == "section") {
        handle_section(root);
    } else {
        for (const auto& div : root.children_named("div")) handle_section(*div);
    }

    for (const auto& cat : spec.categories)
        for (const auto& a : cat.attributes)
            for (const auto& v : a.values) languages.insert(v.languages.begin(), v.languages.end());
    for (const auto& [lang, sec] : spec.sections) languages.insert(lang);
    spec.languages.assign(languages.begin(), languages.end());
    check_spec_invariants(spec);
    return spec;
}

void emit_spec_tei(std::ostream& out, const Specification& spec) {
    XmlNode root = XmlNode::element("div");
    root.set("type", "specifications");
    root.set("xml:id", "msd");

    XmlNode common = XmlNode::element("div");
    common.set("type", "section");
    common.set("xml:id", "msd.common");
    for (const auto& cat : spec.categories)
        common.children.push_back(common_category_table(cat));
    root.children.push_back(std::move(common));

    for (const auto& [lang, sec] : spec.sections) {
        XmlNode div = XmlNode::element("div");
        div.set("type", "section");
        div.set("select", lang);
        div.set("xml:id", "msd." + lang);
        for (const auto& t : sec.tables)
            div.children.push_back(particular_category_table(spec, sec, t));
        if (!sec.msd_index.empty()) div.children.push_back(msd_index_table(sec));
        for (const auto& c : sec.constraints) {
            XmlNode note = XmlNode::element("note");
            note.set("type", "constraint");
            note.add_text(c);
            div.children.push_back(std::move(note));
        }
        root.children.push_back(std::move(div));
    }
    out << xml_serialize(root);
}

std::string emit_msd_index(const std::vector<MsdIndexEntry>& index, SpecFormat format,
                           const std::string& language) {
    if (format == SpecFormat::tei) {
        LanguageSection holder;
        holder.language = language;
        holder.msd_index = index;
        return xml_serialize(msd_index_table(holder));
    }
    std::ostringstream out;
    for (const auto& e : index) {
        out << "MSD " << e.msd << " "
            << (e.token_count ? std::to_string(*e.token_count) : "-") << " "
            << (e.type_count ? std::to_string(*e.type_count) : "-");
        if (!e.examples.empty()) {
            out << " ";
            for (size_t i = 0; i < e.examples.size(); ++i) {
                if (i) out << ",";
                out << e.examples[i].first << "/" << e.examples[i].second;
            }
        }
        out << "\n";
    }
    return out.str();
}

Specification load_spec(std::istream& in, SpecFormat format) {
    return format == SpecFormat::tabular ? load_spec_tabular(in) : load_spec_tei(in);
}

void emit_spec(std::ostream& out, const Specification& spec, SpecFormat format) {
    if (format == SpecFormat::tabular) emit_spec_tabular(out, spec);
    else emit_spec_tei(out, spec);
}

} // namespace mte
