#include "mte/spec.hpp"
#include "mte/text.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

// Canonical tabular authoring format. UTF-8, LF, '#' comments, fields
// whitespace-separated (multi-word names use underscores, as in the
// MULTEXT-East resources themselves):
//
//   CATEGORY <code> <name>
//   ATTR <position> <name>
//   VAL <code> <name> <lang>[,<lang>...]
//   LANG-SECTION <lang>
//   CAT <code> <localised-name> <localised-code>
//   ATTR <particular-position> <name> [<localised-name>]
//   VAL <code> <name> [<localised-name> <localised-code>]
//   MSD <msd> <token-count|-> <type-count|-> [<wf>/<lemma>,...]
//   CONSTRAINT <free text>

namespace mte {

namespace {

struct TabularParser {
    Specification spec;
    std::set<std::string> languages;

    Category* cur_cat = nullptr;
    Attribute* cur_attr = nullptr;
    LanguageSection* cur_section = nullptr;
    ParticularTable* cur_table = nullptr;
    ParticularAttribute* cur_pattr = nullptr;

    int lineno = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("line " + std::to_string(lineno), msg);
    }

    void require(bool cond, const std::string& msg) const {
        if (!cond) fail(msg);
    }

    void handle(const std::string& raw) {
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') return;
        auto fields = split_ws(line);
        const std::string& kw = fields[0];
        if (kw == "CATEGORY") {
            require(fields.size() == 3, "CATEGORY expects <code> <name>");
            Category cat;
            cat.code = fields[1];
            cat.name = fields[2];
            spec.categories.push_back(std::move(cat));
            cur_cat = &spec.categories.back();
            cur_attr = nullptr;
            cur_section = nullptr;
            cur_table = nullptr;
            cur_pattr = nullptr;
        } else if (kw == "LANG-SECTION") {
            require(fields.size() == 2, "LANG-SECTION expects <lang>");
            std::string lang = to_lower_ascii(fields[1]);
            auto [it, inserted] = spec.sections.try_emplace(lang);
            require(inserted, "duplicate LANG-SECTION " + lang);
            it->second.language = lang;
            languages.insert(lang);
            cur_section = &it->second;
            cur_cat = nullptr;
            cur_attr = nullptr;
            cur_table = nullptr;
            cur_pattr = nullptr;
        } else if (kw == "CAT") {
            require(cur_section != nullptr, "CAT outside LANG-SECTION");
            require(fields.size() == 4, "CAT expects <code> <localised-name> <localised-code>");
            ParticularTable table;
            table.category_code = fields[1];
            if (fields[2] != "-" || fields[3] != "-")
                table.localised = Localised{fields[2], fields[3]};
            for (const auto& t : cur_section->tables)
                require(t.category_code != table.category_code,
                        "duplicate CAT " + table.category_code);
            cur_section->tables.push_back(std::move(table));
            cur_table = &cur_section->tables.back();
            cur_pattr = nullptr;
        } else if (kw == "ATTR") {
            require(fields.size() >= 3, "ATTR expects <position> <name>");
            int pos = 0;
            try {
                pos = std::stoi(fields[1]);
            } catch (...) {
                fail("non-numeric position '" + fields[1] + "'");
            }
            if (cur_section) {
                require(cur_table != nullptr, "ATTR outside CAT in language section");
                require(fields.size() <= 4, "section ATTR expects at most <pos> <name> <localised-name>");
                ParticularAttribute pa;
                pa.position = pos;
                pa.name = fields[2];
                if (fields.size() == 4 && fields[3] != "-") pa.localised_name = fields[3];
                cur_table->attributes.push_back(std::move(pa));
                cur_pattr = &cur_table->attributes.back();
            } else {
                require(cur_cat != nullptr, "ATTR outside CATEGORY");
                require(fields.size() == 3, "ATTR expects <position> <name>");
                Attribute a;
                a.common_position = pos;
                a.name = fields[2];
                cur_cat->attributes.push_back(std::move(a));
                cur_attr = &cur_cat->attributes.back();
            }
        } else if (kw == "VAL") {
            if (cur_section) {
                require(cur_pattr != nullptr, "VAL outside ATTR in language section");
                require(fields.size() == 3 || fields.size() == 5,
                        "section VAL expects <code> <name> [<localised-name> <localised-code>]");
                ParticularValue pv;
                pv.code = fields[1];
                pv.name = fields[2];
                if (fields.size() == 5) pv.localised = Localised{fields[3], fields[4]};
                cur_pattr->values.push_back(std::move(pv));
            } else {
                require(cur_attr != nullptr, "VAL outside ATTR");
                require(fields.size() == 4, "VAL expects <code> <name> <lang>[,...]");
                AttrValue v;
                v.code = fields[1];
                v.name = fields[2];
                for (const auto& l : split(fields[3], ',')) {
                    std::string lang = to_lower_ascii(trim(l));
                    require(!lang.empty(), "empty language code in VAL");
                    v.languages.push_back(lang);
                    languages.insert(lang);
                }
                std::sort(v.languages.begin(), v.languages.end());
                v.languages.erase(std::unique(v.languages.begin(), v.languages.end()),
                                  v.languages.end());
                cur_attr->values.push_back(std::move(v));
            }
        } else if (kw == "MSD") {
            require(cur_section != nullptr, "MSD outside LANG-SECTION");
            require(fields.size() >= 4, "MSD expects <msd> <token-count|-> <type-count|-> [examples]");
            MsdIndexEntry e;
            e.msd = fields[1];
            auto parse_count = [&](const std::string& f) -> std::optional<long> {
                if (f == "-") return std::nullopt;
                try {
                    long n = std::stol(f);
                    require(n >= 0, "negative count in MSD row");
                    return n;
                } catch (const Error&) {
                    throw;
                } catch (...) {
                    fail("non-numeric count '" + f + "' in MSD row");
                }
            };
            e.token_count = parse_count(fields[2]);
            e.type_count = parse_count(fields[3]);
            if (fields.size() == 5) {
                for (const auto& ex : split(fields[4], ',')) {
                    auto slash = ex.find('/');
                    require(slash != std::string::npos, "example '" + ex + "' lacks wf/lemma slash");
                    e.examples.emplace_back(ex.substr(0, slash), ex.substr(slash + 1));
                }
            }
            cur_section->msd_index.push_back(std::move(e));
        } else if (kw == "CONSTRAINT") {
            require(cur_section != nullptr, "CONSTRAINT outside LANG-SECTION");
            std::string text(trim(line.substr(std::string_view("CONSTRAINT").size())));
            cur_section->constraints.push_back(std::move(text));
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }

    Specification finish() {
        spec.languages.assign(languages.begin(), languages.end());
        check_spec_invariants(spec);
        return std::move(spec);
    }
};

void emit_table(std::ostream& out, const ParticularTable& t) {
    out << "CAT " << t.category_code << " ";
    if (t.localised)
        out << t.localised->name << " " << t.localised->code << "\n";
    else
        out << "- -\n";
    for (const auto& pa : t.attributes) {
        out << "ATTR " << pa.position << " " << pa.name;
        if (pa.localised_name) out << " " << *pa.localised_name;
        out << "\n";
        for (const auto& pv : pa.values) {
            out << "VAL " << pv.code << " " << pv.name;
            if (pv.localised) out << " " << pv.localised->name << " " << pv.localised->code;
            out << "\n";
        }
    }
}

void emit_section_body(std::ostream& out, const LanguageSection& sec) {
    out << "LANG-SECTION " << sec.language << "\n";
    for (const auto& t : sec.tables) emit_table(out, t);
    for (const auto& e : sec.msd_index) {
        out << "MSD " << e.msd << " ";
        out << (e.token_count ? std::to_string(*e.token_count) : "-") << " ";
        out << (e.type_count ? std::to_string(*e.type_count) : "-");
        if (!e.examples.empty()) {
            out << " ";
            for (size_t i = 0; i < e.examples.size(); ++i) {
                if (i) out << ",";
                out << e.examples[i].first << "/" << e.examples[i].second;
            }
        }
        out << "\n";
    }
    for (const auto& c : sec.constraints) out << "CONSTRAINT " << c << "\n";
}

} // namespace

Specification load_spec_tabular(std::istream& in) {
    TabularParser p;
    std::string line;
    while (std::getline(in, line)) {
        ++p.lineno;
        p.handle(line);
    }
    return p.finish();
}

void emit_spec_tabular(std::ostream& out, const Specification& spec) {
    for (const auto& cat : spec.categories) {
        out << "CATEGORY " << cat.code << " " << cat.name << "\n";
        for (const auto& a : cat.attributes) {
            out << "ATTR " << a.common_position << " " << a.name << "\n";
            for (const auto& v : a.values)
                out << "VAL " << v.code << " " << v.name << " " << join(v.languages, ",") << "\n";
        }
    }
    for (const auto& [lang, sec] : spec.sections) emit_section_body(out, sec);
}

LanguageSection load_language_section(const std::string& content) {
    // Parsed standalone: keyword grammar of the LANG-SECTION block only.
    TabularParser p;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        ++p.lineno;
        p.handle(line);
    }
    if (p.spec.sections.size() != 1 || !p.spec.categories.empty())
        throw Error("section", "expected exactly one LANG-SECTION block and no common tables");
    return p.spec.sections.begin()->second;
}

std::string emit_language_section(const LanguageSection& section) {
    std::ostringstream out;
    emit_section_body(out, section);
    return out.str();
}

} // namespace mte
