#include "mte/spec.hpp"

#include "mte/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace mte {

bool AttrValue::flagged(std::string_view lang) const {
    return std::find(languages.begin(), languages.end(), lang) != languages.end();
}

const AttrValue* Attribute::value_by_code(std::string_view code) const {
    for (const auto& v : values)
        if (v.code == code) return &v;
    return nullptr;
}

const AttrValue* Attribute::value_by_name(std::string_view name) const {
    for (const auto& v : values)
        if (v.name == name) return &v;
    return nullptr;
}

int Attribute::value_rank(std::string_view code) const {
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i].code == code) return static_cast<int>(i);
    return -1;
}

const Attribute* Category::attribute_at(int common_position) const {
    for (const auto& a : attributes)
        if (a.common_position == common_position) return &a;
    return nullptr;
}

const Attribute* Category::attribute_by_name(std::string_view name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

Attribute* Category::attribute_by_name(std::string_view name) {
    return const_cast<Attribute*>(std::as_const(*this).attribute_by_name(name));
}

int Category::max_common_position() const {
    int m = 0;
    for (const auto& a : attributes) m = std::max(m, a.common_position);
    return m;
}

const ParticularValue* ParticularAttribute::value_by_code(std::string_view code) const {
    for (const auto& v : values)
        if (v.code == code) return &v;
    return nullptr;
}

const ParticularValue* ParticularAttribute::value_by_localised_code(std::string_view code) const {
    for (const auto& v : values)
        if (v.localised && v.localised->code == code) return &v;
    return nullptr;
}

const ParticularAttribute* ParticularTable::at(int position) const {
    for (const auto& a : attributes)
        if (a.position == position) return &a;
    return nullptr;
}

const ParticularAttribute* ParticularTable::by_name(std::string_view name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

ParticularAttribute* ParticularTable::by_name(std::string_view name) {
    return const_cast<ParticularAttribute*>(std::as_const(*this).by_name(name));
}

int ParticularTable::max_position() const {
    int m = 0;
    for (const auto& a : attributes) m = std::max(m, a.position);
    return m;
}

const ParticularTable* LanguageSection::table(std::string_view category_code) const {
    for (const auto& t : tables)
        if (t.category_code == category_code) return &t;
    return nullptr;
}

ParticularTable* LanguageSection::table(std::string_view category_code) {
    return const_cast<ParticularTable*>(std::as_const(*this).table(category_code));
}

const ParticularTable* LanguageSection::table_by_localised_code(std::string_view code) const {
    for (const auto& t : tables)
        if (t.localised && t.localised->code == code) return &t;
    return nullptr;
}

const Category* Specification::category(std::string_view code) const {
    for (const auto& c : categories)
        if (c.code == code) return &c;
    return nullptr;
}

Category* Specification::category(std::string_view code) {
    for (auto& c : categories)
        if (c.code == code) return &c;
    return nullptr;
}

int Specification::category_rank(std::string_view code) const {
    for (size_t i = 0; i < categories.size(); ++i)
        if (categories[i].code == code) return static_cast<int>(i);
    return -1;
}

const LanguageSection* Specification::section(std::string_view language) const {
    auto it = sections.find(std::string(language));
    return it == sections.end() ? nullptr : &it->second;
}

bool Specification::has_language(std::string_view language) const {
    return std::find(languages.begin(), languages.end(), language) != languages.end();
}

std::vector<std::string> Specification::category_languages(std::string_view category_code) const {
    std::set<std::string> langs;
    const Category* cat = category(category_code);
    if (cat) {
        for (const auto& a : cat->attributes)
            for (const auto& v : a.values)
                langs.insert(v.languages.begin(), v.languages.end());
    }
    for (const auto& [lang, sec] : sections)
        if (sec.table(category_code)) langs.insert(lang);
    return {langs.begin(), langs.end()};
}

Specification load_spec(const std::string& content, SpecFormat format) {
    std::istringstream in(content);
    return load_spec(in, format);
}

Specification load_spec_file(const std::string& path, SpecFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path, "cannot open file");
    return load_spec(in, format);
}

std::string emit_spec(const Specification& spec, SpecFormat format) {
    std::ostringstream out;
    emit_spec(out, spec, format);
    return out.str();
}

std::vector<CategoryStats> spec_stats(const Specification& spec) {
    std::vector<CategoryStats> out;
    for (const auto& cat : spec.categories) {
        CategoryStats s;
        s.code = cat.code;
        s.name = cat.name;
        s.attribute_count = static_cast<int>(cat.attributes.size());
        for (const auto& a : cat.attributes)
            s.value_count += static_cast<int>(a.values.size());
        s.language_count = static_cast<int>(spec.category_languages(cat.code).size());
        out.push_back(std::move(s));
    }
    return out;
}

const Attribute& lookup(const Specification& spec, const std::string& language,
                        std::string_view category_code, int position, Ordering ordering) {
    const Category* cat = spec.category(category_code);
    if (!cat) throw Error("lookup", "unknown category '" + std::string(category_code) + "'");
    if (position <= 0)
        throw Error("lookup", "position must be positive (0 is the category itself)");
    if (ordering == Ordering::common) {
        const Attribute* a = cat->attribute_at(position);
        if (!a)
            throw Error("lookup", "category " + cat->code + " has no attribute at common position " +
                                      std::to_string(position));
        return *a;
    }
    const LanguageSection* sec = spec.section(language);
    if (!sec) throw Error("lookup", "language '" + language + "' has no particular section");
    const ParticularTable* table = sec->table(category_code);
    if (!table)
        throw Error("lookup", "language '" + language + "' does not declare category " +
                                  std::string(category_code));
    const ParticularAttribute* pa = table->at(position);
    if (!pa)
        throw Error("lookup", "category " + std::string(category_code) +
                                  " has no attribute at particular position " +
                                  std::to_string(position) + " for " + language);
    const Attribute* a = cat->attribute_by_name(pa->name);
    if (!a) throw Error("lookup", "particular attribute '" + pa->name + "' missing from common tables");
    return *a;
}

void check_spec_invariants(const Specification& spec) {
    std::set<std::string> cat_codes;
    for (const auto& cat : spec.categories) {
        if (utf8_length(cat.code) != 1 || cat.code.size() != 1 || !std::isupper(static_cast<unsigned char>(cat.code[0])))
            throw Error("spec", "category code '" + cat.code + "' is not a single uppercase letter");
        if (!cat_codes.insert(cat.code).second)
            throw Error("spec", "duplicate category code '" + cat.code + "'");
        std::set<int> positions;
        int last_pos = 0;
        for (const auto& a : cat.attributes) {
            if (a.common_position <= 0)
                throw Error("spec", cat.code + "." + a.name + ": position must be positive");
            if (!positions.insert(a.common_position).second)
                throw Error("spec", cat.code + ": duplicate attribute position " +
                                        std::to_string(a.common_position));
            if (a.common_position < last_pos)
                throw Error("spec", cat.code + ": attributes not in ascending position order");
            last_pos = a.common_position;
            std::set<std::string> codes;
            for (const auto& v : a.values) {
                if (v.code == "-")
                    throw Error("spec", cat.code + "." + a.name + ": value code '-' is reserved");
                if (utf8_length(v.code) != 1)
                    throw Error("spec", cat.code + "." + a.name + ": value code '" + v.code +
                                            "' is not a single character");
                if (!codes.insert(v.code).second)
                    throw Error("spec", cat.code + "." + a.name + ": duplicate value code '" +
                                            v.code + "'");
                if (v.languages.empty())
                    throw Error("spec", cat.code + "." + a.name + "." + v.name +
                                            ": no languages flagged");
                for (const auto& l : v.languages)
                    if (!spec.has_language(l))
                        throw Error("spec", cat.code + "." + a.name + "." + v.name +
                                                ": language '" + l + "' not declared");
            }
        }
    }
    for (const auto& [lang, sec] : spec.sections) {
        if (!spec.has_language(lang))
            throw Error("spec", "section language '" + lang + "' not declared");
        for (const auto& table : sec.tables) {
            const Category* cat = spec.category(table.category_code);
            if (!cat)
                throw Error("spec", lang + ": particular table for unknown category '" +
                                        table.category_code + "'");
            std::set<int> positions;
            for (const auto& pa : table.attributes) {
                if (!cat->attribute_by_name(pa.name))
                    throw Error("spec", lang + "." + cat->code + ": attribute '" + pa.name +
                                            "' missing from common tables");
                if (pa.position <= 0 || !positions.insert(pa.position).second)
                    throw Error("spec", lang + "." + cat->code + ": bad or duplicate particular position " +
                                            std::to_string(pa.position));
            }
        }
    }
}

Report validate_spec(const Specification& spec) {
    Report report;
    for (const auto& [lang, sec] : spec.sections) {
        for (const auto& table : sec.tables) {
            const Category* cat = spec.category(table.category_code);
            if (!cat) continue;
            std::string cat_path = lang + "/" + cat->code;
            if (!table.localised)
                report.warning(cat_path, "no localisation for category; falling back to English");
            // contiguity of particular positions
            int max_pos = table.max_position();
            for (int p = 1; p <= max_pos; ++p)
                if (!table.at(p))
                    report.warning(cat_path, "gap in particular positions at " + std::to_string(p));
            for (const auto& pa : table.attributes) {
                const Attribute* a = cat->attribute_by_name(pa.name);
                if (!a) continue;
                std::string attr_path = cat_path + "/" + pa.name;
                for (const auto& pv : pa.values) {
                    const AttrValue* v = a->value_by_code(pv.code);
                    if (!v) {
                        report.error(attr_path, "value code '" + pv.code +
                                                    "' not in common tables");
                        continue;
                    }
                    if (!v->flagged(lang))
                        report.error(attr_path + "/" + pv.code,
                                     "value listed for " + lang + " but not flagged in common tables");
                    if (!pv.localised)
                        report.warning(attr_path + "/" + pv.code,
                                       "no localisation for value; falling back to English");
                }
                // value flagged for the language but omitted from its table
                for (const auto& v : a->values)
                    if (v.flagged(lang) && !pa.value_by_code(v.code))
                        report.warning(attr_path + "/" + v.code,
                                       "value flagged for " + lang +
                                           " in common tables but omitted from the particular table");
            }
        }
    }
    return report;
}

} // namespace mte
