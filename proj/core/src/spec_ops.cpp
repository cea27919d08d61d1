#include "mte/spec_ops.hpp"

#include "mte/msd.hpp"
#include "mte/text.hpp"
#include "mte/xml.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mte {

LanguageSection split(const Specification& spec, const std::vector<std::string>& seed_languages,
                      const std::string& new_language) {
    for (const auto& seed : seed_languages)
        if (!spec.has_language(seed))
            throw Error("split", "unknown seed language '" + seed + "'");
    if (spec.has_language(new_language))
        throw Error("split", "language '" + new_language + "' already present in the specification");

    auto seeded = [&](const AttrValue& v) {
        return std::any_of(seed_languages.begin(), seed_languages.end(),
                           [&](const std::string& l) { return v.flagged(l); });
    };

    LanguageSection out;
    out.language = new_language;
    for (const auto& cat : spec.categories) {
        ParticularTable table;
        table.category_code = cat.code;
        int next_pos = 1;
        for (const auto& a : cat.attributes) {
            ParticularAttribute pa;
            pa.name = a.name;
            for (const auto& v : a.values)
                if (seeded(v)) pa.values.push_back({v.code, v.name, std::nullopt});
            if (pa.values.empty()) continue;
            pa.position = next_pos++;
            table.attributes.push_back(std::move(pa));
        }
        bool declared_by_seed = false;
        for (const auto& seed : seed_languages) {
            const LanguageSection* sec = spec.section(seed);
            if (sec && sec->table(cat.code)) declared_by_seed = true;
        }
        if (!table.attributes.empty() || declared_by_seed)
            out.tables.push_back(std::move(table));
    }
    return out;
}

MergeResult merge(const Specification& spec, const LanguageSection& section) {
    MergeResult result;
    result.spec = spec;
    Specification& merged = result.spec;
    Report& warnings = result.warnings;
    const std::string& lang = section.language;
    if (lang.empty()) throw Error("merge", "section has no language code");

    for (const auto& t : section.tables) {
        Category* cat = merged.category(t.category_code);
        if (!cat)
            throw Error("merge", "section references unknown category '" + t.category_code + "'");
        for (const auto& pa : t.attributes) {
            std::string attr_path = lang + "/" + cat->code + "/" + pa.name;
            Attribute* attr = nullptr;
            for (auto& a : cat->attributes)
                if (a.name == pa.name) attr = &a;
            if (!attr) {
                // case-only mismatch: warn and skip, do not silently merge
                bool case_only = false;
                for (const auto& a : cat->attributes)
                    if (to_lower_ascii(a.name) == to_lower_ascii(pa.name)) case_only = true;
                if (case_only) {
                    warnings.warning(attr_path, "attribute differs from common tables only by case; not merged");
                    continue;
                }
                Attribute added;
                added.name = pa.name;
                added.common_position = cat->max_common_position() + 1;
                cat->attributes.push_back(std::move(added));
                attr = &cat->attributes.back();
                warnings.warning(attr_path, "new attribute added to common tables at position " +
                                                std::to_string(attr->common_position));
            }
            for (const auto& pv : pa.values) {
                std::string val_path = attr_path + "/" + pv.code;
                AttrValue* value = nullptr;
                for (auto& v : attr->values)
                    if (v.code == pv.code) value = &v;
                if (value) {
                    if (value->name != pv.name) {
                        if (to_lower_ascii(value->name) == to_lower_ascii(pv.name)) {
                            warnings.warning(val_path,
                                             "value name differs from common tables only by case; not merged");
                            continue;
                        }
                        throw Error("merge", val_path + ": code '" + pv.code +
                                                 "' bound to '" + value->name +
                                                 "' in common tables but '" + pv.name +
                                                 "' in the section");
                    }
                } else {
                    AttrValue added;
                    added.code = pv.code;
                    added.name = pv.name;
                    attr->values.push_back(std::move(added));
                    value = &attr->values.back();
                    warnings.warning(val_path, "new value added to common tables");
                }
                if (!value->flagged(lang)) {
                    value->languages.push_back(lang);
                    std::sort(value->languages.begin(), value->languages.end());
                }
            }
        }
    }

    merged.sections[lang] = section;
    if (!merged.has_language(lang)) {
        merged.languages.push_back(lang);
        std::sort(merged.languages.begin(), merged.languages.end());
    }
    check_spec_invariants(merged);
    return result;
}

namespace {

void diff_common(Report& out, const Specification& a, const Specification& b) {
    for (const auto& ca : a.categories)
        if (!b.category(ca.code)) out.add("REMOVED", ca.code, "category " + ca.name);
    for (const auto& cb : b.categories) {
        const Category* ca = a.category(cb.code);
        if (!ca) {
            out.add("ADDED", cb.code, "category " + cb.name);
            continue;
        }
        if (ca->name != cb.name)
            out.add("CHANGED", cb.code, "category name " + ca->name + " -> " + cb.name);
        for (const auto& aa : ca->attributes)
            if (!cb.attribute_by_name(aa.name))
                out.add("REMOVED", cb.code + "/" + aa.name, "attribute");
        for (const auto& ab : cb.attributes) {
            const Attribute* aa = ca->attribute_by_name(ab.name);
            std::string path = cb.code + "/" + ab.name;
            if (!aa) {
                out.add("ADDED", path, "attribute at position " + std::to_string(ab.common_position));
                continue;
            }
            if (aa->common_position != ab.common_position)
                out.add("CHANGED", path,
                        "position " + std::to_string(aa->common_position) + " -> " +
                            std::to_string(ab.common_position));
            for (const auto& va : aa->values)
                if (!ab.value_by_code(va.code))
                    out.add("REMOVED", path + "/" + va.code, "value " + va.name);
            for (const auto& vb : ab.values) {
                const AttrValue* va = aa->value_by_code(vb.code);
                std::string vpath = path + "/" + vb.code;
                if (!va) {
                    out.add("ADDED", vpath, "value " + vb.name);
                    continue;
                }
                if (va->name != vb.name)
                    out.add("CHANGED", vpath, "value name " + va->name + " -> " + vb.name);
                for (const auto& l : va->languages)
                    if (!vb.flagged(l)) out.add("REMOVED", vpath + "/" + l, "language flag");
                for (const auto& l : vb.languages)
                    if (!va->flagged(l)) out.add("ADDED", vpath + "/" + l, "language flag");
            }
        }
    }
}

void diff_sections(Report& out, const Specification& a, const Specification& b) {
    for (const auto& [lang, sa] : a.sections)
        if (!b.section(lang)) out.add("REMOVED", lang, "language section");
    for (const auto& [lang, sb] : b.sections) {
        const LanguageSection* sa = a.section(lang);
        if (!sa) {
            out.add("ADDED", lang, "language section");
            continue;
        }
        for (const auto& ta : sa->tables)
            if (!sb.table(ta.category_code))
                out.add("REMOVED", lang + "/" + ta.category_code, "particular table");
        for (const auto& tb : sb.tables) {
            const ParticularTable* ta = sa->table(tb.category_code);
            std::string tpath = lang + "/" + tb.category_code;
            if (!ta) {
                out.add("ADDED", tpath, "particular table");
                continue;
            }
            for (const auto& pa : ta->attributes)
                if (!tb.by_name(pa.name)) out.add("REMOVED", tpath + "/" + pa.name, "attribute");
            for (const auto& pb : tb.attributes) {
                const ParticularAttribute* pa = ta->by_name(pb.name);
                std::string apath = tpath + "/" + pb.name;
                if (!pa) {
                    out.add("ADDED", apath, "attribute at position " + std::to_string(pb.position));
                    continue;
                }
                if (pa->position != pb.position)
                    out.add("CHANGED", apath,
                            "position " + std::to_string(pa->position) + " -> " +
                                std::to_string(pb.position));
                for (const auto& va : pa->values)
                    if (!pb.value_by_code(va.code))
                        out.add("REMOVED", apath + "/" + va.code, "value " + va.name);
                for (const auto& vb : pb.values)
                    if (!pa->value_by_code(vb.code))
                        out.add("ADDED", apath + "/" + vb.code, "value " + vb.name);
            }
        }
    }
}

} // namespace

Report diff(const Specification& a, const Specification& b) {
    Report out;
    diff_common(out, a, b);
    diff_sections(out, a, b);
    return out;
}

FeatureLibraries emit_feature_libraries(const Specification& spec, const std::string& language,
                                        const std::vector<std::string>& msds, Ordering ordering) {
    FeatureLibraries libs;
    libs.language = language;

    // key for deterministic fLib order: category rank, position, value rank
    std::map<std::tuple<int, int, int>, FeatureEntry> features;
    std::set<std::string> seen_msds;

    for (const auto& text : msds) {
        if (!seen_msds.insert(text).second) continue;
        Msd msd{text, language, ordering, false};
        decode(msd, spec); // throws on invalid MSDs
        const Category& cat = *spec.category(utf8_chars(text)[0]);
        int cat_rank = spec.category_rank(cat.code);

        FeatureValueEntry entry;
        entry.msd = text;
        entry.feature_ids.push_back(cat.code + "0.");
        features.try_emplace({cat_rank, 0, 0},
                             FeatureEntry{cat.code + "0.", "CATEGORY", cat.name});

        auto chars = utf8_chars(text);
        for (size_t i = 1; i < chars.size(); ++i) {
            if (chars[i] == "-") continue;
            int pos = static_cast<int>(i);
            const Attribute& attr = lookup(spec, language, cat.code, pos, ordering);
            const AttrValue* value = attr.value_by_code(chars[i]);
            std::string id = cat.code + std::to_string(pos) + "." + chars[i];
            entry.feature_ids.push_back(id);
            features.try_emplace({cat_rank, pos, attr.value_rank(chars[i])},
                                 FeatureEntry{id, attr.name, value->name});
        }
        libs.values.push_back(std::move(entry));
    }
    for (auto& [key, entry] : features) libs.features.push_back(std::move(entry));
    return libs;
}

std::string feature_libraries_to_xml(const FeatureLibraries& libs) {
    XmlNode flib = XmlNode::element("fLib");
    for (const auto& f : libs.features) {
        XmlNode fe = XmlNode::element("f");
        fe.set("name", f.attr_name);
        fe.set("xml:id", f.id);
        fe.set("xml:lang", "en");
        XmlNode sym = XmlNode::element("symbol");
        sym.set("value", f.value_name);
        fe.children.push_back(std::move(sym));
        flib.children.push_back(std::move(fe));
    }
    XmlNode fvlib = XmlNode::element("fvLib");
    for (const auto& v : libs.values) {
        XmlNode fs = XmlNode::element("fs");
        fs.set("xml:id", v.msd);
        fs.set("xml:lang", "en");
        std::vector<std::string> refs;
        for (const auto& id : v.feature_ids) refs.push_back("#" + id);
        fs.set("feats", join(refs, " "));
        fvlib.children.push_back(std::move(fs));
    }
    return xml_serialize(flib) + xml_serialize(fvlib);
}

namespace {

void render_section(std::ostream& out, const Specification& spec, const LanguageSection& sec) {
    out << "LANGUAGE " << sec.language << "\n";
    for (const auto& t : sec.tables) {
        const Category* cat = spec.category(t.category_code);
        out << "  CATEGORY " << t.category_code;
        if (cat) out << " " << cat->name;
        if (t.localised) out << " / " << t.localised->name << " (" << t.localised->code << ")";
        out << "\n";
        for (const auto& pa : t.attributes) {
            out << "    " << pa.position << " " << pa.name;
            if (pa.localised_name) out << " / " << *pa.localised_name;
            out << "\n";
            for (const auto& pv : pa.values) {
                out << "      " << pv.code << " " << pv.name;
                if (pv.localised) out << " / " << pv.localised->name << " (" << pv.localised->code << ")";
                out << "\n";
            }
        }
    }
    if (!sec.msd_index.empty()) {
        out << "  MSD INDEX\n";
        for (const auto& e : sec.msd_index) {
            out << "    " << e.msd;
            Msd msd{e.msd, sec.language, Ordering::particular, false};
            try {
                out << "\t" << expand(msd, spec, ExpandForm::verbose_string);
                Msd native = relocalise(msd, spec, Localisation::native);
                out << "\t" << native.text;
                out << "\t" << expand(native, spec, ExpandForm::minimal_localised);
            } catch (const Error&) {
                out << "\t(not decodable under the particular ordering)";
            }
            out << "\t" << (e.token_count ? std::to_string(*e.token_count) : "-");
            out << "\t" << (e.type_count ? std::to_string(*e.type_count) : "-");
            if (!e.examples.empty()) {
                std::vector<std::string> parts;
                for (const auto& [wf, lemma] : e.examples) parts.push_back(wf + "/" + lemma);
                out << "\t" << join(parts, ", ");
            }
            out << "\n";
        }
    }
    for (const auto& c : sec.constraints) out << "  CONSTRAINT " << c << "\n";
}

} // namespace

std::string render_report(const Specification& spec, const std::optional<std::string>& language) {
    std::ostringstream out;
    out << "MORPHOSYNTACTIC SPECIFICATION\n";
    out << "Languages: " << join(spec.languages, ", ") << "\n\n";
    out << "CATEGORIES\n";
    for (const auto& s : spec_stats(spec))
        out << "  " << s.code << " " << s.name << " (attributes " << s.attribute_count
            << ", values " << s.value_count << ", languages " << s.language_count << ")\n";
    out << "\n";
    for (const auto& cat : spec.categories) {
        out << "CATEGORY " << cat.code << " " << cat.name << "\n";
        for (const auto& a : cat.attributes) {
            out << "  " << a.common_position << " " << a.name << "\n";
            for (const auto& v : a.values)
                out << "    " << v.code << " " << v.name << " (" << join(v.languages, ",") << ")\n";
        }
    }
    out << "\n";
    for (const auto& [lang, sec] : spec.sections) {
        if (language && lang != *language) continue;
        render_section(out, spec, sec);
        out << "\n";
    }
    Report findings = validate_spec(spec);
    if (!findings.empty()) {
        out << "WARNINGS\n";
        out << findings.to_tsv();
    }
    return out.str();
}

} // namespace mte
