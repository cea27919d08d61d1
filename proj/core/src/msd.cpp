#include "mte/msd.hpp"

#include "mte/text.hpp"

#include <algorithm>
#include <set>

namespace mte {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw Error("msd", msg);
}

struct Context {
    const Specification& spec;
    const Msd& msd;
    const Category* cat = nullptr;
    const LanguageSection* sec = nullptr;     // when language has a section
    const ParticularTable* table = nullptr;   // when section declares the category
};

Context resolve_category(const Specification& spec, const Msd& msd,
                         const std::string& first_char) {
    Context ctx{spec, msd};
    ctx.sec = msd.language.empty() ? nullptr : spec.section(msd.language);
    if (msd.localised) {
        if (!ctx.sec)
            fail("localised MSD needs a language section for '" + msd.language + "'");
        ctx.table = ctx.sec->table_by_localised_code(first_char);
        if (!ctx.table)
            fail("unknown localised category code '" + first_char + "' for " + msd.language);
        ctx.cat = spec.category(ctx.table->category_code);
        if (!ctx.cat) fail("localised table references unknown category");
        return ctx;
    }
    ctx.cat = spec.category(first_char);
    if (!ctx.cat) fail("unknown category code '" + first_char + "'");
    if (msd.ordering == Ordering::particular) {
        if (!ctx.sec)
            fail("particular ordering needs a language section for '" + msd.language + "'");
        ctx.table = ctx.sec->table(ctx.cat->code);
        if (!ctx.table)
            fail("language '" + msd.language + "' does not declare category " + ctx.cat->code);
    } else if (ctx.sec) {
        ctx.table = ctx.sec->table(ctx.cat->code); // localisation lookups only
    }
    return ctx;
}

int max_position(const Context& ctx) {
    return ctx.msd.ordering == Ordering::common ? ctx.cat->max_common_position()
                                                : ctx.table->max_position();
}

/// Common attribute occupying a position under the context's ordering, or
/// nullptr when the position is a gap. Also yields the particular attribute
/// row when one exists (for localised codes).
std::pair<const Attribute*, const ParticularAttribute*> attribute_at(const Context& ctx, int pos) {
    if (ctx.msd.ordering == Ordering::common) {
        const Attribute* a = ctx.cat->attribute_at(pos);
        const ParticularAttribute* pa =
            (a && ctx.table) ? ctx.table->by_name(a->name) : nullptr;
        return {a, pa};
    }
    const ParticularAttribute* pa = ctx.table->at(pos);
    if (!pa) return {nullptr, nullptr};
    return {ctx.cat->attribute_by_name(pa->name), pa};
}

} // namespace

FeatureStructure decode(const Msd& msd, const Specification& spec, DecodeMode mode) {
    if (msd.text.empty()) fail("empty MSD");
    auto chars = utf8_chars(msd.text);
    Context ctx = resolve_category(spec, msd, chars[0]);

    if (chars.back() == "-") {
        if (mode == DecodeMode::canonical)
            fail("non-canonical trailing hyphens in '" + msd.text + "'");
        while (chars.size() > 1 && chars.back() == "-") chars.pop_back();
    }
    int maxpos = max_position(ctx);
    if (static_cast<int>(chars.size()) - 1 > maxpos)
        fail("'" + msd.text + "' is longer than the declared positions (max " +
             std::to_string(maxpos) + ")");

    FeatureStructure fs;
    fs.language = msd.language;
    fs.category_code = ctx.cat->code;
    for (size_t i = 1; i < chars.size(); ++i) {
        const std::string& c = chars[i];
        if (c == "-") continue;
        int pos = static_cast<int>(i);
        auto [attr, pattr] = attribute_at(ctx, pos);
        if (!attr)
            fail("position " + std::to_string(pos) + " of '" + msd.text +
                 "' has no attribute declared");
        const AttrValue* value = nullptr;
        if (msd.localised) {
            if (!pattr) fail("no localisation data for attribute " + attr->name);
            const ParticularValue* pv = pattr->value_by_localised_code(c);
            if (!pv)
                fail("localised code '" + c + "' at position " + std::to_string(pos) +
                     " not valid for attribute " + attr->name);
            value = attr->value_by_code(pv->code);
        } else {
            value = attr->value_by_code(c);
        }
        if (!value)
            fail("code '" + c + "' at position " + std::to_string(pos) +
                 " not valid for attribute " + attr->name);
        if (!msd.language.empty() && !value->flagged(msd.language))
            fail("value '" + value->name + "' of " + attr->name + " not flagged for language " +
                 msd.language);
        fs.assignments[attr->name] = value->name;
    }
    return fs;
}

Msd encode(const FeatureStructure& fs, const Specification& spec, Ordering ordering,
           bool localise) {
    const Category* cat = spec.category(fs.category_code);
    if (!cat) fail("unknown category code '" + fs.category_code + "'");

    const LanguageSection* sec = fs.language.empty() ? nullptr : spec.section(fs.language);
    const ParticularTable* table = sec ? sec->table(cat->code) : nullptr;
    if (ordering == Ordering::particular && !table)
        fail("language '" + fs.language + "' does not declare category " + cat->code);
    if (localise && (!table || !table->localised))
        fail("no localised category code for " + cat->code + " in language '" + fs.language + "'");

    int maxpos = ordering == Ordering::common ? cat->max_common_position() : table->max_position();
    std::vector<std::string> slots(static_cast<size_t>(maxpos) + 1, "-");
    slots[0] = localise ? table->localised->code : cat->code;

    for (const auto& [attr_name, value_name] : fs.assignments) {
        const Attribute* a = cat->attribute_by_name(attr_name);
        if (!a) fail("attribute '" + attr_name + "' not defined for category " + cat->code);
        const AttrValue* v = a->value_by_name(value_name);
        if (!v) fail("value '" + value_name + "' not defined for attribute " + attr_name);
        if (!fs.language.empty() && !v->flagged(fs.language))
            fail("value '" + value_name + "' of " + attr_name + " not flagged for language " +
                 fs.language);
        int pos;
        const ParticularAttribute* pa = table ? table->by_name(attr_name) : nullptr;
        if (ordering == Ordering::common) {
            pos = a->common_position;
        } else {
            if (!pa)
                fail("attribute '" + attr_name + "' not present in the particular ordering for " +
                     fs.language);
            pos = pa->position;
        }
        std::string code = v->code;
        if (localise) {
            const ParticularValue* pv = pa ? pa->value_by_code(v->code) : nullptr;
            if (!pv || !pv->localised)
                fail("no localised code for " + attr_name + "=" + value_name + " in " +
                     fs.language);
            code = pv->localised->code;
        }
        slots[static_cast<size_t>(pos)] = code;
    }
    while (slots.size() > 1 && slots.back() == "-") slots.pop_back();

    Msd out;
    out.text = join(slots, "");
    out.language = fs.language;
    out.ordering = ordering;
    out.localised = localise;
    return out;
}

Msd relocalise(const Msd& msd, const Specification& spec, Localisation target) {
    FeatureStructure fs = decode(msd, spec);
    return encode(fs, spec, msd.ordering, target == Localisation::native);
}

namespace {

struct Feature {
    const Attribute* attr;
    const ParticularAttribute* pattr; // may be null
};

/// Attributes of a category in rendering order: the language's particular
/// order when declared, common order otherwise.
std::vector<Feature> language_features(const Specification& spec, const std::string& language,
                                       const Category& cat) {
    std::vector<Feature> out;
    const LanguageSection* sec = language.empty() ? nullptr : spec.section(language);
    const ParticularTable* table = sec ? sec->table(cat.code) : nullptr;
    if (table) {
        for (const auto& pa : table->attributes)
            out.push_back({cat.attribute_by_name(pa.name), &pa});
        return out;
    }
    for (const auto& a : cat.attributes) {
        if (language.empty()) {
            out.push_back({&a, nullptr});
            continue;
        }
        bool any = std::any_of(a.values.begin(), a.values.end(),
                               [&](const AttrValue& v) { return v.flagged(language); });
        if (any) out.push_back({&a, nullptr});
    }
    return out;
}

} // namespace

std::string expand(const Msd& msd, const Specification& spec, ExpandForm form) {
    FeatureStructure fs = decode(msd, spec);
    const Category& cat = *spec.category(fs.category_code);
    const LanguageSection* sec = fs.language.empty() ? nullptr : spec.section(fs.language);
    const ParticularTable* table = sec ? sec->table(cat.code) : nullptr;

    bool localise = form == ExpandForm::minimal_localised;
    bool with_zero =
        form == ExpandForm::canonical_language || form == ExpandForm::canonical_universal;

    std::string out;
    if (localise && table && table->localised) out = table->localised->name;
    else out = cat.name;

    auto append = [&](const std::string& attr_name, const std::string& value_name) {
        out += " " + attr_name + "=" + value_name;
    };

    if (form == ExpandForm::canonical_universal) {
        // untyped (PDT-style) union view over all categories, in spec order
        std::set<std::string> seen;
        for (const auto& c : spec.categories) {
            for (const auto& a : c.attributes) {
                if (!seen.insert(a.name).second) continue;
                auto it = fs.assignments.find(a.name);
                bool assigned = it != fs.assignments.end() && cat.attribute_by_name(a.name);
                append(a.name, assigned ? it->second : "0");
            }
        }
        return out;
    }

    for (const Feature& f : language_features(spec, fs.language, cat)) {
        if (!f.attr) continue;
        auto it = fs.assignments.find(f.attr->name);
        if (it == fs.assignments.end()) {
            if (with_zero) append(f.attr->name, "0");
            continue;
        }
        if (localise) {
            std::string attr_name =
                (f.pattr && f.pattr->localised_name) ? *f.pattr->localised_name : f.attr->name;
            std::string value_name = it->second;
            if (f.pattr) {
                const AttrValue* v = f.attr->value_by_name(it->second);
                const ParticularValue* pv = v ? f.pattr->value_by_code(v->code) : nullptr;
                if (pv && pv->localised) value_name = pv->localised->name;
            }
            append(attr_name, value_name);
        } else {
            append(f.attr->name, it->second);
        }
    }
    return out;
}

std::vector<uint32_t> collation_key(const Msd& msd, const Specification& spec) {
    FeatureStructure fs = decode(msd, spec);
    const Category& cat = *spec.category(fs.category_code);
    // position map under the MSD's own ordering
    const LanguageSection* sec = fs.language.empty() ? nullptr : spec.section(fs.language);
    const ParticularTable* table = sec ? sec->table(cat.code) : nullptr;
    int maxpos;
    if (msd.ordering == Ordering::common) maxpos = cat.max_common_position();
    else {
        if (!table) fail("particular collation needs a language section");
        maxpos = table->max_position();
    }

    std::vector<uint32_t> key;
    key.push_back(static_cast<uint32_t>(spec.category_rank(cat.code)));
    for (int p = 1; p <= maxpos; ++p) {
        const Attribute* a = nullptr;
        if (msd.ordering == Ordering::common) {
            a = cat.attribute_at(p);
        } else {
            const ParticularAttribute* pa = table->at(p);
            if (pa) a = cat.attribute_by_name(pa->name);
        }
        uint32_t rank = 0; // unassigned sorts before all value codes
        if (a) {
            auto it = fs.assignments.find(a->name);
            if (it != fs.assignments.end()) {
                const AttrValue* v = a->value_by_name(it->second);
                rank = static_cast<uint32_t>(a->value_rank(v->code)) + 1;
            }
        }
        key.push_back(rank);
    }
    return key;
}

std::vector<MsdCheck> validate_msd_list(const std::vector<std::string>& msds,
                                        const Specification& spec, const std::string& language,
                                        Ordering ordering, DecodeMode mode) {
    std::vector<MsdCheck> out;
    out.reserve(msds.size());
    for (const auto& text : msds) {
        MsdCheck check;
        check.msd = text;
        Msd msd{text, language, ordering, false};
        try {
            FeatureStructure fs = decode(msd, spec, mode);
            check.valid = true;
            if (mode == DecodeMode::lenient) {
                Msd canonical = encode(fs, spec, ordering);
                if (canonical.text != text) check.normalised = canonical.text;
            }
        } catch (const Error& e) {
            check.valid = false;
            check.reason = e.what();
        }
        out.push_back(std::move(check));
    }
    return out;
}

} // namespace mte
