#include "mte/corpus.hpp"

#include "mte/msd.hpp"
#include "mte/text.hpp"
#include "mte/xml.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace mte {

namespace {

struct CorpusLoader {
    CorpusParseMode mode;
    Report* findings;

    void note(const std::string& path, const std::string& detail) {
        if (mode == CorpusParseMode::strict) throw Error(path, detail);
        if (findings) findings->warning(path, detail);
    }

    std::string required(const XmlNode& n, const std::string& key, const std::string& where) {
        const std::string* v = n.attr(key);
        if (!v) throw Error(where, "missing required attribute " + key);
        return *v;
    }

    Token load_token(const XmlNode& n, const std::string& where) {
        Token t;
        if (n.name == "w") {
            t.kind = Token::Kind::word;
            t.surface = n.text();
            t.lemma = required(n, "lemma", where);
            std::string ana = required(n, "ana", where);
            t.msd_ref = starts_with(ana, "#") ? ana.substr(1) : ana;
        } else {
            t.kind = Token::Kind::punctuation;
            t.surface = n.text();
        }
        return t;
    }

    Sentence load_sentence(const XmlNode& n) {
        Sentence s;
        s.id = required(n, "xml:id", "s");
        for (const auto& c : n.children) {
            if (c.kind != XmlNode::Kind::element) continue;
            if (c.name == "w" || c.name == "c") s.tokens.push_back(load_token(c, s.id));
            else note(s.id, "unknown element <" + c.name + "> skipped");
        }
        if (s.tokens.empty() && findings) findings->warning(s.id, "sentence has no tokens");
        return s;
    }

    Paragraph load_paragraph(const XmlNode& n) {
        Paragraph p;
        p.id = required(n, "xml:id", "p");
        for (const auto& c : n.children) {
            if (c.kind != XmlNode::Kind::element) continue;
            if (c.name == "s") p.sentences.push_back(load_sentence(c));
            else note(p.id, "unknown element <" + c.name + "> skipped");
        }
        return p;
    }

    Division load_division(const XmlNode& n) {
        Division d;
        d.type = n.attr_or("type", "");
        d.id = required(n, "xml:id", "div");
        for (const auto& c : n.children) {
            if (c.kind != XmlNode::Kind::element) continue;
            if (c.name == "div") d.divisions.push_back(load_division(c));
            else if (c.name == "p") d.paragraphs.push_back(load_paragraph(c));
            else note(d.id, "unknown element <" + c.name + "> skipped");
        }
        return d;
    }

    void load_back(AnnotatedCorpus& corpus, const XmlNode& back) {
        corpus.has_back = true;
        for (const auto& c : back.children) {
            if (c.kind != XmlNode::Kind::element) continue;
            if (c.name == "fLib") {
                for (const auto& f : c.children_named("f")) {
                    FLibEntry e;
                    e.name = required(*f, "name", "f");
                    e.id = required(*f, "xml:id", "f");
                    e.lang = f->attr_or("xml:lang", "");
                    const XmlNode* sym = f->child("symbol");
                    if (sym) e.symbol = sym->attr_or("value", "");
                    corpus.flib.push_back(std::move(e));
                }
            } else if (c.name == "fvLib") {
                for (const auto& fs : c.children_named("fs")) {
                    FvLibEntry e;
                    e.id = required(*fs, "xml:id", "fs");
                    e.lang = fs->attr_or("xml:lang", "");
                    for (const auto& ref : split_ws(fs->attr_or("feats", "")))
                        e.feats.push_back(starts_with(ref, "#") ? ref.substr(1) : ref);
                    corpus.fvlib.push_back(std::move(e));
                }
            } else {
                note("back", "unknown element <" + c.name + "> skipped");
            }
        }
    }

    AnnotatedCorpus load(const XmlNode& root) {
        if (root.name != "text") throw Error("corpus", "root element must be <text>");
        AnnotatedCorpus corpus;
        corpus.text_id = required(root, "xml:id", "text");
        corpus.language = to_lower_ascii(root.attr_or("xml:lang", ""));
        const XmlNode* body = root.child("body");
        if (!body) throw Error("corpus", "<text> has no <body>");
        for (const auto& c : body->children) {
            if (c.kind != XmlNode::Kind::element) continue;
            if (c.name == "div") corpus.divisions.push_back(load_division(c));
            else note(corpus.text_id, "unknown element <" + c.name + "> skipped");
        }
        if (const XmlNode* back = root.child("back")) load_back(corpus, *back);
        return corpus;
    }
};

void for_each_sentence(const AnnotatedCorpus& corpus,
                       const std::function<void(const Sentence&)>& fn) {
    std::function<void(const Division&)> walk = [&](const Division& d) {
        for (const auto& sub : d.divisions) walk(sub);
        for (const auto& p : d.paragraphs)
            for (const auto& s : p.sentences) fn(s);
    };
    for (const auto& d : corpus.divisions) walk(d);
}

void check_child_id(Report& report, const std::string& parent, const std::string& child) {
    bool ok = starts_with(child, parent) &&
              (parent.ends_with(".") ||
               (child.size() > parent.size() && child[parent.size()] == '.'));
    if (!ok)
        report.error(child, "identifier does not extend its parent '" + parent + "'");
}

} // namespace

AnnotatedCorpus load_corpus(const std::string& content, CorpusParseMode mode, Report* findings) {
    CorpusLoader loader{mode, findings};
    return loader.load(xml_parse(content));
}

AnnotatedCorpus load_corpus_file(const std::string& path, CorpusParseMode mode, Report* findings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path, "cannot open file");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_corpus(content, mode, findings);
}

namespace {

void emit_division(std::string& out, const Division& d, int depth) {
    std::string pad(static_cast<size_t>(depth), ' ');
    out += pad + "<div type=\"" + xml_escape(d.type) + "\" xml:id=\"" + xml_escape(d.id) + "\">\n";
    for (const auto& sub : d.divisions) emit_division(out, sub, depth + 1);
    for (const auto& p : d.paragraphs) {
        std::string ppad(static_cast<size_t>(depth + 1), ' ');
        out += ppad + "<p xml:id=\"" + xml_escape(p.id) + "\">\n";
        for (const auto& s : p.sentences) {
            std::string spad(static_cast<size_t>(depth + 2), ' ');
            out += spad + "<s xml:id=\"" + xml_escape(s.id) + "\">\n";
            for (const auto& t : s.tokens) {
                std::string tpad(static_cast<size_t>(depth + 3), ' ');
                if (t.kind == Token::Kind::word)
                    out += tpad + "<w lemma=\"" + xml_escape(t.lemma) + "\" ana=\"#" +
                           xml_escape(t.msd_ref) + "\">" + xml_escape(t.surface) + "</w>\n";
                else
                    out += tpad + "<c>" + xml_escape(t.surface) + "</c>\n";
            }
            out += spad + "</s>\n";
        }
        out += ppad + "</p>\n";
    }
    out += pad + "</div>\n";
}

} // namespace

std::string emit_corpus(const AnnotatedCorpus& corpus) {
    std::string out;
    out += "<text xml:id=\"" + xml_escape(corpus.text_id) + "\"";
    if (!corpus.language.empty()) out += " xml:lang=\"" + xml_escape(corpus.language) + "\"";
    out += ">\n <body>\n";
    for (const auto& d : corpus.divisions) emit_division(out, d, 2);
    out += " </body>\n";
    if (corpus.has_back) {
        out += " <back>\n  <fLib>\n";
        for (const auto& f : corpus.flib) {
            out += "   <f name=\"" + xml_escape(f.name) + "\" xml:id=\"" + xml_escape(f.id) + "\"";
            if (!f.lang.empty()) out += " xml:lang=\"" + xml_escape(f.lang) + "\"";
            out += ">\n    <symbol value=\"" + xml_escape(f.symbol) + "\"/>\n   </f>\n";
        }
        out += "  </fLib>\n  <fvLib>\n";
        for (const auto& v : corpus.fvlib) {
            out += "   <fs xml:id=\"" + xml_escape(v.id) + "\"";
            if (!v.lang.empty()) out += " xml:lang=\"" + xml_escape(v.lang) + "\"";
            std::vector<std::string> refs;
            for (const auto& id : v.feats) refs.push_back("#" + id);
            out += " feats=\"" + xml_escape(join(refs, " ")) + "\"/>\n";
        }
        out += "  </fvLib>\n </back>\n";
    }
    out += "</text>\n";
    return out;
}

Report validate_corpus(const AnnotatedCorpus& corpus, const Specification* spec) {
    Report report;

    std::set<std::string> flib_ids, fvlib_ids;
    for (const auto& f : corpus.flib) flib_ids.insert(f.id);
    for (const auto& v : corpus.fvlib) fvlib_ids.insert(v.id);

    // identifier hierarchy + uniqueness
    std::set<std::string> all_ids{corpus.text_id};
    std::function<void(const Division&, const std::string&)> walk =
        [&](const Division& d, const std::string& parent) {
            check_child_id(report, parent, d.id);
            if (!all_ids.insert(d.id).second) report.error(d.id, "duplicate identifier");
            for (const auto& sub : d.divisions) walk(sub, d.id);
            for (const auto& p : d.paragraphs) {
                check_child_id(report, d.id, p.id);
                if (!all_ids.insert(p.id).second) report.error(p.id, "duplicate identifier");
                for (const auto& s : p.sentences) {
                    check_child_id(report, p.id, s.id);
                    if (!all_ids.insert(s.id).second) report.error(s.id, "duplicate identifier");
                }
            }
        };
    for (const auto& d : corpus.divisions) walk(d, corpus.text_id);

    // msd_ref resolution
    for_each_sentence(corpus, [&](const Sentence& s) {
        for (const auto& t : s.tokens) {
            if (t.kind != Token::Kind::word) continue;
            if (!fvlib_ids.count(t.msd_ref))
                report.error(s.id, "dangling reference #" + t.msd_ref +
                                       " (no feature-value library entry)");
        }
    });

    // fLib closure and decomposition check
    for (const auto& v : corpus.fvlib) {
        for (const auto& feat : v.feats)
            if (!flib_ids.count(feat))
                report.error(v.id, "feature reference #" + feat + " not in the feature library");
        if (spec) {
            try {
                FeatureLibraries expect = emit_feature_libraries(
                    *spec, corpus.language, {v.id},
                    spec->section(corpus.language) ? Ordering::particular : Ordering::common);
                if (expect.values.size() == 1 && expect.values[0].feature_ids != v.feats)
                    report.error(v.id, "feature decomposition does not match the specification: "
                                           "expected " + join(expect.values[0].feature_ids, " ") +
                                           " got " + join(v.feats, " "));
            } catch (const Error& e) {
                report.error(v.id, std::string("identifier is not a valid MSD: ") + e.what());
            }
        }
    }
    return report;
}

AnnotatedCorpus attach_libraries(AnnotatedCorpus corpus, const Specification& spec,
                                 Ordering ordering) {
    std::vector<std::string> msds;
    std::set<std::string> seen;
    std::vector<std::pair<std::string, std::string>> bad; // (sentence id, msd)
    for_each_sentence(corpus, [&](const Sentence& s) {
        for (const auto& t : s.tokens)
            if (t.kind == Token::Kind::word && seen.insert(t.msd_ref).second)
                msds.push_back(t.msd_ref);
    });
    // fail naming the first offending token id
    for_each_sentence(corpus, [&](const Sentence& s) {
        for (const auto& t : s.tokens) {
            if (t.kind != Token::Kind::word) continue;
            try {
                decode(Msd{t.msd_ref, corpus.language, ordering, false}, spec);
            } catch (const Error& e) {
                bad.emplace_back(s.id, t.msd_ref);
            }
        }
    });
    if (!bad.empty())
        throw Error(bad[0].first, "MSD '" + bad[0].second + "' invalid under the specification");

    FeatureLibraries libs = emit_feature_libraries(spec, corpus.language, msds, ordering);
    corpus.has_back = true;
    corpus.flib.clear();
    corpus.fvlib.clear();
    for (const auto& f : libs.features)
        corpus.flib.push_back({f.attr_name, f.id, "en", f.value_name});
    for (const auto& v : libs.values) corpus.fvlib.push_back({v.msd, "en", v.feature_ids});
    return corpus;
}

CorpusStats corpus_stats(const AnnotatedCorpus& corpus) {
    CorpusStats stats;
    stats.total.id = corpus.text_id;
    std::set<std::string> total_msds;

    std::function<void(const Division&)> walk = [&](const Division& d) {
        CountRow row;
        row.id = d.id;
        std::set<std::string> div_msds;
        std::function<void(const Division&)> collect = [&](const Division& dd) {
            for (const auto& sub : dd.divisions) collect(sub);
            for (const auto& p : dd.paragraphs)
                for (const auto& s : p.sentences)
                    for (const auto& t : s.tokens) {
                        if (t.kind == Token::Kind::word) {
                            ++row.words;
                            div_msds.insert(t.msd_ref);
                        } else {
                            ++row.punctuation;
                        }
                    }
        };
        collect(d);
        row.distinct_msds = static_cast<long>(div_msds.size());
        stats.divisions.push_back(row);
        for (const auto& sub : d.divisions) walk(sub);
    };
    for (const auto& d : corpus.divisions) walk(d);

    for_each_sentence(corpus, [&](const Sentence& s) {
        CountRow row;
        row.id = s.id;
        std::set<std::string> msds;
        for (const auto& t : s.tokens) {
            if (t.kind == Token::Kind::word) {
                ++row.words;
                msds.insert(t.msd_ref);
                total_msds.insert(t.msd_ref);
            } else {
                ++row.punctuation;
            }
        }
        row.distinct_msds = static_cast<long>(msds.size());
        stats.total.words += row.words;
        stats.total.punctuation += row.punctuation;
        stats.sentences.push_back(std::move(row));
    });
    stats.total.distinct_msds = static_cast<long>(total_msds.size());
    return stats;
}

std::map<std::string, std::map<std::pair<std::string, std::string>, long>>
msd_usage(const AnnotatedCorpus& corpus) {
    std::map<std::string, std::map<std::pair<std::string, std::string>, long>> usage;
    for_each_sentence(corpus, [&](const Sentence& s) {
        for (const auto& t : s.tokens)
            if (t.kind == Token::Kind::word)
                ++usage[t.msd_ref][{t.surface, t.lemma}];
    });
    return usage;
}

std::vector<std::string> sentence_ids(const AnnotatedCorpus& corpus) {
    std::vector<std::string> ids;
    for_each_sentence(corpus, [&](const Sentence& s) { ids.push_back(s.id); });
    return ids;
}

} // namespace mte
