// mte: command-line front-end for the morphosyntactic toolkit. Every
// subcommand is a thin adapter over the library; reports go to stdout as
// tab-separated lines (or prose with --human), diagnostics to stderr.
// Exit codes: 0 success, 1 findings of error severity, 2 usage/IO failure.

#include "mte/align.hpp"
#include "mte/corpus.hpp"
#include "mte/lexicon.hpp"
#include "mte/msd.hpp"
#include "mte/report.hpp"
#include "mte/spec.hpp"
#include "mte/spec_ops.hpp"
#include "mte/text.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mte;

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-" || path.empty()) {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Usage("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> input_lines(const std::string& path) {
    std::vector<std::string> lines;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t(trim(line));
        if (!t.empty()) lines.push_back(t);
    }
    return lines;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Usage("cannot write " + path);
    out << content;
}

int print_report(const Report& report, bool human) {
    if (human) {
        for (const auto& r : report.records())
            std::cout << r.kind << " at " << r.path << ": " << r.detail << "\n";
    } else {
        std::cout << report.to_tsv();
    }
    return report.has_errors() ? 1 : 0;
}

SpecFormat parse_format(const std::string& s) {
    if (s == "tabular") return SpecFormat::tabular;
    if (s == "tei") return SpecFormat::tei;
    throw Usage("unknown format '" + s + "'");
}

Ordering parse_ordering(const std::string& s) {
    if (s == "common") return Ordering::common;
    if (s == "particular") return Ordering::particular;
    throw Usage("unknown ordering '" + s + "'");
}

ExpandForm parse_form(const std::string& s) {
    if (s == "minimal") return ExpandForm::minimal;
    if (s == "minimal-localised") return ExpandForm::minimal_localised;
    if (s == "canonical-language") return ExpandForm::canonical_language;
    if (s == "canonical-universal") return ExpandForm::canonical_universal;
    if (s == "verbose-string") return ExpandForm::verbose_string;
    throw Usage("unknown expansion form '" + s + "'");
}

/// "Verb Type=main VForm=infinitive" -> feature structure. Category is
/// named by its English name; values by their English names.
FeatureStructure parse_features(const std::string& line, const Specification& spec,
                                const std::string& language) {
    auto fields = split_ws(line);
    if (fields.empty()) throw Error(line, "empty feature listing");
    FeatureStructure fs;
    fs.language = language;
    const Category* cat = nullptr;
    for (const auto& c : spec.categories)
        if (c.name == fields[0]) cat = &c;
    if (!cat) throw Error(line, "unknown category name '" + fields[0] + "'");
    fs.category_code = cat->code;
    for (size_t i = 1; i < fields.size(); ++i) {
        auto eq = fields[i].find('=');
        if (eq == std::string::npos)
            throw Error(line, "expected Attribute=value, got '" + fields[i] + "'");
        fs.assignments[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
    }
    return fs;
}

struct CodecArgs {
    std::string spec_path;
    std::string format = "tabular";
    std::string language;
    std::string ordering = "particular";
    bool localise = false;
    bool lenient = false;
    std::string input = "-";
};

void add_codec_options(CLI::App* cmd, CodecArgs& a) {
    cmd->add_option("--spec", a.spec_path, "specification file")->required();
    cmd->add_option("--format", a.format, "spec serialisation: tabular|tei");
    cmd->add_option("--language,-l", a.language, "language code");
    cmd->add_option("--ordering", a.ordering, "attribute ordering: common|particular");
    cmd->add_flag("--localise", a.localise, "use localised category/value codes");
    cmd->add_flag("--lenient", a.lenient, "accept non-canonical MSDs and normalise");
    cmd->add_option("input", a.input, "input file ('-' for stdin)");
}

Specification load(const CodecArgs& a) {
    return load_spec_file(a.spec_path, parse_format(a.format));
}

Msd make_msd(const CodecArgs& a, const std::string& text) {
    return Msd{text, a.language, parse_ordering(a.ordering), a.localise};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MULTEXT-style morphosyntactic toolkit"};
    app.require_subcommand(1);

    // ---- spec ------------------------------------------------------------
    auto* sp = app.add_subcommand("spec", "specification operations");
    sp->require_subcommand(1);
    std::string sp_spec, sp_format = "tabular", sp_out, sp_language;
    std::string sp_languages, sp_new, sp_section, sp_other;
    bool human = false;
    app.add_flag("--human", human, "prose reports instead of tab-separated lines");

    auto add_spec_flag = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--spec", sp_spec, "specification file");
        if (required) opt->required();
        cmd->add_option("--format", sp_format, "tabular|tei");
    };
    auto* sp_validate = sp->add_subcommand("validate", "structural checks");
    add_spec_flag(sp_validate);
    auto* sp_stats = sp->add_subcommand("stats", "category/attribute/value counts");
    add_spec_flag(sp_stats);
    auto* sp_split = sp->add_subcommand("split", "derive a new language section");
    add_spec_flag(sp_split);
    sp_split->add_option("--languages", sp_languages, "seed languages, comma-separated")
        ->required();
    sp_split->add_option("--new", sp_new, "new language code")->required();
    sp_split->add_option("--output,-o", sp_out, "output file");
    auto* sp_merge = sp->add_subcommand("merge", "fold a language section back in");
    add_spec_flag(sp_merge);
    sp_merge->add_option("section", sp_section, "language-section file")->required();
    sp_merge->add_option("--output,-o", sp_out, "output file");
    auto* sp_diff = sp->add_subcommand("diff", "structured change report");
    add_spec_flag(sp_diff);
    sp_diff->add_option("other", sp_other, "specification to compare against")->required();
    auto* sp_render = sp->add_subcommand("render", "human-oriented report");
    add_spec_flag(sp_render);
    sp_render->add_option("--language,-l", sp_language, "restrict to one language");

    // ---- msd ---------------------------------------------------------
    auto* md = app.add_subcommand("msd", "MSD codec operations");
    md->require_subcommand(1);
    CodecArgs mc;
    std::string md_form = "minimal", md_target = "native";
    auto* md_decode = md->add_subcommand("decode", "MSD lines -> feature listings");
    auto* md_encode = md->add_subcommand("encode", "feature listings -> MSD lines");
    auto* md_expand = md->add_subcommand("expand", "MSD lines -> MSD<TAB>rendering");
    md_expand->add_option("--form", md_form,
                          "minimal|minimal-localised|canonical-language|"
                          "canonical-universal|verbose-string");
    auto* md_sort = md->add_subcommand("sort", "sort MSD lines by collation key");
    auto* md_validate = md->add_subcommand("validate", "check MSD lines");
    auto* md_reloc = md->add_subcommand("relocalise", "switch localisation of MSD lines");
    md_reloc->add_option("--target", md_target, "english|native");
    for (auto* cmd : {md_decode, md_encode, md_expand, md_sort, md_validate, md_reloc})
        add_codec_options(cmd, mc);

    // ---- lex ---------------------------------------------------------
    auto* lx = app.add_subcommand("lex", "lexicon operations");
    lx->require_subcommand(1);
    CodecArgs lc;
    std::string lx_corpus;
    std::string lx_index_format = "tabular";
    bool lx_space_runs = false, lx_equals = false;
    auto* lx_validate = lx->add_subcommand("validate", "check lexicon entries");
    auto* lx_index = lx->add_subcommand("index", "build the MSD index");
    lx_index->add_option("--corpus", lx_corpus, "annotated corpus for counts/examples");
    lx_index->add_option("--index-format", lx_index_format, "tabular|tei index rows");
    for (auto* cmd : {lx_validate, lx_index}) {
        add_codec_options(cmd, lc);
        cmd->add_flag("--space-runs", lx_space_runs, "runs of spaces separate fields");
        cmd->add_flag("--equals-shorthand", lx_equals, "'=' copies the other field");
    }

    // ---- corpus --------------------------------------------------------
    auto* cp = app.add_subcommand("corpus", "annotated-corpus operations");
    cp->require_subcommand(1);
    std::string cp_spec, cp_format = "tabular", cp_input = "-", cp_out;
    std::string cp_ordering = "particular";
    bool cp_strict = false;
    auto* cp_validate = cp->add_subcommand("validate", "structure and reference checks");
    cp_validate->add_option("--spec", cp_spec, "specification file");
    cp_validate->add_flag("--strict", cp_strict, "reject unknown elements");
    auto* cp_attach = cp->add_subcommand("attach-fslib", "regenerate feature libraries");
    cp_attach->add_option("--spec", cp_spec, "specification file")->required();
    cp_attach->add_option("--ordering", cp_ordering, "common|particular");
    cp_attach->add_option("--output,-o", cp_out, "output file");
    auto* cp_stats = cp->add_subcommand("stats", "token/type/MSD counts");
    for (auto* cmd : {cp_validate, cp_attach, cp_stats}) {
        cmd->add_option("--format", cp_format, "tabular|tei");
        cmd->add_option("input", cp_input, "corpus file ('-' for stdin)");
    }

    // ---- align ---------------------------------------------------------
    auto* al = app.add_subcommand("align", "sentence-alignment operations");
    al->require_subcommand(1);
    std::string al_out;
    std::vector<std::string> al_inputs;
    bool al_include_hub = false;
    auto* al_validate = al->add_subcommand("validate", "targets, coverage, monotonicity");
    al_validate->add_option("files", al_inputs, "alignment file, then per-slot corpora")
        ->required();
    auto* al_compose = al->add_subcommand("compose", "compose two hub alignments");
    al_compose->add_option("files", al_inputs, "hub-to-x and hub-to-y alignment files")
        ->expected(2);
    al_compose->add_option("--output,-o", al_out, "output file");
    auto* al_multi = al->add_subcommand("compose-multiway", "compose n hub alignments");
    al_multi->add_option("files", al_inputs, "hub alignment files")->required();
    al_multi->add_flag("--include-hub", al_include_hub, "keep the hub as the first slot");
    al_multi->add_option("--output,-o", al_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        // spec -------------------------------------------------------------
        if (sp_validate->parsed()) {
            Specification spec = load_spec_file(sp_spec, parse_format(sp_format));
            return print_report(validate_spec(spec), human);
        }
        if (sp_stats->parsed()) {
            Specification spec = load_spec_file(sp_spec, parse_format(sp_format));
            long attrs = 0, values = 0;
            for (const auto& row : spec_stats(spec)) {
                std::cout << "CATEGORY\t" << row.code << "\t" << row.name << "\t"
                          << row.attribute_count << "\t" << row.value_count << "\t"
                          << row.language_count << "\n";
                attrs += row.attribute_count;
                values += row.value_count;
            }
            std::cout << "TOTAL\t" << spec.categories.size() << "\t" << attrs << "\t" << values
                      << "\t" << spec.languages.size() << "\n";
            std::cout << "LANGUAGES\t" << join(spec.languages, ",") << "\n";
            return 0;
        }
        if (sp_split->parsed()) {
            Specification spec = load_spec_file(sp_spec, parse_format(sp_format));
            std::vector<std::string> seeds;
            for (const auto& s : split(sp_languages, ',')) seeds.emplace_back(trim(s));
            write_output(sp_out, emit_language_section(mte::split(spec, seeds, sp_new)));
            return 0;
        }
        if (sp_merge->parsed()) {
            Specification spec = load_spec_file(sp_spec, parse_format(sp_format));
            MergeResult result = merge(spec, load_language_section(slurp(sp_section)));
            std::cerr << result.warnings.to_tsv();
            write_output(sp_out, emit_spec(result.spec, parse_format(sp_format)));
            return 0;
        }
        if (sp_diff->parsed()) {
            Specification a = load_spec_file(sp_spec, parse_format(sp_format));
            Specification b = load_spec_file(sp_other, parse_format(sp_format));
            print_report(diff(a, b), human);
            return 0;
        }
        if (sp_render->parsed()) {
            Specification spec = load_spec_file(sp_spec, parse_format(sp_format));
            std::cout << render_report(spec, sp_language.empty()
                                                 ? std::nullopt
                                                 : std::make_optional(sp_language));
            return 0;
        }

        // msd ----------------------------------------------------------
        if (md_decode->parsed() || md_expand->parsed()) {
            Specification spec = load(mc);
            ExpandForm form = md_decode->parsed() ? ExpandForm::minimal : parse_form(md_form);
            for (const auto& line : input_lines(mc.input)) {
                std::string rendering = expand(make_msd(mc, line), spec, form);
                if (md_decode->parsed()) std::cout << rendering << "\n";
                else std::cout << line << "\t" << rendering << "\n";
            }
            return 0;
        }
        if (md_encode->parsed()) {
            Specification spec = load(mc);
            for (const auto& line : input_lines(mc.input))
                std::cout << encode(parse_features(line, spec, mc.language), spec,
                                    parse_ordering(mc.ordering), mc.localise)
                                 .text
                          << "\n";
            return 0;
        }
        if (md_sort->parsed()) {
            Specification spec = load(mc);
            auto lines = input_lines(mc.input);
            std::vector<std::pair<std::vector<uint32_t>, std::string>> keyed;
            for (const auto& line : lines)
                keyed.emplace_back(collation_key(make_msd(mc, line), spec), line);
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            for (const auto& [key, line] : keyed) std::cout << line << "\n";
            return 0;
        }
        if (md_validate->parsed()) {
            Specification spec = load(mc);
            auto checks = validate_msd_list(input_lines(mc.input), spec, mc.language,
                                            parse_ordering(mc.ordering),
                                            mc.lenient ? DecodeMode::lenient
                                                       : DecodeMode::canonical);
            bool any_invalid = false;
            for (const auto& c : checks) {
                if (c.valid) {
                    std::cout << "OK\t" << c.msd;
                    if (!c.normalised.empty() && c.normalised != c.msd)
                        std::cout << "\t" << c.normalised;
                    std::cout << "\n";
                } else {
                    any_invalid = true;
                    std::cout << "INVALID\t" << c.msd << "\t" << c.reason << "\n";
                }
            }
            return any_invalid ? 1 : 0;
        }
        if (md_reloc->parsed()) {
            Specification spec = load(mc);
            Localisation target =
                md_target == "english" ? Localisation::english : Localisation::native;
            if (md_target != "english" && md_target != "native")
                throw Usage("unknown localisation target '" + md_target + "'");
            for (const auto& line : input_lines(mc.input))
                std::cout << relocalise(make_msd(mc, line), spec, target).text << "\n";
            return 0;
        }

        // lex ----------------------------------------------------------
        if (lx_validate->parsed() || lx_index->parsed()) {
            Specification spec = load(lc);
            LexiconOptions opts;
            opts.space_runs = lx_space_runs;
            opts.equals_shorthand = lx_equals;
            std::istringstream in(slurp(lc.input));
            Lexicon lex = load_lexicon(in, lc.language, opts);
            if (lx_validate->parsed())
                return print_report(validate_lexicon(lex, spec, parse_ordering(lc.ordering)),
                                    human);
            AnnotatedCorpus corpus;
            bool have_corpus = !lx_corpus.empty();
            if (have_corpus) corpus = load_corpus_file(lx_corpus, CorpusParseMode::permissive);
            auto index = build_msd_index(lex, spec, have_corpus ? &corpus : nullptr,
                                         parse_ordering(lc.ordering));
            std::cout << emit_msd_index(index, parse_format(lx_index_format), lc.language);
            return 0;
        }

        // corpus ---------------------------------------------------------
        if (cp_validate->parsed()) {
            Report findings;
            AnnotatedCorpus corpus = load_corpus(
                slurp(cp_input),
                cp_strict ? CorpusParseMode::strict : CorpusParseMode::permissive, &findings);
            Specification spec;
            bool have_spec = !cp_spec.empty();
            if (have_spec) spec = load_spec_file(cp_spec, parse_format(cp_format));
            findings.append(validate_corpus(corpus, have_spec ? &spec : nullptr));
            return print_report(findings, human);
        }
        if (cp_attach->parsed()) {
            AnnotatedCorpus corpus = load_corpus(slurp(cp_input), CorpusParseMode::permissive);
            Specification spec = load_spec_file(cp_spec, parse_format(cp_format));
            write_output(cp_out, emit_corpus(attach_libraries(std::move(corpus), spec,
                                                              parse_ordering(cp_ordering))));
            return 0;
        }
        if (cp_stats->parsed()) {
            AnnotatedCorpus corpus = load_corpus(slurp(cp_input), CorpusParseMode::permissive);
            CorpusStats stats = corpus_stats(corpus);
            auto row = [](const char* scope, const CountRow& r) {
                std::cout << scope << "\t" << r.id << "\t" << r.words << "\t" << r.punctuation
                          << "\t" << r.distinct_msds << "\n";
            };
            for (const auto& r : stats.sentences) row("SENTENCE", r);
            for (const auto& r : stats.divisions) row("DIVISION", r);
            row("TOTAL", stats.total);
            return 0;
        }

        // align ----------------------------------------------------------
        if (al_validate->parsed()) {
            Report findings;
            AlignmentGroup group = load_alignment(slurp(al_inputs[0]), &findings);
            std::vector<AnnotatedCorpus> corpora;
            for (size_t i = 1; i < al_inputs.size(); ++i)
                corpora.push_back(load_corpus_file(al_inputs[i], CorpusParseMode::permissive));
            std::vector<const AnnotatedCorpus*> slots(group.documents.size(), nullptr);
            for (size_t i = 0; i < corpora.size() && i < slots.size(); ++i)
                slots[i] = &corpora[i];
            findings.append(validate_alignment(group, slots));
            return print_report(findings, human);
        }
        if (al_compose->parsed()) {
            AlignmentGroup x = load_alignment(slurp(al_inputs[0]));
            AlignmentGroup y = load_alignment(slurp(al_inputs[1]));
            write_output(al_out, emit_alignment(compose(x, y)));
            return 0;
        }
        if (al_multi->parsed()) {
            std::vector<AlignmentGroup> groups;
            for (const auto& path : al_inputs) groups.push_back(load_alignment(slurp(path)));
            write_output(al_out, emit_alignment(compose_multiway(groups, al_include_hub)));
            return 0;
        }
        throw Usage("no subcommand selected");
    } catch (const Usage& e) {
        std::cerr << "mte: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "mte: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mte: " << e.what() << "\n";
        return 2;
    }
}
