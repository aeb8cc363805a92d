// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

// Command line front end for the distributional knowledge base toolkit.
// Each subcommand reads its declared inputs, writes its declared outputs
// and prints a one-line summary; `pipeline` chains the whole run.

#include "dkb/annotator.hpp"
#include "dkb/corpus.hpp"
#include "dkb/error.hpp"
#include "dkb/evaluator.hpp"
#include "dkb/ingest.hpp"
#include "dkb/perspective.hpp"
#include "dkb/pipeline.hpp"
#include "dkb/rules.hpp"
#include "dkb/similarity.hpp"
#include "dkb/tensor.hpp"
#include "dkb/text_io.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace {

using namespace dkb;

struct IngestArgs {
    std::vector<std::string> statement_files;
    std::string docs_file;
    std::string vocab_file;
    std::string synonyms_file;
    std::string thesaurus_file;
    std::string link = "R";
    std::string thesaurus_doc = "thesaurus";
    std::string out;
};

int run_ingest(const IngestArgs& args) {
    TermDictionary dict;
    std::vector<Statement> statements;
    for (const std::string& path : args.statement_files) {
        auto parsed = parse_statement_file(path, dict);
        statements.insert(statements.end(), parsed.begin(), parsed.end());
    }
    if (!args.docs_file.empty()) {
        SynonymTable synonyms;
        if (!args.synonyms_file.empty()) {
            synonyms = SynonymTable::load(args.synonyms_file);
        }
        std::optional<std::vector<std::string>> vocab;
        if (!args.vocab_file.empty()) {
            vocab.emplace();
            for_each_tsv_line(read_file(args.vocab_file),
                              [&](std::size_t, const std::vector<std::string_view>& f) {
                                  vocab->emplace_back(f[0]);
                              });
        }
        for_each_tsv_line(
            read_file(args.docs_file),
            [&](std::size_t line_no, const std::vector<std::string_view>& f) {
                if (f.size() != 2) {
                    throw ParseError(args.docs_file + ":" + std::to_string(line_no) +
                                     ": expected doc<TAB>text");
                }
                auto extracted = extract_cooccurrence(f[1], synonyms, vocab ? &*vocab : nullptr,
                                                      f[0], args.link, dict);
                statements.insert(statements.end(), extracted.begin(), extracted.end());
            });
    }
    if (!args.thesaurus_file.empty()) {
        auto edges = load_thesaurus(args.thesaurus_file);
        auto flattened = thesaurus_to_statements(edges, args.link, args.thesaurus_doc, dict);
        statements.insert(statements.end(), flattened.begin(), flattened.end());
    }
    save_statement_file(statements, dict, args.out);
    std::cout << "ingest: " << statements.size() << " statements -> " << args.out << "\n";
    return 0;
}

struct BuildArgs {
    std::string statements;
    std::string config;
    std::string symmetrize_link;
    std::string source_out;
    std::string corpus_out;
    std::string perspective_mode = "s/po";
    std::string perspective_out;
};

int run_build(const BuildArgs& args) {
    TermDictionary dict;
    auto statements = parse_statement_file(args.statements, dict);
    SourceTensor g = build_source(statements, dict);

    KeyValueConfig keys;
    if (!args.config.empty()) {
        keys = KeyValueConfig::load(args.config);
    }
    CorpusConfig cfg = corpus_config_from(keys, dict);
    CorpusTensor c = build_corpus(g, cfg, dict);
    if (!args.symmetrize_link.empty()) {
        if (auto link = dict.find(args.symmetrize_link)) {
            c = symmetrize(c, *link);
        }
    }
    if (!args.source_out.empty()) {
        save_source(g, dict, args.source_out);
    }
    save_corpus(c, dict, args.corpus_out);
    if (!args.perspective_out.empty()) {
        Perspective m = matricize(c, parse_mode(args.perspective_mode), dict);
        save_perspective(m, dict, args.perspective_out);
    }
    std::cout << "build: " << g.cell_count() << " source cells, " << c.cell_count()
              << " corpus cells -> " << args.corpus_out << "\n";
    return 0;
}

struct SimilarArgs {
    std::string corpus;
    std::string term;
    std::string mode = "s/po";
    double min_sim = 0.0;
    std::size_t top = 0;
    std::string out;
};

int run_similar(const SimilarArgs& args) {
    TermDictionary dict;
    CorpusTensor c = load_corpus(args.corpus, dict);
    Perspective m = matricize(c, parse_mode(args.mode), dict);
    auto term = dict.find(args.term);
    if (!term) {
        throw StructuralError("term '" + args.term + "' does not occur in the corpus");
    }
    RelatedTermList related = related_terms(m, *term, args.min_sim, dict);
    std::ostringstream out;
    std::size_t emitted = 0;
    for (const RelatedTerm& r : related.entries) {
        if (args.top > 0 && emitted >= args.top) {
            break;
        }
        out << dict.term(r.term) << '\t' << format_fixed(r.similarity, 6) << '\n';
        ++emitted;
    }
    if (args.out.empty()) {
        std::cout << out.str();
        std::cout << "similar: " << emitted << " related terms for '" << args.term << "'\n";
    } else {
        write_file(args.out, out.str());
        std::cout << "similar: " << emitted << " related terms for '" << args.term << "' -> "
                  << args.out << "\n";
    }
    return 0;
}

struct MineArgs {
    std::string corpus;
    std::string out;
    MiningConfig cfg;
    int reduce_to = 0;
    std::string variable = "subject";
};

int run_mine(MineArgs& args) {
    TermDictionary dict;
    CorpusTensor c = load_corpus(args.corpus, dict);
    if (args.reduce_to > 0) {
        args.cfg.reduce_to = args.reduce_to;
    }
    args.cfg.variable = parse_rule_variable(args.variable);
    MiningOutcome outcome = mine_rules(c, args.cfg, dict);
    save_rules(outcome.rules, dict, args.out);
    std::cout << "mine: " << outcome.rules.size() << " rules in " << outcome.iterations
              << " iterations -> " << args.out;
    if (!outcome.note.empty()) {
        std::cout << " (" << outcome.note << ")";
    }
    std::cout << "\n";
    return 0;
}

struct AnnotateArgs {
    std::string source;
    std::string corpus;
    std::string vocab_file;
    std::string thesaurus_file;
    double min_sim = 0.0;
    std::size_t top = 0;
    unsigned threads = 1;
    std::string out;
};

int run_annotate(const AnnotateArgs& args) {
    TermDictionary dict;
    SourceTensor g = load_source(args.source, dict);
    CorpusTensor c = load_corpus(args.corpus, dict);

    std::unordered_set<TermId> vocab;
    bool restrict_vocab = false;
    if (!args.vocab_file.empty()) {
        restrict_vocab = true;
        for_each_tsv_line(read_file(args.vocab_file),
                          [&](std::size_t, const std::vector<std::string_view>& f) {
                              if (auto id = dict.find(f[0])) {
                                  vocab.insert(*id);
                              }
                          });
    }
    if (!args.thesaurus_file.empty()) {
        restrict_vocab = true;
        for (const ThesaurusEdge& e : load_thesaurus(args.thesaurus_file)) {
            if (auto id = dict.find(e.child)) {
                vocab.insert(*id);
            }
            if (auto id = dict.find(e.parent)) {
                vocab.insert(*id);
            }
        }
    }

    Perspective m = matricize(c, Mode::SubjectByLinkObject, dict);
    std::size_t skipped = 0;
    auto sets = annotate_corpus(g, m, restrict_vocab ? &vocab : nullptr, dict, args.min_sim,
                                args.threads, &skipped);
    if (args.top > 0) {
        for (AnnotationSet& set : sets) {
            set = truncate_top(set, args.top);
        }
    }
    save_annotations(sets, dict, args.out);
    std::cout << "annotate: " << sets.size() << " documents (" << skipped << " terms skipped) -> "
              << args.out << "\n";
    return 0;
}

struct ExtendArgs {
    std::string annotations;
    std::string rules;
    std::string mode = "subset";
    std::string out;
};

int run_extend(const ExtendArgs& args) {
    TermDictionary dict;
    auto sets = load_annotations(args.annotations, dict);
    auto rules = load_rules(args.rules, dict);
    FiringMode mode = parse_firing_mode(args.mode);
    std::size_t extensions = 0;
    std::vector<AnnotationSet> extended;
    extended.reserve(sets.size());
    for (const AnnotationSet& set : sets) {
        extended.push_back(extend_annotations(set, rules, mode, dict));
        extensions += extended.back().extension_entries().size();
    }
    save_annotations(extended, dict, args.out);
    std::cout << "extend: " << extensions << " extension entries across " << extended.size()
              << " documents -> " << args.out << "\n";
    return 0;
}

StringAnnotations load_string_annotations(const std::string& path) {
    TermDictionary dict;
    StringAnnotations out;
    for (const AnnotationSet& set : load_annotations(path, dict)) {
        auto& vec = out[dict.term(set.doc)];
        for (const AnnotationEntry& e : set.entries) {
            vec.emplace_back(dict.term(e.term), e.score);
        }
    }
    return out;
}

struct EvaluateArgs {
    std::string base;
    std::string extended;
    std::string gold_annotations;
    std::string gold_related;
    std::string json_out;
    std::string text_out;
};

int run_evaluate(const EvaluateArgs& args) {
    StringAnnotations base = load_string_annotations(args.base);
    StringAnnotations extended =
        args.extended.empty() ? base : load_string_annotations(args.extended);
    auto gold_annotations = load_gold_annotations(args.gold_annotations);
    std::map<std::string, std::set<std::string>> gold_related;
    if (!args.gold_related.empty()) {
        gold_related = load_gold_related(args.gold_related);
    }
    EvalReport report = evaluate_corpus(base, extended, gold_annotations,
                                        args.gold_related.empty() ? nullptr : &gold_related);
    if (!args.json_out.empty()) {
        write_file(args.json_out, report_json(report));
    }
    if (!args.text_out.empty()) {
        write_file(args.text_out, report_text(report));
    } else {
        std::cout << report_text(report);
    }
    std::cout << "evaluate: " << report.annotation.size() << " annotation variants, "
              << report.retrieval.size() << " retrieval variants\n";
    return 0;
}

struct RelatedArgs {
    std::string annotations;
    std::string doc;
    std::size_t top = 0;
    std::string out;
};

int run_related(const RelatedArgs& args) {
    StringAnnotations features = load_string_annotations(args.annotations);
    std::string diagnostic;
    auto related = related_documents(
        features, args.doc, args.top > 0 ? std::optional<std::size_t>(args.top) : std::nullopt,
        &diagnostic);
    std::ostringstream out;
    for (const RelatedDoc& r : related) {
        out << r.doc << '\t' << format_fixed(r.score, 6) << '\n';
    }
    if (args.out.empty()) {
        std::cout << out.str();
    } else {
        write_file(args.out, out.str());
    }
    std::cout << "related: " << related.size() << " documents for '" << args.doc << "'";
    if (!diagnostic.empty()) {
        std::cout << " (" << diagnostic << ")";
    }
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributional knowledge base toolkit"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "normalize statements from files, documents and thesauri");
    ingest->add_option("--statements", ingest_args.statement_files, "statement TSV file(s)");
    ingest->add_option("--docs", ingest_args.docs_file, "documents TSV (doc<TAB>text)");
    ingest->add_option("--vocab", ingest_args.vocab_file, "extraction vocabulary, one term per line");
    ingest->add_option("--synonyms", ingest_args.synonyms_file, "synonym TSV (synonym<TAB>preferred)");
    ingest->add_option("--thesaurus", ingest_args.thesaurus_file, "hierarchy TSV (child<TAB>parent)");
    ingest->add_option("--link", ingest_args.link, "link term for extracted statements");
    ingest->add_option("--thesaurus-doc", ingest_args.thesaurus_doc, "provenance id for thesaurus statements");
    ingest->add_option("--out", ingest_args.out, "output statement TSV")->required();

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "build source and corpus tensors from statements");
    build->add_option("--statements", build_args.statements, "statement TSV")->required();
    build->add_option("--config", build_args.config, "corpus config (key=value)");
    build->add_option("--symmetrize-link", build_args.symmetrize_link, "symmetrize this link in the corpus");
    build->add_option("--source-out", build_args.source_out, "source tensor TSV output");
    build->add_option("--corpus-out", build_args.corpus_out, "corpus tensor TSV output")->required();
    build->add_option("--perspective", build_args.perspective_mode, "matricization mode to emit");
    build->add_option("--perspective-out", build_args.perspective_out, "perspective TSV output");

    SimilarArgs similar_args;
    auto* similar = app.add_subcommand("similar", "related terms of a query term");
    similar->add_option("--corpus", similar_args.corpus, "corpus tensor TSV")->required();
    similar->add_option("--term", similar_args.term, "query term")->required();
    similar->add_option("--mode", similar_args.mode, "perspective mode (default s/po)");
    similar->add_option("--min-sim", similar_args.min_sim, "similarity threshold (strict)");
    similar->add_option("--top", similar_args.top, "emit at most this many terms");
    similar->add_option("--out", similar_args.out, "output TSV (default stdout)");

    MineArgs mine_args;
    auto* mine = app.add_subcommand("mine", "mine IF-THEN rules from a corpus");
    mine->add_option("--corpus", mine_args.corpus, "corpus tensor TSV")->required();
    mine->add_option("--out", mine_args.out, "rules JSONL output")->required();
    mine->add_option("--confidence", mine_args.cfg.confidence_threshold, "confidence threshold (keep >=)");
    mine->add_option("--max-rule-size", mine_args.cfg.max_rule_size, "maximum statements per rule");
    mine->add_option("--stagnation", mine_args.cfg.stagnation_window, "stop after this many quiet iterations");
    mine->add_option("--seed", mine_args.cfg.seed, "mining seed")->required();
    mine->add_option("--reduce-to", mine_args.reduce_to, "reduce training columns to this many dimensions");
    mine->add_option("--variable", mine_args.variable, "rule variable slot: subject or object");

    AnnotateArgs annotate_args;
    auto* annotate = app.add_subcommand("annotate", "compute base annotations for every document");
    annotate->add_option("--source", annotate_args.source, "source tensor TSV")->required();
    annotate->add_option("--corpus", annotate_args.corpus, "corpus tensor TSV")->required();
    annotate->add_option("--vocab", annotate_args.vocab_file, "target vocabulary, one term per line");
    annotate->add_option("--thesaurus", annotate_args.thesaurus_file, "thesaurus TSV as target vocabulary");
    annotate->add_option("--min-sim", annotate_args.min_sim, "similarity threshold");
    annotate->add_option("--top", annotate_args.top, "keep the top h annotations per document");
    annotate->add_option("--threads", annotate_args.threads, "worker threads");
    annotate->add_option("--out", annotate_args.out, "annotations TSV output")->required();

    ExtendArgs extend_args;
    auto* extend = app.add_subcommand("extend", "extend annotations with mined rules");
    extend->add_option("--annotations", extend_args.annotations, "base annotations TSV")->required();
    extend->add_option("--rules", extend_args.rules, "rules JSONL")->required();
    extend->add_option("--mode", extend_args.mode, "firing mode: subset or literal");
    extend->add_option("--out", extend_args.out, "extended annotations TSV output")->required();

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand("evaluate", "score annotations against gold standards");
    evaluate->add_option("--base", evaluate_args.base, "base annotations TSV")->required();
    evaluate->add_option("--extended", evaluate_args.extended, "extended annotations TSV");
    evaluate->add_option("--gold-annotations", evaluate_args.gold_annotations, "gold TSV (doc<TAB>term)")
        ->required();
    evaluate->add_option("--gold-related", evaluate_args.gold_related, "gold related TSV (doc<TAB>doc)");
    evaluate->add_option("--json", evaluate_args.json_out, "JSON report output");
    evaluate->add_option("--text", evaluate_args.text_out, "text report output");

    RelatedArgs related_args;
    auto* related = app.add_subcommand("related", "related documents under the vector space model");
    related->add_option("--annotations", related_args.annotations, "annotations TSV as features")->required();
    related->add_option("--doc", related_args.doc, "query document id")->required();
    related->add_option("--top", related_args.top, "truncate to the top h documents");
    related->add_option("--out", related_args.out, "output TSV (default stdout)");

    std::string pipeline_config;
    auto* pipeline = app.add_subcommand("pipeline", "run the whole six-step pipeline from a config file");
    pipeline->add_option("--config", pipeline_config, "pipeline config (key=value)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit 2, --help exits 0
    }

    try {
        if (ingest->parsed()) return run_ingest(ingest_args);
        if (build->parsed()) return run_build(build_args);
        if (similar->parsed()) return run_similar(similar_args);
        if (mine->parsed()) return run_mine(mine_args);
        if (annotate->parsed()) return run_annotate(annotate_args);
        if (extend->parsed()) return run_extend(extend_args);
        if (evaluate->parsed()) return run_evaluate(evaluate_args);
        if (related->parsed()) return run_related(related_args);
        if (pipeline->parsed()) {
            PipelineConfig cfg = PipelineConfig::load(pipeline_config);
            run_pipeline(cfg, std::cout);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
