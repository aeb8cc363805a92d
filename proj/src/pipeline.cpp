// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/pipeline.hpp"
#include "dkb/corpus.hpp"
#include "dkb/error.hpp"
#include "dkb/evaluator.hpp"
#include "dkb/ingest.hpp"
#include "dkb/perspective.hpp"
#include "dkb/text_io.hpp"

#include <filesystem>
#include <ostream>
#include <unordered_set>

namespace dkb {

PipelineConfig PipelineConfig::load(const std::string& path) {
    return from_keys(KeyValueConfig::load(path));
}

PipelineConfig PipelineConfig::from_keys(const KeyValueConfig& keys) {
    PipelineConfig cfg;
    auto path_of = [&](const char* key) {
        return keys.has(key) ? keys.resolve(keys.require(key)) : std::string();
    };
    cfg.statements_path = path_of("statements");
    cfg.docs_path = path_of("docs");
    cfg.vocab_path = path_of("vocab");
    cfg.synonyms_path = path_of("synonyms");
    cfg.thesaurus_path = path_of("thesaurus");
    cfg.gold_annotations_path = path_of("gold_annotations");
    cfg.gold_related_path = path_of("gold_related");
    cfg.output_dir = path_of("output_dir");
    if (cfg.output_dir.empty()) {
        throw ConfigError("missing required config key 'output_dir'");
    }
    if (cfg.statements_path.empty() && cfg.docs_path.empty()) {
        throw ConfigError("pipeline needs 'statements' or 'docs'");
    }
    if (cfg.thesaurus_path.empty()) {
        throw ConfigError("missing required config key 'thesaurus'");
    }

    cfg.corpus_keys = keys;
    cfg.symmetrize_link = keys.get_or("symmetrize_link", "");

    cfg.mining.max_rule_size = static_cast<int>(keys.get_int("max_rule_size", 3));
    cfg.mining.confidence_threshold = keys.get_double("confidence_threshold", 0.5);
    cfg.mining.stagnation_window = static_cast<int>(keys.get_int("stagnation_window", 10));
    // No wall-clock fallback: a missing seed is a configuration error.
    cfg.mining.seed = static_cast<std::uint64_t>(parse_int(keys.require("seed"), "config key 'seed'"));
    long long reduce_to = keys.get_int("reduce_to", 0);
    if (reduce_to > 0) {
        cfg.mining.reduce_to = static_cast<int>(reduce_to);
    }
    if (keys.has("rule_variable")) {
        cfg.mining.variable = parse_rule_variable(keys.require("rule_variable"));
    }

    cfg.top_h = static_cast<std::size_t>(keys.get_int("top_h", 0));
    cfg.firing_mode = parse_firing_mode(keys.get_or("firing_mode", "subset"));
    cfg.min_sim = keys.get_double("min_sim", 0.0);
    cfg.threads = static_cast<unsigned>(keys.get_int("threads", 1));
    cfg.extraction_link = keys.get_or("extraction_link", "R");
    return cfg;
}

namespace {

std::vector<Statement> gather_article_statements(const PipelineConfig& cfg, TermDictionary& dict) {
    std::vector<Statement> statements;
    if (!cfg.statements_path.empty()) {
        statements = parse_statement_file(cfg.statements_path, dict);
    }
    if (!cfg.docs_path.empty()) {
        SynonymTable synonyms;
        if (!cfg.synonyms_path.empty()) {
            synonyms = SynonymTable::load(cfg.synonyms_path);
        }
        std::optional<std::vector<std::string>> vocab;
        if (!cfg.vocab_path.empty()) {
            vocab.emplace();
            std::string text = read_file(cfg.vocab_path);
            for_each_tsv_line(text, [&](std::size_t, const std::vector<std::string_view>& f) {
                vocab->emplace_back(f[0]);
            });
        }
        std::string text = read_file(cfg.docs_path);
        for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
            if (f.size() != 2) {
                throw ParseError(cfg.docs_path + ":" + std::to_string(line_no) +
                                 ": expected doc<TAB>text");
            }
            auto extracted = extract_cooccurrence(f[1], synonyms, vocab ? &*vocab : nullptr,
                                                  f[0], cfg.extraction_link, dict);
            statements.insert(statements.end(), extracted.begin(), extracted.end());
        });
    }
    return statements;
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
    PipelineResult result;
    std::filesystem::create_directories(cfg.output_dir);
    auto out_path = [&](const char* name) {
        return (std::filesystem::path(cfg.output_dir) / name).string();
    };

    // Every step below reads the files the previous step wrote, exactly as
    // the standalone subcommands do, so `pipeline` equals their composition
    // byte for byte.

    // Step 1: statement extraction / ingestion for both knowledge bases.
    {
        TermDictionary dict;
        std::vector<Statement> statements = gather_article_statements(cfg, dict);
        save_statement_file(statements, dict, out_path("article_statements.tsv"));
        result.article_statements = statements.size();
    }
    {
        TermDictionary dict;
        std::vector<ThesaurusEdge> edges = load_thesaurus(cfg.thesaurus_path);
        std::vector<Statement> statements =
            thesaurus_to_statements(edges, cfg.extraction_link, "thesaurus", dict);
        save_statement_file(statements, dict, out_path("thesaurus_statements.tsv"));
        result.thesaurus_statements = statements.size();
    }
    log << "ingest: " << result.article_statements << " article statements, "
        << result.thesaurus_statements << " thesaurus statements\n";

    // Step 2: knowledge bases (source + corpus tensors).
    auto build_kb = [&](const char* statements_name, const char* source_name,
                        const char* corpus_name) {
        TermDictionary dict;
        std::vector<Statement> statements = parse_statement_file(out_path(statements_name), dict);
        SourceTensor g = build_source(statements, dict);
        CorpusConfig corpus_cfg = corpus_config_from(cfg.corpus_keys, dict);
        CorpusTensor c = build_corpus(g, corpus_cfg, dict);
        if (!cfg.symmetrize_link.empty()) {
            if (auto link = dict.find(cfg.symmetrize_link)) {
                c = symmetrize(c, *link);
            }
        }
        save_source(g, dict, out_path(source_name));
        save_corpus(c, dict, out_path(corpus_name));
        return c.cell_count();
    };
    result.article_corpus_cells =
        build_kb("article_statements.tsv", "article_source.tsv", "article_corpus.tsv");
    result.thesaurus_corpus_cells =
        build_kb("thesaurus_statements.tsv", "thesaurus_source.tsv", "thesaurus_corpus.tsv");
    log << "build: article corpus " << result.article_corpus_cells << " cells, thesaurus corpus "
        << result.thesaurus_corpus_cells << " cells\n";

    // Step 3: base annotations from the article knowledge base, restricted
    // to the thesaurus vocabulary.
    {
        TermDictionary dict;
        SourceTensor g = load_source(out_path("article_source.tsv"), dict);
        CorpusTensor c = load_corpus(out_path("article_corpus.tsv"), dict);
        std::unordered_set<TermId> vocab;
        for (const ThesaurusEdge& e : load_thesaurus(cfg.thesaurus_path)) {
            if (auto id = dict.find(e.child)) {
                vocab.insert(*id);
            }
            if (auto id = dict.find(e.parent)) {
                vocab.insert(*id);
            }
        }
        Perspective view = matricize(c, Mode::SubjectByLinkObject, dict);
        std::size_t skipped_terms = 0;
        std::vector<AnnotationSet> base =
            annotate_corpus(g, view, &vocab, dict, cfg.min_sim, cfg.threads, &skipped_terms);
        if (cfg.top_h > 0) {
            for (AnnotationSet& set : base) {
                set = truncate_top(set, cfg.top_h);
            }
        }
        save_annotations(base, dict, out_path("annotations_base.tsv"));
        result.annotated_docs = base.size();
        log << "annotate: " << base.size() << " documents (" << skipped_terms
            << " terms without perspective rows)\n";
    }

    // Step 4: rules from the thesaurus knowledge base.
    {
        TermDictionary dict;
        CorpusTensor c = load_corpus(out_path("thesaurus_corpus.tsv"), dict);
        MiningOutcome mining = mine_rules(c, cfg.mining, dict);
        save_rules(mining.rules, dict, out_path("rules.jsonl"));
        result.rules = mining.rules.size();
        log << "mine: " << mining.rules.size() << " rules in " << mining.iterations
            << " iterations";
        if (!mining.note.empty()) {
            log << " (" << mining.note << ")";
        }
        log << "\n";
    }

    // Step 5: rule-based extension of the base annotations.
    {
        TermDictionary dict;
        std::vector<AnnotationSet> base = load_annotations(out_path("annotations_base.tsv"), dict);
        std::vector<Rule> rules = load_rules(out_path("rules.jsonl"), dict);
        std::vector<AnnotationSet> extended;
        extended.reserve(base.size());
        std::size_t extension_entries = 0;
        for (const AnnotationSet& set : base) {
            extended.push_back(extend_annotations(set, rules, cfg.firing_mode, dict));
            extension_entries += extended.back().extension_entries().size();
        }
        save_annotations(extended, dict, out_path("annotations_extended.tsv"));
        log << "extend: " << extension_entries << " extension entries across " << extended.size()
            << " documents\n";
    }

    // Step 6: evaluation, when gold standards are available.
    if (!cfg.gold_annotations_path.empty()) {
        auto load_string_annotations = [](const std::string& path) {
            TermDictionary dict;
            StringAnnotations out;
            for (const AnnotationSet& set : load_annotations(path, dict)) {
                auto& vec = out[dict.term(set.doc)];
                for (const AnnotationEntry& e : set.entries) {
                    vec.emplace_back(dict.term(e.term), e.score);
                }
            }
            return out;
        };
        StringAnnotations base = load_string_annotations(out_path("annotations_base.tsv"));
        StringAnnotations extended = load_string_annotations(out_path("annotations_extended.tsv"));
        auto gold_annotations = load_gold_annotations(cfg.gold_annotations_path);
        std::map<std::string, std::set<std::string>> gold_related;
        if (!cfg.gold_related_path.empty()) {
            gold_related = load_gold_related(cfg.gold_related_path);
        }
        EvalReport report = evaluate_corpus(base, extended, gold_annotations,
                                            cfg.gold_related_path.empty() ? nullptr : &gold_related);
        write_file(out_path("report.json"), report_json(report));
        write_file(out_path("report.txt"), report_text(report));
        result.evaluated = true;
        log << "evaluate: report written (" << report.annotation.size() << " annotation variants, "
            << report.retrieval.size() << " retrieval variants)\n";
    } else {
        log << "evaluate: skipped (no gold_annotations configured)\n";
    }
    return result;
}

} // namespace dkb
