// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/annotator.hpp"
#include "dkb/config.hpp"
#include "dkb/rules.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dkb {

/// Configuration of the six-step pipeline, read from a `key=value` file.
/// Seeds are mandatory so repeated runs are reproducible by construction.
struct PipelineConfig {
    // inputs
    std::string statements_path;        // pre-extracted article statements, or
    std::string docs_path;              // raw documents TSV `doc<TAB>text`
    std::string vocab_path;             // optional extraction vocabulary
    std::string synonyms_path;          // optional synonym table
    std::string thesaurus_path;         // hierarchy edges `child<TAB>parent`
    std::string gold_annotations_path;  // optional
    std::string gold_related_path;      // optional
    std::string output_dir;

    // corpus construction (raw key=value view, interpreted per knowledge base)
    KeyValueConfig corpus_keys;
    std::string symmetrize_link; // empty = no symmetrization

    // mining
    MiningConfig mining;

    // annotation
    std::size_t top_h = 0; // 0 = no truncation
    FiringMode firing_mode = FiringMode::Subset;
    double min_sim = 0.0;

    unsigned threads = 1;
    std::string extraction_link = "R";

    static PipelineConfig load(const std::string& path);
    static PipelineConfig from_keys(const KeyValueConfig& keys);
};

struct PipelineResult {
    std::size_t article_statements = 0;
    std::size_t thesaurus_statements = 0;
    std::size_t article_corpus_cells = 0;
    std::size_t thesaurus_corpus_cells = 0;
    std::size_t rules = 0;
    std::size_t annotated_docs = 0;
    bool evaluated = false;
};

/// Runs the whole pipeline: statement ingestion, knowledge base
/// construction for articles and thesaurus, base annotation, rule mining,
/// rule-based extension, and (when gold files are configured) evaluation.
/// All artifacts land in cfg.output_dir; a one-line summary per step goes
/// to `log`. Re-running with identical inputs and seed produces
/// byte-identical artifacts.
PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream& log);

} // namespace dkb
