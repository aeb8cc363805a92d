// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dkb {

// The evaluator works on plain strings (document ids and term strings):
// it compares artifacts that may come from different knowledge bases and
// gold files, so dictionary ids would not line up anyway.

/// Ranked annotation lists per document: doc -> [(term, weight)] in rank order.
using StringAnnotations = std::map<std::string, std::vector<std::pair<std::string, double>>>;

/// Set precision and recall of a ranked list against a gold set, optionally
/// truncated to the first `cutoff` entries. Precision of an empty list is 0.
/// Throws DomainError when gold is empty (recall undefined).
std::pair<double, double> precision_recall(std::span<const std::string> computed,
                                           const std::set<std::string>& gold,
                                           std::optional<std::size_t> cutoff = std::nullopt);

/// Standard average precision: mean over gold items of precision at their
/// rank; gold items never retrieved contribute 0. Throws DomainError when
/// gold is empty.
double average_precision(std::span<const std::string> computed, const std::set<std::string>& gold);

struct RelatedDoc {
    std::string doc;
    double score = 0.0;
};

/// Documents related to `query` under the vector space model: every other
/// document with positive cosine to the query vector, ranked descending
/// (ties by ascending doc id), optionally truncated to `top`. A zero query
/// vector yields an empty result and sets `diagnostic` when given.
std::vector<RelatedDoc> related_documents(const StringAnnotations& features,
                                          const std::string& query,
                                          std::optional<std::size_t> top = std::nullopt,
                                          std::string* diagnostic = nullptr);

struct PerDocMetrics {
    std::string doc;
    double average_precision = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct VariantSummary {
    std::string name;
    double map = 0.0;       // mean average precision
    double precision = 0.0; // arithmetic mean over documents
    double recall = 0.0;
    double f1 = 0.0;        // from the mean precision/recall
    std::size_t documents = 0;
    std::size_t skipped = 0; // documents missing from the gold standard
    std::vector<PerDocMetrics> per_doc;
};

/// Evaluation against gold annotations (one summary per annotation variant)
/// and, when gold related sets are given, against them via vector-space
/// related-document retrieval (one summary per feature variant and cutoff).
struct EvalReport {
    std::vector<VariantSummary> annotation;
    std::vector<VariantSummary> retrieval;
};

/// Metrics of arbitrary named annotation variants against gold annotation
/// sets; documents absent from gold are skipped and counted.
std::vector<VariantSummary> evaluate_annotation_variants(
    const std::vector<std::pair<std::string, const StringAnnotations*>>& variants,
    const std::map<std::string, std::vector<std::string>>& gold_annotations);

/// Related-document retrieval metrics for one feature variant. For every
/// document present in both `features` and `gold_related`, ranks the other
/// documents and scores the full ranking ("ALL") and the prefix of length
/// |gold related set| ("TOP").
std::pair<VariantSummary, VariantSummary> evaluate_retrieval_variant(
    const std::string& name, const StringAnnotations& features,
    const std::map<std::string, std::set<std::string>>& gold_related);

/// The full report: BASE/ALL, BASE/TOP (per-document gold-sized prefix) and
/// EXT/ALL against gold annotations, plus retrieval summaries for the same
/// variants and the gold ("HUMAN", binary-weighted) features.
EvalReport evaluate_corpus(const StringAnnotations& base, const StringAnnotations& extended,
                           const std::map<std::string, std::vector<std::string>>& gold_annotations,
                           const std::map<std::string, std::set<std::string>>* gold_related);

/// Aligned plain-text rendering (metric rows by variant columns, percent).
std::string report_text(const EvalReport& report);
/// JSON rendering with raw [0,1] values and per-document detail.
std::string report_json(const EvalReport& report);

// Gold standard file loaders: `doc<TAB>term` and `doc<TAB>related_doc`.
std::map<std::string, std::vector<std::string>> load_gold_annotations(const std::string& path);
std::map<std::string, std::set<std::string>> load_gold_related(const std::string& path);

} // namespace dkb
