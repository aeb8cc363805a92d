// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/perspective.hpp"
#include "dkb/rules.hpp"
#include "dkb/similarity.hpp"
#include "dkb/tensor.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dkb {

enum class AnnotationOrigin { Base, Extension };

std::string origin_name(AnnotationOrigin origin);

struct AnnotationEntry {
    TermId term = 0;
    double score = 0.0;
    AnnotationOrigin origin = AnnotationOrigin::Base;
};

/// Ranked annotations of one document. Entries are ordered by score
/// descending with ties broken by ascending term string; scores within each
/// origin class sum to 1 whenever the class is non-empty; terms are unique.
struct AnnotationSet {
    TermId doc = 0;
    std::vector<AnnotationEntry> entries;

    std::vector<AnnotationEntry> base_entries() const;
    std::vector<AnnotationEntry> extension_entries() const;
};

/// How a rule antecedent is matched against a document's annotations.
///   Subset       — fire when every antecedent argument is among the
///                  document's annotation terms (default)
///   Literal      — fire when the document's full annotation term set is a
///                  subset of the antecedent arguments
enum class FiringMode { Subset, Literal };

std::string firing_mode_name(FiringMode mode);
FiringMode parse_firing_mode(std::string_view name);

/// Memoized related-term lookups shared across documents of one run.
class RelatedTermCache {
public:
    RelatedTermCache(const Perspective& m, double min_sim, const TermDictionary& dict)
        : m_(m), min_sim_(min_sim), dict_(dict) {}

    const RelatedTermList& get(TermId term);

private:
    const Perspective& m_;
    double min_sim_;
    const TermDictionary& dict_;
    std::unordered_map<TermId, RelatedTermList> cache_;
};

/// Per-document term frequencies derived from the source tensor: the mass
/// of a term as subject plus its mass as object across the document's
/// statements. Keys and value lists are in ascending id order.
std::map<TermId, std::vector<std::pair<TermId, double>>>
doc_term_frequencies(const SourceTensor& g);

/// Base annotations of one document: every document term t with frequency
/// f contributes weight f * sim(t, t') for each perspective row t' with
/// positive similarity; weights of vocabulary candidates are collated and
/// normalized by their grand total, so scores sum to 1. Document terms
/// missing from the perspective rows contribute nothing (counted in
/// `skipped_terms` when given). `target_vocab` of nullptr admits every
/// candidate.
AnnotationSet base_annotations(TermId doc,
                               std::span<const std::pair<TermId, double>> term_freqs,
                               const Perspective& m,
                               const std::unordered_set<TermId>* target_vocab,
                               const TermDictionary& dict,
                               double min_sim = 0.0,
                               RelatedTermCache* cache = nullptr,
                               std::size_t* skipped_terms = nullptr);

/// Applies mined rules to a document's base annotations. Every fired rule
/// contributes its confidence to each consequent argument not already
/// annotated; contributions are normalized by their grand total, so
/// extension scores sum to 1. Base entries are never rescored or removed.
AnnotationSet extend_annotations(const AnnotationSet& base, std::span<const Rule> rules,
                                 FiringMode mode, const TermDictionary& dict);

/// First `h` entries of the ranking (a prefix: scores are not rescaled).
AnnotationSet truncate_top(const AnnotationSet& set, std::size_t h);

/// Base annotations for every document of the source tensor, documents in
/// ascending doc-string order. `threads` > 1 distributes documents across
/// worker threads; results are deterministic regardless.
std::vector<AnnotationSet> annotate_corpus(const SourceTensor& g, const Perspective& m,
                                           const std::unordered_set<TermId>* target_vocab,
                                           const TermDictionary& dict, double min_sim,
                                           unsigned threads, std::size_t* skipped_terms = nullptr);

// Annotation persistence: TSV `doc<TAB>term<TAB>score<TAB>origin` with
// 6-decimal scores, rows grouped by document in ranking order.

void save_annotations(std::span<const AnnotationSet> sets, const TermDictionary& dict,
                      std::ostream& out);
void save_annotations(std::span<const AnnotationSet> sets, const TermDictionary& dict,
                      const std::string& path);
std::vector<AnnotationSet> load_annotations(const std::string& path, TermDictionary& dict);

} // namespace dkb
