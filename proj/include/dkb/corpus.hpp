// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/config.hpp"
#include "dkb/tensor.hpp"

#include <optional>
#include <string>
#include <unordered_map>

namespace dkb {

enum class DocWeight { ConstantOne, Table };
enum class StatementRelevance { Unit, Pmi, PositivePmi };
enum class Aggregation { Product, RelativeFrequency };

/// Strategy choice for the corpus construction c(s,p,o) =
/// aggregate(sum_d weight(d) * g(s,p,o,d), relevance(s,p,o)).
///
/// Aggregations:
///   - product:             weighted sum * relevance
///   - relative-frequency:  (weighted sum * relevance) / total weighted mass
///
/// Relevance strategies:
///   - unit:          1 for every triple
///   - pmi:           pointwise mutual information of (subject, object),
///                    natural log (base fixed here; support sums are not
///                    scale-free, cosine is)
///   - positive-pmi:  max(0, pmi); keeps all corpus values non-negative,
///                    which the generalized support and matrix norm assume
struct CorpusConfig {
    DocWeight doc_weight = DocWeight::ConstantOne;
    StatementRelevance statement_relevance = StatementRelevance::Unit;
    Aggregation aggregation = Aggregation::Product;
    std::unordered_map<TermId, double> weight_table;
    std::optional<double> weight_default;
};

/// Reads `doc_weight`, `statement_relevance`, `aggregation` and the optional
/// `doc_weight_table` / `doc_weight_default` keys. The weight table file is
/// TSV `doc<TAB>weight`; docs are interned into `dict`. Missing keys default
/// to the experimental setup (constant-1, positive-pmi, product).
CorpusConfig corpus_config_from(const KeyValueConfig& cfg, TermDictionary& dict);

/// Builds the corpus tensor C from the source tensor G. Zero-valued results
/// are not stored. Deterministic: contributions are accumulated in sorted
/// cell order. Throws ConfigError when a table weight is missing and no
/// default is declared.
CorpusTensor build_corpus(const SourceTensor& g, const CorpusConfig& cfg, const TermDictionary& dict);

/// Pointwise mutual information of (subject, object) over the source tensor:
/// log(p(s,o) / (p(s) p(o))) with probabilities taken as shares of the total
/// statement mass. Natural logarithm. Throws DomainError naming the term
/// whose marginal is zero.
double pmi(const SourceTensor& g, TermId subject, TermId object, const TermDictionary& dict);

} // namespace dkb
