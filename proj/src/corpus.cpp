// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/corpus.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include <cmath>
#include <map>

namespace dkb {

namespace {

struct PmiTable {
    std::unordered_map<std::uint64_t, double> joint; // (subject<<32)|object
    std::unordered_map<TermId, double> subject_marginal;
    std::unordered_map<TermId, double> object_marginal;
    double total = 0.0;

    static std::uint64_t pair_key(TermId s, TermId o) {
        return (std::uint64_t(s) << 32) | o;
    }
};

PmiTable build_pmi_table(const SourceTensor& g) {
    PmiTable t;
    for (const auto& [key, value] : g.sorted_cells()) {
        t.joint[PmiTable::pair_key(key.subject, key.object)] += value;
        t.subject_marginal[key.subject] += value;
        t.object_marginal[key.object] += value;
        t.total += value;
    }
    return t;
}

double pmi_from_table(const PmiTable& t, TermId subject, TermId object, const TermDictionary& dict) {
    auto sm = t.subject_marginal.find(subject);
    if (sm == t.subject_marginal.end() || sm->second <= 0.0) {
        throw DomainError("pmi undefined: term '" + dict.term(subject) + "' has zero subject marginal");
    }
    auto om = t.object_marginal.find(object);
    if (om == t.object_marginal.end() || om->second <= 0.0) {
        throw DomainError("pmi undefined: term '" + dict.term(object) + "' has zero object marginal");
    }
    auto j = t.joint.find(PmiTable::pair_key(subject, object));
    double joint = j == t.joint.end() ? 0.0 : j->second;
    // log(0) = -inf for never co-occurring pairs; callers that need
    // finite values clamp via positive-pmi.
    return std::log(joint * t.total / (sm->second * om->second));
}

double doc_weight_of(const CorpusConfig& cfg, TermId doc, const TermDictionary& dict) {
    if (cfg.doc_weight == DocWeight::ConstantOne) {
        return 1.0;
    }
    auto it = cfg.weight_table.find(doc);
    if (it != cfg.weight_table.end()) {
        return it->second;
    }
    if (cfg.weight_default) {
        return *cfg.weight_default;
    }
    throw ConfigError("no weight for document '" + dict.term(doc) + "' and no default declared");
}

} // namespace

CorpusConfig corpus_config_from(const KeyValueConfig& cfg, TermDictionary& dict) {
    CorpusConfig out;

    std::string dw = cfg.get_or("doc_weight", "constant-1");
    if (dw == "constant-1") {
        out.doc_weight = DocWeight::ConstantOne;
    } else if (dw == "table-of-weights") {
        out.doc_weight = DocWeight::Table;
    } else {
        throw ConfigError("unknown doc_weight strategy '" + dw + "'");
    }

    // File-level defaults follow the experimental setup: constant document
    // weights, frequency x positive PMI. Golden-value runs set
    // unit/relative-frequency explicitly.
    std::string sr = cfg.get_or("statement_relevance", "positive-pmi");
    if (sr == "unit") {
        out.statement_relevance = StatementRelevance::Unit;
    } else if (sr == "pmi") {
        out.statement_relevance = StatementRelevance::Pmi;
    } else if (sr == "positive-pmi") {
        out.statement_relevance = StatementRelevance::PositivePmi;
    } else {
        throw ConfigError("unknown statement_relevance strategy '" + sr + "'");
    }

    std::string ag = cfg.get_or("aggregation", "product");
    if (ag == "product") {
        out.aggregation = Aggregation::Product;
    } else if (ag == "relative-frequency") {
        out.aggregation = Aggregation::RelativeFrequency;
    } else {
        throw ConfigError("unknown aggregation strategy '" + ag + "'");
    }

    if (cfg.has("doc_weight_default")) {
        out.weight_default = cfg.get_double("doc_weight_default", 0.0);
    }
    if (cfg.has("doc_weight_table")) {
        std::string path = cfg.resolve_path("doc_weight_table");
        std::string text = read_file(path);
        for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
            if (f.size() != 2) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": expected doc<TAB>weight");
            }
            TermId doc = dict.intern(f[0], Role::Provenance);
            out.weight_table[doc] = parse_double(f[1], path + ":" + std::to_string(line_no));
        });
    } else if (out.doc_weight == DocWeight::Table && !out.weight_default) {
        throw ConfigError("doc_weight=table-of-weights requires doc_weight_table or doc_weight_default");
    }

    return out;
}

CorpusTensor build_corpus(const SourceTensor& g, const CorpusConfig& cfg, const TermDictionary& dict) {
    // Weighted sums per triple, accumulated over provenances in sorted cell
    // order. std::map keeps the later passes in canonical order too.
    std::map<CorpusKey, double> weighted;
    double total_weighted_mass = 0.0;
    for (const auto& [key, value] : g.sorted_cells()) {
        double w = doc_weight_of(cfg, key.provenance, dict);
        CorpusKey triple{key.subject, key.link, key.object};
        weighted[triple] += w * value;
        total_weighted_mass += w * value;
    }

    PmiTable pmi_table;
    if (cfg.statement_relevance != StatementRelevance::Unit) {
        pmi_table = build_pmi_table(g);
    }

    auto relevance = [&](const CorpusKey& triple) -> double {
        switch (cfg.statement_relevance) {
        case StatementRelevance::Unit:
            return 1.0;
        case StatementRelevance::Pmi:
            return pmi_from_table(pmi_table, triple.subject, triple.object, dict);
        case StatementRelevance::PositivePmi:
            return std::max(0.0, pmi_from_table(pmi_table, triple.subject, triple.object, dict));
        }
        return 1.0;
    };

    CorpusTensor c;
    for (const auto& [triple, sum] : weighted) {
        double f = relevance(triple);
        double v = sum * f;
        if (cfg.aggregation == Aggregation::RelativeFrequency) {
            if (total_weighted_mass == 0.0) {
                continue;
            }
            v /= total_weighted_mass;
        }
        if (v != 0.0 && std::isfinite(v)) {
            c.set(triple, v);
        }
    }
    return c;
}

double pmi(const SourceTensor& g, TermId subject, TermId object, const TermDictionary& dict) {
    return pmi_from_table(build_pmi_table(g), subject, object, dict);
}

} // namespace dkb
