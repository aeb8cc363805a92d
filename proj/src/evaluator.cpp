// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/evaluator.hpp"
#include "dkb/error.hpp"
#include "dkb/similarity.hpp"
#include "dkb/text_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dkb {

std::pair<double, double> precision_recall(std::span<const std::string> computed,
                                           const std::set<std::string>& gold,
                                           std::optional<std::size_t> cutoff) {
    if (gold.empty()) {
        throw DomainError("recall undefined: gold set is empty");
    }
    std::size_t n = computed.size();
    if (cutoff) {
        n = std::min(n, *cutoff);
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (gold.count(computed[i])) {
            ++hits;
        }
    }
    double precision = n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
    double recall = static_cast<double>(hits) / static_cast<double>(gold.size());
    return {precision, recall};
}

double average_precision(std::span<const std::string> computed, const std::set<std::string>& gold) {
    if (gold.empty()) {
        throw DomainError("average precision undefined: gold set is empty");
    }
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t rank = 0; rank < computed.size(); ++rank) {
        if (gold.count(computed[rank])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
        }
    }
    return sum / static_cast<double>(gold.size());
}

namespace {

using SortedVec = std::vector<std::pair<std::string, double>>;

SortedVec sorted_vector(const std::vector<std::pair<std::string, double>>& entries) {
    std::map<std::string, double> acc;
    for (const auto& [term, weight] : entries) {
        acc[term] += weight;
    }
    return SortedVec(acc.begin(), acc.end());
}

// Feature vectors with precomputed norms, in ascending doc order. Built
// once per variant so corpus-wide retrieval stays O(D^2 * v) instead of
// rebuilding vectors per query pair.
struct PreparedFeatures {
    std::vector<std::string> docs;
    std::vector<SortedVec> vectors;
    std::vector<double> norms;
    std::map<std::string, std::size_t> index;
};

PreparedFeatures prepare_features(const StringAnnotations& features) {
    PreparedFeatures prepared;
    prepared.docs.reserve(features.size());
    for (const auto& [doc, entries] : features) {
        prepared.index.emplace(doc, prepared.docs.size());
        prepared.docs.push_back(doc);
        prepared.vectors.push_back(sorted_vector(entries));
        prepared.norms.push_back(
            sparse_norm(std::span<const std::pair<std::string, double>>(prepared.vectors.back())));
    }
    return prepared;
}

std::vector<RelatedDoc> ranked_related(const PreparedFeatures& prepared, std::size_t query,
                                       std::optional<std::size_t> top, std::string* diagnostic) {
    std::vector<RelatedDoc> out;
    if (prepared.norms[query] == 0.0) {
        if (diagnostic) {
            *diagnostic = "query document '" + prepared.docs[query] + "' has a zero feature vector";
        }
        return out;
    }
    const auto& query_vec = prepared.vectors[query];
    for (std::size_t i = 0; i < prepared.docs.size(); ++i) {
        if (i == query || prepared.norms[i] == 0.0) {
            continue;
        }
        double sim = sparse_dot(std::span<const std::pair<std::string, double>>(query_vec),
                                std::span<const std::pair<std::string, double>>(prepared.vectors[i])) /
                     (prepared.norms[query] * prepared.norms[i]);
        if (sim > 0.0) {
            out.push_back({prepared.docs[i], sim});
        }
    }
    std::sort(out.begin(), out.end(), [](const RelatedDoc& a, const RelatedDoc& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.doc < b.doc;
    });
    if (top && out.size() > *top) {
        out.resize(*top);
    }
    return out;
}

} // namespace

std::vector<RelatedDoc> related_documents(const StringAnnotations& features,
                                          const std::string& query,
                                          std::optional<std::size_t> top,
                                          std::string* diagnostic) {
    auto it = features.find(query);
    if (it == features.end()) {
        throw StructuralError("query document '" + query + "' has no feature vector");
    }
    PreparedFeatures prepared = prepare_features(features);
    return ranked_related(prepared, prepared.index.at(query), top, diagnostic);
}

namespace {

void finalize_summary(VariantSummary& summary) {
    if (summary.documents > 0) {
        double n = static_cast<double>(summary.documents);
        summary.map /= n;
        summary.precision /= n;
        summary.recall /= n;
    }
    double pr = summary.precision + summary.recall;
    summary.f1 = pr == 0.0 ? 0.0 : 2.0 * summary.precision * summary.recall / pr;
}

void accumulate(VariantSummary& summary, const std::string& doc, double ap, double p, double r) {
    summary.map += ap;
    summary.precision += p;
    summary.recall += r;
    ++summary.documents;
    summary.per_doc.push_back({doc, ap, p, r});
}

} // namespace

std::vector<VariantSummary> evaluate_annotation_variants(
    const std::vector<std::pair<std::string, const StringAnnotations*>>& variants,
    const std::map<std::string, std::vector<std::string>>& gold_annotations) {
    std::vector<VariantSummary> out;
    for (const auto& [name, annotations] : variants) {
        VariantSummary summary;
        summary.name = name;
        for (const auto& [doc, entries] : *annotations) {
            auto gold_it = gold_annotations.find(doc);
            if (gold_it == gold_annotations.end() || gold_it->second.empty()) {
                ++summary.skipped;
                continue;
            }
            std::set<std::string> gold(gold_it->second.begin(), gold_it->second.end());
            std::vector<std::string> ranked;
            ranked.reserve(entries.size());
            for (const auto& [term, score] : entries) {
                ranked.push_back(term);
            }
            auto [p, r] = precision_recall(ranked, gold);
            accumulate(summary, doc, average_precision(ranked, gold), p, r);
        }
        finalize_summary(summary);
        out.push_back(std::move(summary));
    }
    return out;
}

std::pair<VariantSummary, VariantSummary> evaluate_retrieval_variant(
    const std::string& name, const StringAnnotations& features,
    const std::map<std::string, std::set<std::string>>& gold_related) {
    VariantSummary all;
    all.name = name + "/ALL";
    VariantSummary top;
    top.name = name + "/TOP";
    PreparedFeatures prepared = prepare_features(features);
    for (std::size_t q = 0; q < prepared.docs.size(); ++q) {
        const std::string& doc = prepared.docs[q];
        auto gold_it = gold_related.find(doc);
        if (gold_it == gold_related.end() || gold_it->second.empty()) {
            ++all.skipped;
            ++top.skipped;
            continue;
        }
        const std::set<std::string>& gold = gold_it->second;
        std::vector<RelatedDoc> ranked = ranked_related(prepared, q, std::nullopt, nullptr);
        std::vector<std::string> docs;
        docs.reserve(ranked.size());
        for (const RelatedDoc& r : ranked) {
            docs.push_back(r.doc);
        }
        auto [p_all, r_all] = precision_recall(docs, gold);
        accumulate(all, doc, average_precision(docs, gold), p_all, r_all);

        std::size_t h = gold.size();
        std::vector<std::string> prefix(docs.begin(),
                                        docs.begin() + std::min(h, docs.size()));
        auto [p_top, r_top] = precision_recall(prefix, gold);
        accumulate(top, doc, average_precision(prefix, gold), p_top, r_top);
    }
    finalize_summary(all);
    finalize_summary(top);
    return {std::move(all), std::move(top)};
}

EvalReport evaluate_corpus(const StringAnnotations& base, const StringAnnotations& extended,
                           const std::map<std::string, std::vector<std::string>>& gold_annotations,
                           const std::map<std::string, std::set<std::string>>* gold_related) {
    // BASE/TOP: per-document prefix of the gold annotation count.
    StringAnnotations base_top;
    for (const auto& [doc, entries] : base) {
        auto gold_it = gold_annotations.find(doc);
        std::size_t h = gold_it == gold_annotations.end() ? entries.size() : gold_it->second.size();
        auto& prefix = base_top[doc];
        prefix.assign(entries.begin(), entries.begin() + std::min(h, entries.size()));
    }

    EvalReport report;
    report.annotation = evaluate_annotation_variants(
        {{"BASE/ALL", &base}, {"BASE/TOP", &base_top}, {"EXT/ALL", &extended}}, gold_annotations);

    if (gold_related) {
        StringAnnotations human;
        for (const auto& [doc, terms] : gold_annotations) {
            auto& vec = human[doc];
            for (const std::string& term : terms) {
                vec.emplace_back(term, 1.0); // gold weighting is binary
            }
        }
        for (const auto& [name, features] :
             std::vector<std::pair<std::string, const StringAnnotations*>>{
                 {"BASE-ALL", &base}, {"BASE-TOP", &base_top}, {"EXT-ALL", &extended}, {"HUMAN", &human}}) {
            auto [all, top] = evaluate_retrieval_variant(name, *features, *gold_related);
            report.retrieval.push_back(std::move(all));
            report.retrieval.push_back(std::move(top));
        }
    }
    return report;
}

namespace {

std::string percent(double v) {
    return format_fixed(v * 100.0, 1);
}

void render_block(std::ostringstream& out, const std::string& title,
                  const std::vector<VariantSummary>& summaries) {
    if (summaries.empty()) {
        return;
    }
    out << title << "\n";
    std::size_t label_width = 6;
    std::vector<std::size_t> widths;
    for (const VariantSummary& s : summaries) {
        widths.push_back(std::max<std::size_t>(s.name.size(), 6));
    }
    auto row = [&](const std::string& label, auto value_of) {
        out << label;
        for (std::size_t pad = label.size(); pad < label_width; ++pad) {
            out << ' ';
        }
        for (std::size_t i = 0; i < summaries.size(); ++i) {
            std::string cell = value_of(summaries[i]);
            out << "  ";
            for (std::size_t pad = cell.size(); pad < widths[i]; ++pad) {
                out << ' ';
            }
            out << cell;
        }
        out << "\n";
    };
    row("", [&](const VariantSummary& s) { return s.name; });
    row("MAP", [&](const VariantSummary& s) { return percent(s.map); });
    row("prec.", [&](const VariantSummary& s) { return percent(s.precision); });
    row("rec.", [&](const VariantSummary& s) { return percent(s.recall); });
    row("F-sc.", [&](const VariantSummary& s) { return percent(s.f1); });
    row("docs", [&](const VariantSummary& s) { return std::to_string(s.documents); });
    row("skip", [&](const VariantSummary& s) { return std::to_string(s.skipped); });
}

nlohmann::json summary_json(const VariantSummary& s) {
    nlohmann::json per_doc = nlohmann::json::array();
    for (const PerDocMetrics& d : s.per_doc) {
        per_doc.push_back({{"doc", d.doc},
                           {"average_precision", d.average_precision},
                           {"precision", d.precision},
                           {"recall", d.recall}});
    }
    return {{"name", s.name},          {"map", s.map},
            {"precision", s.precision}, {"recall", s.recall},
            {"f1", s.f1},              {"documents", s.documents},
            {"skipped", s.skipped},    {"per_doc", per_doc}};
}

} // namespace

std::string report_text(const EvalReport& report) {
    std::ostringstream out;
    render_block(out, "annotation vs gold (percent)", report.annotation);
    if (!report.retrieval.empty()) {
        out << "\n";
        render_block(out, "related-document retrieval vs gold (percent)", report.retrieval);
    }
    return out.str();
}

std::string report_json(const EvalReport& report) {
    nlohmann::json j;
    j["annotation"] = nlohmann::json::array();
    for (const VariantSummary& s : report.annotation) {
        j["annotation"].push_back(summary_json(s));
    }
    j["retrieval"] = nlohmann::json::array();
    for (const VariantSummary& s : report.retrieval) {
        j["retrieval"].push_back(summary_json(s));
    }
    return j.dump(2) + "\n";
}

std::map<std::string, std::vector<std::string>> load_gold_annotations(const std::string& path) {
    std::map<std::string, std::vector<std::string>> out;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected doc<TAB>term");
        }
        out[std::string(f[0])].emplace_back(f[1]);
    });
    for (auto& [doc, terms] : out) {
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    }
    return out;
}

std::map<std::string, std::set<std::string>> load_gold_related(const std::string& path) {
    std::map<std::string, std::set<std::string>> out;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected doc<TAB>related_doc");
        }
        out[std::string(f[0])].insert(std::string(f[1]));
    });
    return out;
}

} // namespace dkb
