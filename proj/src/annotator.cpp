// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/annotator.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace dkb {

std::string origin_name(AnnotationOrigin origin) {
    return origin == AnnotationOrigin::Base ? "base" : "extension";
}

std::vector<AnnotationEntry> AnnotationSet::base_entries() const {
    std::vector<AnnotationEntry> out;
    for (const AnnotationEntry& e : entries) {
        if (e.origin == AnnotationOrigin::Base) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<AnnotationEntry> AnnotationSet::extension_entries() const {
    std::vector<AnnotationEntry> out;
    for (const AnnotationEntry& e : entries) {
        if (e.origin == AnnotationOrigin::Extension) {
            out.push_back(e);
        }
    }
    return out;
}

std::string firing_mode_name(FiringMode mode) {
    return mode == FiringMode::Subset ? "subset" : "literal";
}

FiringMode parse_firing_mode(std::string_view name) {
    if (name == "subset") return FiringMode::Subset;
    if (name == "literal") return FiringMode::Literal;
    throw ConfigError("unknown firing mode '" + std::string(name) + "' (expected subset or literal)");
}

const RelatedTermList& RelatedTermCache::get(TermId term) {
    auto it = cache_.find(term);
    if (it != cache_.end()) {
        return it->second;
    }
    return cache_.emplace(term, related_terms(m_, term, min_sim_, dict_)).first->second;
}

std::map<TermId, std::vector<std::pair<TermId, double>>>
doc_term_frequencies(const SourceTensor& g) {
    std::map<TermId, std::map<TermId, double>> freqs;
    for (const auto& [key, value] : g.sorted_cells()) {
        freqs[key.provenance][key.subject] += value;
        freqs[key.provenance][key.object] += value;
    }
    std::map<TermId, std::vector<std::pair<TermId, double>>> out;
    for (auto& [doc, terms] : freqs) {
        out[doc].assign(terms.begin(), terms.end());
    }
    return out;
}

namespace {

void sort_ranking(std::vector<AnnotationEntry>& entries, const TermDictionary& dict) {
    std::sort(entries.begin(), entries.end(), [&](const AnnotationEntry& a, const AnnotationEntry& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return dict.term(a.term) < dict.term(b.term);
    });
}

} // namespace

AnnotationSet base_annotations(TermId doc,
                               std::span<const std::pair<TermId, double>> term_freqs,
                               const Perspective& m,
                               const std::unordered_set<TermId>* target_vocab,
                               const TermDictionary& dict,
                               double min_sim,
                               RelatedTermCache* cache,
                               std::size_t* skipped_terms) {
    RelatedTermCache local_cache(m, min_sim, dict);
    RelatedTermCache& lookup = cache ? *cache : local_cache;

    std::map<TermId, double> weights; // candidate -> summed relatedness weights
    double total = 0.0;
    for (const auto& [term, freq] : term_freqs) {
        if (!m.find_row(Label::term(term))) {
            if (skipped_terms) {
                ++*skipped_terms;
            }
            continue;
        }
        for (const RelatedTerm& related : lookup.get(term).entries) {
            if (target_vocab && !target_vocab->count(related.term)) {
                continue;
            }
            double weight = freq * related.similarity;
            weights[related.term] += weight;
            total += weight;
        }
    }

    AnnotationSet set;
    set.doc = doc;
    if (total <= 0.0) {
        return set;
    }
    set.entries.reserve(weights.size());
    for (const auto& [term, weight] : weights) {
        set.entries.push_back({term, weight / total, AnnotationOrigin::Base});
    }
    sort_ranking(set.entries, dict);
    return set;
}

AnnotationSet extend_annotations(const AnnotationSet& base, std::span<const Rule> rules,
                                 FiringMode mode, const TermDictionary& dict) {
    std::unordered_set<TermId> base_terms;
    for (const AnnotationEntry& e : base.entries) {
        if (e.origin == AnnotationOrigin::Base) {
            base_terms.insert(e.term);
        }
    }

    auto fires = [&](const Rule& rule) {
        if (mode == FiringMode::Subset) {
            for (const Feature& f : rule.antecedent) {
                if (!base_terms.count(f.arg)) {
                    return false;
                }
            }
            return true;
        }
        // Literal reading: annotations form a subset of the
        // antecedent arguments.
        std::unordered_set<TermId> antecedent_args;
        for (const Feature& f : rule.antecedent) {
            antecedent_args.insert(f.arg);
        }
        for (TermId term : base_terms) {
            if (!antecedent_args.count(term)) {
                return false;
            }
        }
        return !base_terms.empty();
    };

    std::map<TermId, double> contributions;
    double total = 0.0;
    for (const Rule& rule : rules) {
        if (!fires(rule)) {
            continue;
        }
        std::unordered_set<TermId> consequent_args;
        for (const Feature& f : rule.consequent) {
            consequent_args.insert(f.arg);
        }
        for (TermId arg : consequent_args) {
            if (base_terms.count(arg)) {
                continue;
            }
            contributions[arg] += rule.confidence;
            total += rule.confidence;
        }
    }

    AnnotationSet out = base;
    if (total <= 0.0) {
        return out;
    }
    for (const auto& [term, contribution] : contributions) {
        out.entries.push_back({term, contribution / total, AnnotationOrigin::Extension});
    }
    sort_ranking(out.entries, dict);
    return out;
}

AnnotationSet truncate_top(const AnnotationSet& set, std::size_t h) {
    AnnotationSet out;
    out.doc = set.doc;
    out.entries.assign(set.entries.begin(),
                       set.entries.begin() + std::min(h, set.entries.size()));
    return out;
}

std::vector<AnnotationSet> annotate_corpus(const SourceTensor& g, const Perspective& m,
                                           const std::unordered_set<TermId>* target_vocab,
                                           const TermDictionary& dict, double min_sim,
                                           unsigned threads, std::size_t* skipped_terms) {
    auto freqs = doc_term_frequencies(g);
    std::vector<std::pair<TermId, const std::vector<std::pair<TermId, double>>*>> docs;
    docs.reserve(freqs.size());
    for (const auto& [doc, terms] : freqs) {
        docs.emplace_back(doc, &terms);
    }
    std::sort(docs.begin(), docs.end(), [&](const auto& a, const auto& b) {
        return dict.term(a.first) < dict.term(b.first);
    });

    // Warm the related-term cache up front so worker threads only read it.
    RelatedTermCache cache(m, min_sim, dict);
    std::size_t skipped = 0;
    for (const auto& [doc, terms] : docs) {
        for (const auto& [term, freq] : *terms) {
            if (m.find_row(Label::term(term))) {
                cache.get(term);
            }
        }
    }

    std::vector<AnnotationSet> out(docs.size());
    auto worker = [&](std::size_t begin, std::size_t end, std::size_t* skip_count) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = base_annotations(docs[i].first, *docs[i].second, m, target_vocab, dict,
                                      min_sim, &cache, skip_count);
        }
    };

    if (threads <= 1 || docs.size() < 2) {
        worker(0, docs.size(), &skipped);
    } else {
        unsigned n_threads = std::min<unsigned>(threads, static_cast<unsigned>(docs.size()));
        std::vector<std::size_t> skip_counts(n_threads, 0);
        std::vector<std::thread> pool;
        std::size_t chunk = (docs.size() + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            std::size_t begin = t * chunk;
            std::size_t end = std::min(docs.size(), begin + chunk);
            if (begin >= end) {
                break;
            }
            pool.emplace_back(worker, begin, end, &skip_counts[t]);
        }
        for (auto& th : pool) {
            th.join();
        }
        for (std::size_t c : skip_counts) {
            skipped += c;
        }
    }
    if (skipped_terms) {
        *skipped_terms += skipped;
    }
    return out;
}

void save_annotations(std::span<const AnnotationSet> sets, const TermDictionary& dict,
                      std::ostream& out) {
    out << "# annotations: doc\tterm\tscore\torigin\n";
    for (const AnnotationSet& set : sets) {
        const std::string& doc = dict.term(set.doc);
        for (const AnnotationEntry& e : set.entries) {
            out << doc << '\t' << dict.term(e.term) << '\t' << format_fixed(e.score, 6) << '\t'
                << origin_name(e.origin) << '\n';
        }
    }
}

void save_annotations(std::span<const AnnotationSet> sets, const TermDictionary& dict,
                      const std::string& path) {
    std::ostringstream out;
    save_annotations(sets, dict, out);
    write_file(path, out.str());
}

std::vector<AnnotationSet> load_annotations(const std::string& path, TermDictionary& dict) {
    std::vector<AnnotationSet> sets;
    std::unordered_map<TermId, std::size_t> index_of;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        std::string context = path + ":" + std::to_string(line_no);
        if (f.size() != 4) {
            throw ParseError(context + ": expected doc<TAB>term<TAB>score<TAB>origin");
        }
        TermId doc = dict.intern(f[0], Role::Provenance);
        AnnotationEntry entry;
        entry.term = dict.intern(f[1], Role::RightArg);
        entry.score = parse_double(f[2], context);
        if (f[3] == "base") {
            entry.origin = AnnotationOrigin::Base;
        } else if (f[3] == "extension") {
            entry.origin = AnnotationOrigin::Extension;
        } else {
            throw ParseError(context + ": unknown origin '" + std::string(f[3]) + "'");
        }
        auto [it, inserted] = index_of.try_emplace(doc, sets.size());
        if (inserted) {
            sets.push_back({doc, {}});
        }
        sets[it->second].entries.push_back(entry);
    });
    return sets;
}

} // namespace dkb
