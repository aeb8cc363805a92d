// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/statement.hpp"
#include "dkb/term_dictionary.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dkb {

/// child -> parent edge of a thesaurus hierarchy. Self-loops are rejected
/// at load time.
struct ThesaurusEdge {
    std::string child;
    std::string parent;
};

/// Maps synonym strings to their preferred headings. Chains collapse at
/// load time so that one application of normalize() is idempotent;
/// cyclic tables are rejected.
class SynonymTable {
public:
    void add(std::string synonym, std::string preferred);
    /// Resolves chains and checks the idempotence invariant.
    void finalize();

    /// The preferred heading of `term`, or `term` itself when unmapped.
    const std::string& normalize(const std::string& term) const;
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::unordered_map<std::string, std::string>& entries() const { return map_; }

    static SynonymTable load(const std::string& path);

private:
    std::unordered_map<std::string, std::string> map_;
};

/// Parses a statement TSV: 5 columns `doc<TAB>s<TAB>p<TAB>o<TAB>count`,
/// `#` comments and blank lines skipped, counts strictly positive. Terms
/// are interned into `dict` on the fly. Errors carry the line number.
std::vector<Statement> parse_statement_file(std::string_view text, std::string_view name,
                                            TermDictionary& dict);
std::vector<Statement> parse_statement_file(const std::string& path, TermDictionary& dict);

/// Serializes statements as the same TSV, sorted by (doc, s, p, o, count)
/// strings; parse -> save is stable modulo comments and line order.
void save_statement_file(std::span<const Statement> statements, const TermDictionary& dict,
                         std::ostream& out);
void save_statement_file(std::span<const Statement> statements, const TermDictionary& dict,
                         const std::string& path);

/// Loads thesaurus edges from TSV `child<TAB>parent`.
std::vector<ThesaurusEdge> load_thesaurus(const std::string& path);

/// Emits (T1, link, T2) and (T2, link, T1) statements with count 1 for every
/// pair of terms that are parent/child or siblings (sharing at least one
/// parent) in the hierarchy, deduplicated, with provenance `doc`.
std::vector<Statement> thesaurus_to_statements(std::span<const ThesaurusEdge> edges,
                                               std::string_view link, std::string_view doc,
                                               TermDictionary& dict);

/// Naive co-occurrence extractor standing in for a full NLP pipeline.
/// Sentences are split on `.?!` followed by whitespace. Candidate terms are
/// the longest non-overlapping vocabulary matches over lowercased word
/// tokens (synonyms normalized before matching); without a vocabulary,
/// candidates are the lowercase word tokens minus a built-in stopword list.
/// Every unordered in-sentence pair of distinct terms yields one statement
/// with the given link; its count is the number of sentences the pair
/// co-occurs in, and its direction follows the first observed occurrence.
std::vector<Statement> extract_cooccurrence(std::string_view text, const SynonymTable& synonyms,
                                            const std::vector<std::string>* vocab,
                                            std::string_view doc, std::string_view link,
                                            TermDictionary& dict);

} // namespace dkb
