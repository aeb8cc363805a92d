// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/rng.hpp"
#include "dkb/statement.hpp"
#include "dkb/term_dictionary.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dkb {

struct SourceKey {
    TermId subject = 0;
    TermId link = 0;
    TermId object = 0;
    TermId provenance = 0;

    friend bool operator==(const SourceKey&, const SourceKey&) = default;
    friend auto operator<=>(const SourceKey&, const SourceKey&) = default;
};

struct CorpusKey {
    TermId subject = 0;
    TermId link = 0;
    TermId object = 0;

    friend bool operator==(const CorpusKey&, const CorpusKey&) = default;
    friend auto operator<=>(const CorpusKey&, const CorpusKey&) = default;
};

struct SourceKeyHash {
    std::size_t operator()(const SourceKey& k) const {
        std::uint64_t a = (std::uint64_t(k.subject) << 32) | k.link;
        std::uint64_t b = (std::uint64_t(k.object) << 32) | k.provenance;
        return static_cast<std::size_t>(mix64(a) ^ mix64(b + 0x9E3779B97F4A7C15ull));
    }
};

struct CorpusKeyHash {
    std::size_t operator()(const CorpusKey& k) const {
        std::uint64_t a = (std::uint64_t(k.subject) << 32) | k.link;
        return static_cast<std::size_t>(mix64(a) ^ mix64(std::uint64_t(k.object) + 0x9E3779B97F4A7C15ull));
    }
};

/// 4-ary sparse labeled tensor over (subject, link, object, provenance).
/// Cells with value zero are never stored. Instances are plain values:
/// built once, then safe for unrestricted concurrent reads.
class SourceTensor {
public:
    using CellMap = std::unordered_map<SourceKey, double, SourceKeyHash>;

    /// Adds `value` to the cell, erasing it if the result is zero.
    void add(const SourceKey& key, double value);
    void set(const SourceKey& key, double value);

    double value(const SourceKey& key) const;
    bool empty() const { return cells_.empty(); }
    std::size_t cell_count() const { return cells_.size(); }
    const CellMap& cells() const { return cells_; }

    /// Cells ordered by (subject, link, object, provenance) id tuples.
    /// Reductions iterate this order so their results do not depend on
    /// hash-map iteration order.
    std::vector<std::pair<SourceKey, double>> sorted_cells() const;

    /// Sum of all cell values, accumulated in sorted order.
    double total_mass() const;

private:
    CellMap cells_;
};

/// Ternary sparse labeled tensor over (subject, link, object): the corpus
/// representation aggregated across provenances.
class CorpusTensor {
public:
    using CellMap = std::unordered_map<CorpusKey, double, CorpusKeyHash>;

    void add(const CorpusKey& key, double value);
    void set(const CorpusKey& key, double value);

    double value(const CorpusKey& key) const;
    bool empty() const { return cells_.empty(); }
    std::size_t cell_count() const { return cells_.size(); }
    const CellMap& cells() const { return cells_; }

    std::vector<std::pair<CorpusKey, double>> sorted_cells() const;
    double total_mass() const;

private:
    CellMap cells_;
};

/// Accumulates statements into the source tensor G. Cell (s,p,o,d) ends up
/// holding the summed counts of all matching statements. Statements are
/// gathered and sorted before accumulation, so any permutation of the input
/// yields a bit-identical tensor. Every id must be present in `dict` with
/// the role matching its slot, and counts must be positive; violations
/// raise StructuralError naming the offending statement.
SourceTensor build_source(std::span<const Statement> statements, const TermDictionary& dict);

/// Symmetric closure of `t` along `link`: for every cell (s, link, o) the
/// mirrored cell (o, link, s) is present with the same value. When both
/// directions already exist with different values they are merged by max.
/// Idempotent.
CorpusTensor symmetrize(const CorpusTensor& t, TermId link);

// Tensor persistence: sorted TSV, one cell per line,
// `s<TAB>p<TAB>o[<TAB>d]<TAB>value`, UTF-8, `#` comment lines allowed,
// terms stored as strings. Loading rebuilds the dictionary.

void save_source(const SourceTensor& t, const TermDictionary& dict, std::ostream& out);
void save_source(const SourceTensor& t, const TermDictionary& dict, const std::string& path);
SourceTensor load_source(const std::string& path, TermDictionary& dict);

void save_corpus(const CorpusTensor& t, const TermDictionary& dict, std::ostream& out);
void save_corpus(const CorpusTensor& t, const TermDictionary& dict, const std::string& path);
CorpusTensor load_corpus(const std::string& path, TermDictionary& dict);

} // namespace dkb
