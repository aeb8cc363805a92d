// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/tensor.hpp"
#include "dkb/term_dictionary.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dkb {

/// The six matricization modes of the ternary corpus tensor. The name
/// reads rows/columns: SubjectByLinkObject is the s/(p,o) matrix whose
/// rows are subjects and whose columns are (link, object) pairs.
enum class Mode {
    SubjectByLinkObject,  // s  / (p,o)
    ObjectByLinkSubject,  // o  / (p,s)
    LinkObjectBySubject,  // (p,o) / s   — transpose of SubjectByLinkObject
    LinkSubjectByObject,  // (p,s) / o   — transpose of ObjectByLinkSubject
    LinkBySubjectObject,  // p  / (s,o)
    SubjectObjectByLink,  // (s,o) / p
};

/// Short serialized mode names: "s/po", "o/ps", "po/s", "ps/o", "p/so", "so/p".
std::string mode_name(Mode mode);
Mode parse_mode(std::string_view name);

/// Row/column label of a perspective: a single term, an ordered pair of
/// terms, or a synthetic dimension created by column reduction.
struct Label {
    enum class Kind : std::uint8_t { Term, Pair, Synthetic };

    Kind kind = Kind::Term;
    TermId a = 0; // term id, pair first element, or synthetic index
    TermId b = 0; // pair second element

    static Label term(TermId id) { return {Kind::Term, id, 0}; }
    static Label pair(TermId first, TermId second) { return {Kind::Pair, first, second}; }
    static Label synthetic(TermId index) { return {Kind::Synthetic, index, 0}; }

    friend bool operator==(const Label&, const Label&) = default;
};

struct LabelHash {
    std::size_t operator()(const Label& l) const {
        std::uint64_t packed = (std::uint64_t(l.a) << 32) | l.b;
        return static_cast<std::size_t>(mix64(packed + static_cast<std::uint64_t>(l.kind)));
    }
};

/// Display form of a label: the term string, `first|second` for pairs,
/// `~index` for synthetic dimensions.
std::string label_string(const Label& label, const TermDictionary& dict);

/// Sparse row-labeled matrix produced by matricizing a corpus tensor.
/// Rows and columns with only zero values are physically omitted; labels
/// are held in a fixed, canonical order (ascending label string at
/// construction time). Immutable after construction.
class Perspective {
public:
    using Entry = std::pair<std::uint32_t, double>; // (column index, value)

    Perspective() = default;
    Perspective(Mode mode, std::vector<Label> row_labels, std::vector<Label> col_labels,
                std::vector<std::vector<Entry>> rows);

    Mode mode() const { return mode_; }
    std::size_t row_count() const { return row_labels_.size(); }
    std::size_t col_count() const { return col_labels_.size(); }
    bool empty() const { return row_labels_.empty(); }

    const Label& row_label(std::size_t i) const { return row_labels_[i]; }
    const Label& col_label(std::size_t j) const { return col_labels_[j]; }
    const std::vector<Label>& row_labels() const { return row_labels_; }
    const std::vector<Label>& col_labels() const { return col_labels_; }

    std::optional<std::uint32_t> find_row(const Label& label) const;
    std::optional<std::uint32_t> find_col(const Label& label) const;

    /// Non-zero entries of row `i`, ordered by column index.
    std::span<const Entry> row(std::size_t i) const { return rows_[i]; }

    /// Indices of rows with a non-zero entry in column `j`, ascending.
    const std::vector<std::uint32_t>& col_rows(std::size_t j) const { return col_rows_[j]; }

    double value(std::uint32_t i, std::uint32_t j) const;
    double row_sum(std::size_t i) const;
    double row_norm(std::size_t i) const;
    std::size_t row_nnz(std::size_t i) const { return rows_[i].size(); }

    /// Sum of all cell values in row-major order.
    double total_mass() const;

private:
    Mode mode_ = Mode::SubjectByLinkObject;
    std::vector<Label> row_labels_;
    std::vector<Label> col_labels_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::unordered_map<Label, std::uint32_t, LabelHash> row_index_;
    std::unordered_map<Label, std::uint32_t, LabelHash> col_index_;
};

/// Matricizes the corpus tensor: fixes one index (or pair of indices) as
/// rows and the remaining combination as columns. Every non-zero corpus
/// cell appears exactly once; labels are ordered by their string form so
/// the result is independent of cell iteration order.
Perspective matricize(const CorpusTensor& c, Mode mode, const TermDictionary& dict);

/// Inverse of matricize: reassembles the corpus tensor from a perspective.
/// Lossless for every mode. Throws StructuralError on labels that cannot
/// come from a matricization (synthetic columns, kind mismatches).
CorpusTensor dematricize(const Perspective& m);

/// Replaces the columns by `target_dim` synthetic dimensions via a seeded
/// sparse random projection (entries +1/0/-1 with density 1/3, scaled by
/// sqrt(3/target_dim)). Rows and their labels are unchanged; pairwise row
/// inner products are approximately preserved. When target_dim is at least
/// the current column count the perspective is returned unchanged.
Perspective reduce_dimensions(const Perspective& m, int target_dim, std::uint64_t seed);

// Perspective persistence: TSV whose header row is `<mode>` followed by the
// column labels; each data row is the row label followed by the dense value
// list. Pair labels are serialized as `first|second`.
void save_perspective(const Perspective& m, const TermDictionary& dict, std::ostream& out);
void save_perspective(const Perspective& m, const TermDictionary& dict, const std::string& path);
Perspective load_perspective(const std::string& path, TermDictionary& dict);

} // namespace dkb
