// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/perspective.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dkb {

std::string mode_name(Mode mode) {
    switch (mode) {
    case Mode::SubjectByLinkObject: return "s/po";
    case Mode::ObjectByLinkSubject: return "o/ps";
    case Mode::LinkObjectBySubject: return "po/s";
    case Mode::LinkSubjectByObject: return "ps/o";
    case Mode::LinkBySubjectObject: return "p/so";
    case Mode::SubjectObjectByLink: return "so/p";
    }
    throw StructuralError("unreachable mode");
}

Mode parse_mode(std::string_view name) {
    if (name == "s/po") return Mode::SubjectByLinkObject;
    if (name == "o/ps") return Mode::ObjectByLinkSubject;
    if (name == "po/s") return Mode::LinkObjectBySubject;
    if (name == "ps/o") return Mode::LinkSubjectByObject;
    if (name == "p/so") return Mode::LinkBySubjectObject;
    if (name == "so/p") return Mode::SubjectObjectByLink;
    throw ConfigError("unknown perspective mode '" + std::string(name) +
                      "' (expected one of s/po, o/ps, po/s, ps/o, p/so, so/p)");
}

std::string label_string(const Label& label, const TermDictionary& dict) {
    switch (label.kind) {
    case Label::Kind::Term:
        return dict.term(label.a);
    case Label::Kind::Pair:
        return dict.term(label.a) + "|" + dict.term(label.b);
    case Label::Kind::Synthetic:
        return "~" + std::to_string(label.a);
    }
    throw StructuralError("unreachable label kind");
}

Perspective::Perspective(Mode mode, std::vector<Label> row_labels, std::vector<Label> col_labels,
                         std::vector<std::vector<Entry>> rows)
    : mode_(mode),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      rows_(std::move(rows)) {
    if (rows_.size() != row_labels_.size()) {
        throw StructuralError("perspective row count does not match row label count");
    }
    row_index_.reserve(row_labels_.size());
    for (std::uint32_t i = 0; i < row_labels_.size(); ++i) {
        if (!row_index_.emplace(row_labels_[i], i).second) {
            throw StructuralError("duplicate perspective row label");
        }
    }
    col_index_.reserve(col_labels_.size());
    for (std::uint32_t j = 0; j < col_labels_.size(); ++j) {
        if (!col_index_.emplace(col_labels_[j], j).second) {
            throw StructuralError("duplicate perspective column label");
        }
    }
    col_rows_.resize(col_labels_.size());
    for (std::uint32_t i = 0; i < rows_.size(); ++i) {
        std::sort(rows_[i].begin(), rows_[i].end());
        for (const Entry& e : rows_[i]) {
            if (e.first >= col_labels_.size()) {
                throw StructuralError("perspective cell references unknown column");
            }
            col_rows_[e.first].push_back(i);
        }
    }
}

std::optional<std::uint32_t> Perspective::find_row(const Label& label) const {
    auto it = row_index_.find(label);
    if (it == row_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::uint32_t> Perspective::find_col(const Label& label) const {
    auto it = col_index_.find(label);
    if (it == col_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double Perspective::value(std::uint32_t i, std::uint32_t j) const {
    const auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Entry& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == j) ? it->second : 0.0;
}

double Perspective::row_sum(std::size_t i) const {
    double sum = 0.0;
    for (const Entry& e : rows_[i]) {
        sum += e.second;
    }
    return sum;
}

double Perspective::row_norm(std::size_t i) const {
    double sum = 0.0;
    for (const Entry& e : rows_[i]) {
        sum += e.second * e.second;
    }
    return std::sqrt(sum);
}

double Perspective::total_mass() const {
    double sum = 0.0;
    for (const auto& row : rows_) {
        for (const Entry& e : row) {
            sum += e.second;
        }
    }
    return sum;
}

namespace {

std::pair<Label, Label> decompose(const CorpusKey& key, Mode mode) {
    switch (mode) {
    case Mode::SubjectByLinkObject:
        return {Label::term(key.subject), Label::pair(key.link, key.object)};
    case Mode::ObjectByLinkSubject:
        return {Label::term(key.object), Label::pair(key.link, key.subject)};
    case Mode::LinkObjectBySubject:
        return {Label::pair(key.link, key.object), Label::term(key.subject)};
    case Mode::LinkSubjectByObject:
        return {Label::pair(key.link, key.subject), Label::term(key.object)};
    case Mode::LinkBySubjectObject:
        return {Label::term(key.link), Label::pair(key.subject, key.object)};
    case Mode::SubjectObjectByLink:
        return {Label::pair(key.subject, key.object), Label::term(key.link)};
    }
    throw StructuralError("unreachable mode");
}

Label expect_kind(const Label& label, Label::Kind kind, const char* where) {
    if (label.kind != kind) {
        throw StructuralError(std::string("malformed ") + where + " label: expected " +
                              (kind == Label::Kind::Pair ? "a pair" : "a term"));
    }
    return label;
}

CorpusKey reassemble(const Label& row, const Label& col, Mode mode) {
    using K = Label::Kind;
    switch (mode) {
    case Mode::SubjectByLinkObject: {
        auto r = expect_kind(row, K::Term, "row");
        auto c = expect_kind(col, K::Pair, "column");
        return {r.a, c.a, c.b};
    }
    case Mode::ObjectByLinkSubject: {
        auto r = expect_kind(row, K::Term, "row");
        auto c = expect_kind(col, K::Pair, "column");
        return {c.b, c.a, r.a};
    }
    case Mode::LinkObjectBySubject: {
        auto r = expect_kind(row, K::Pair, "row");
        auto c = expect_kind(col, K::Term, "column");
        return {c.a, r.a, r.b};
    }
    case Mode::LinkSubjectByObject: {
        auto r = expect_kind(row, K::Pair, "row");
        auto c = expect_kind(col, K::Term, "column");
        return {r.b, r.a, c.a};
    }
    case Mode::LinkBySubjectObject: {
        auto r = expect_kind(row, K::Term, "row");
        auto c = expect_kind(col, K::Pair, "column");
        return {c.a, r.a, c.b};
    }
    case Mode::SubjectObjectByLink: {
        auto r = expect_kind(row, K::Pair, "row");
        auto c = expect_kind(col, K::Term, "column");
        return {r.a, c.a, r.b};
    }
    }
    throw StructuralError("unreachable mode");
}

std::vector<Label> sorted_unique_labels(std::vector<Label> labels, const TermDictionary& dict) {
    std::sort(labels.begin(), labels.end(), [&](const Label& x, const Label& y) {
        return label_string(x, dict) < label_string(y, dict);
    });
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

} // namespace

Perspective matricize(const CorpusTensor& c, Mode mode, const TermDictionary& dict) {
    auto cells = c.sorted_cells();

    std::vector<Label> row_labels;
    std::vector<Label> col_labels;
    row_labels.reserve(cells.size());
    col_labels.reserve(cells.size());
    for (const auto& [key, value] : cells) {
        auto [row, col] = decompose(key, mode);
        row_labels.push_back(row);
        col_labels.push_back(col);
    }
    row_labels = sorted_unique_labels(std::move(row_labels), dict);
    col_labels = sorted_unique_labels(std::move(col_labels), dict);

    std::unordered_map<Label, std::uint32_t, LabelHash> row_of, col_of;
    for (std::uint32_t i = 0; i < row_labels.size(); ++i) row_of.emplace(row_labels[i], i);
    for (std::uint32_t j = 0; j < col_labels.size(); ++j) col_of.emplace(col_labels[j], j);

    std::vector<std::vector<Perspective::Entry>> rows(row_labels.size());
    for (const auto& [key, value] : cells) {
        auto [row, col] = decompose(key, mode);
        rows[row_of.at(row)].emplace_back(col_of.at(col), value);
    }
    return Perspective(mode, std::move(row_labels), std::move(col_labels), std::move(rows));
}

CorpusTensor dematricize(const Perspective& m) {
    CorpusTensor c;
    for (std::uint32_t i = 0; i < m.row_count(); ++i) {
        for (const auto& [j, value] : m.row(i)) {
            c.set(reassemble(m.row_label(i), m.col_label(j), m.mode()), value);
        }
    }
    return c;
}

Perspective reduce_dimensions(const Perspective& m, int target_dim, std::uint64_t seed) {
    if (target_dim <= 0) {
        throw StructuralError("target_dim must be positive, got " + std::to_string(target_dim));
    }
    std::size_t k = static_cast<std::size_t>(target_dim);
    if (k >= m.col_count()) {
        return m;
    }

    // Achlioptas-style sign matrix: +1 / -1 each with probability 1/6,
    // 0 otherwise, scaled by sqrt(3/k). Generated column-major from the
    // seeded engine, so a fixed seed gives a bit-identical projection.
    std::mt19937_64 rng(seed);
    std::vector<std::int8_t> signs(m.col_count() * k);
    for (std::size_t idx = 0; idx < signs.size(); ++idx) {
        std::uint64_t u = pick_below(rng, 6);
        signs[idx] = u == 0 ? 1 : (u == 1 ? -1 : 0);
    }
    double scale = std::sqrt(3.0 / static_cast<double>(k));

    std::vector<std::vector<Perspective::Entry>> rows(m.row_count());
    std::vector<double> acc(k);
    for (std::uint32_t i = 0; i < m.row_count(); ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& [j, value] : m.row(i)) {
            const std::int8_t* col_signs = signs.data() + std::size_t(j) * k;
            for (std::size_t d = 0; d < k; ++d) {
                if (col_signs[d] != 0) {
                    acc[d] += col_signs[d] * value;
                }
            }
        }
        for (std::size_t d = 0; d < k; ++d) {
            if (acc[d] != 0.0) {
                rows[i].emplace_back(static_cast<std::uint32_t>(d), acc[d] * scale);
            }
        }
    }

    std::vector<Label> col_labels;
    col_labels.reserve(k);
    for (std::size_t d = 0; d < k; ++d) {
        col_labels.push_back(Label::synthetic(static_cast<TermId>(d)));
    }
    return Perspective(m.mode(), m.row_labels(), std::move(col_labels), std::move(rows));
}

void save_perspective(const Perspective& m, const TermDictionary& dict, std::ostream& out) {
    out << "# perspective\n";
    out << mode_name(m.mode());
    for (std::size_t j = 0; j < m.col_count(); ++j) {
        out << '\t' << label_string(m.col_label(j), dict);
    }
    out << '\n';
    for (std::uint32_t i = 0; i < m.row_count(); ++i) {
        out << label_string(m.row_label(i), dict);
        std::size_t next = 0;
        auto row = m.row(i);
        for (std::uint32_t j = 0; j < m.col_count(); ++j) {
            double v = 0.0;
            if (next < row.size() && row[next].first == j) {
                v = row[next].second;
                ++next;
            }
            out << '\t' << format_double(v);
        }
        out << '\n';
    }
}

void save_perspective(const Perspective& m, const TermDictionary& dict, const std::string& path) {
    std::ostringstream out;
    save_perspective(m, dict, out);
    write_file(path, out.str());
}

namespace {

Label parse_label(std::string_view text, bool expect_pair, TermDictionary& dict,
                  Role single_role, Role pair_first_role, Role pair_second_role,
                  const std::string& context) {
    if (!text.empty() && text[0] == '~') {
        return Label::synthetic(static_cast<TermId>(parse_int(text.substr(1), context)));
    }
    if (expect_pair) {
        std::size_t bar = text.find('|');
        if (bar == std::string_view::npos) {
            throw ParseError(context + ": expected pair label 'first|second', got '" +
                             std::string(text) + "'");
        }
        TermId first = dict.intern(text.substr(0, bar), pair_first_role);
        TermId second = dict.intern(text.substr(bar + 1), pair_second_role);
        return Label::pair(first, second);
    }
    return Label::term(dict.intern(text, single_role));
}

// Which roles the row/column label parts carry, per mode.
struct ModeRoles {
    bool row_is_pair;
    Role row_single, row_first, row_second;
    Role col_single, col_first, col_second;
};

ModeRoles roles_for(Mode mode) {
    switch (mode) {
    case Mode::SubjectByLinkObject:
        return {false, Role::LeftArg, {}, {}, {}, Role::Link, Role::RightArg};
    case Mode::ObjectByLinkSubject:
        return {false, Role::RightArg, {}, {}, {}, Role::Link, Role::LeftArg};
    case Mode::LinkObjectBySubject:
        return {true, {}, Role::Link, Role::RightArg, Role::LeftArg, {}, {}};
    case Mode::LinkSubjectByObject:
        return {true, {}, Role::Link, Role::LeftArg, Role::RightArg, {}, {}};
    case Mode::LinkBySubjectObject:
        return {false, Role::Link, {}, {}, {}, Role::LeftArg, Role::RightArg};
    case Mode::SubjectObjectByLink:
        return {true, {}, Role::LeftArg, Role::RightArg, Role::Link, {}, {}};
    }
    throw StructuralError("unreachable mode");
}

} // namespace

Perspective load_perspective(const std::string& path, TermDictionary& dict) {
    std::string text = read_file(path);

    std::optional<Mode> mode;
    ModeRoles roles{};
    std::vector<Label> col_labels;
    std::vector<Label> row_labels;
    std::vector<std::vector<Perspective::Entry>> rows;

    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        std::string context = path + ":" + std::to_string(line_no);
        if (!mode) {
            mode = parse_mode(f[0]);
            roles = roles_for(*mode);
            for (std::size_t j = 1; j < f.size(); ++j) {
                col_labels.push_back(parse_label(f[j], !roles.row_is_pair, dict, roles.col_single,
                                                 roles.col_first, roles.col_second, context));
            }
            return;
        }
        if (f.size() != col_labels.size() + 1) {
            throw ParseError(context + ": expected " + std::to_string(col_labels.size() + 1) +
                             " columns, got " + std::to_string(f.size()));
        }
        row_labels.push_back(parse_label(f[0], roles.row_is_pair, dict, roles.row_single,
                                         roles.row_first, roles.row_second, context));
        std::vector<Perspective::Entry> row;
        for (std::size_t j = 1; j < f.size(); ++j) {
            double v = parse_double(f[j], context);
            if (v != 0.0) {
                row.emplace_back(static_cast<std::uint32_t>(j - 1), v);
            }
        }
        rows.push_back(std::move(row));
    });

    if (!mode) {
        throw ParseError(path + ": missing perspective header row");
    }
    return Perspective(*mode, std::move(row_labels), std::move(col_labels), std::move(rows));
}

} // namespace dkb
