// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/tensor.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dkb {

void SourceTensor::add(const SourceKey& key, double value) {
    double& cell = cells_[key];
    cell += value;
    if (cell == 0.0) {
        cells_.erase(key);
    }
}

void SourceTensor::set(const SourceKey& key, double value) {
    if (value == 0.0) {
        cells_.erase(key);
    } else {
        cells_[key] = value;
    }
}

double SourceTensor::value(const SourceKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? 0.0 : it->second;
}

std::vector<std::pair<SourceKey, double>> SourceTensor::sorted_cells() const {
    std::vector<std::pair<SourceKey, double>> out(cells_.begin(), cells_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

double SourceTensor::total_mass() const {
    double sum = 0.0;
    for (const auto& [key, value] : sorted_cells()) {
        sum += value;
    }
    return sum;
}

void CorpusTensor::add(const CorpusKey& key, double value) {
    double& cell = cells_[key];
    cell += value;
    if (cell == 0.0) {
        cells_.erase(key);
    }
}

void CorpusTensor::set(const CorpusKey& key, double value) {
    if (value == 0.0) {
        cells_.erase(key);
    } else {
        cells_[key] = value;
    }
}

double CorpusTensor::value(const CorpusKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? 0.0 : it->second;
}

std::vector<std::pair<CorpusKey, double>> CorpusTensor::sorted_cells() const {
    std::vector<std::pair<CorpusKey, double>> out(cells_.begin(), cells_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

double CorpusTensor::total_mass() const {
    double sum = 0.0;
    for (const auto& [key, value] : sorted_cells()) {
        sum += value;
    }
    return sum;
}

namespace {

std::string describe_statement(const Statement& st, const TermDictionary& dict) {
    auto name = [&](TermId id) {
        return dict.contains(id) ? "'" + dict.term(id) + "'" : "#" + std::to_string(id);
    };
    return "(" + name(st.subject) + ", " + name(st.link) + ", " + name(st.object) +
           ", " + name(st.provenance) + ", count=" + format_double(st.count) + ")";
}

void check_slot(TermId id, Role role, const char* slot, const Statement& st, const TermDictionary& dict) {
    if (!dict.contains(id)) {
        throw StructuralError(std::string("unknown ") + slot + " id " + std::to_string(id) +
                              " in statement " + describe_statement(st, dict));
    }
    if (!dict.has_role(id, role)) {
        throw StructuralError(std::string("term '") + dict.term(id) + "' lacks the " + slot +
                              " role in statement " + describe_statement(st, dict));
    }
}

} // namespace

SourceTensor build_source(std::span<const Statement> statements, const TermDictionary& dict) {
    std::vector<Statement> sorted(statements.begin(), statements.end());
    for (const Statement& st : sorted) {
        check_slot(st.subject, Role::LeftArg, "subject", st, dict);
        check_slot(st.link, Role::Link, "link", st, dict);
        check_slot(st.object, Role::RightArg, "object", st, dict);
        check_slot(st.provenance, Role::Provenance, "provenance", st, dict);
        if (!(st.count > 0.0)) {
            throw StructuralError("non-positive count in statement " + describe_statement(st, dict));
        }
    }
    std::sort(sorted.begin(), sorted.end(), [](const Statement& a, const Statement& b) {
        return std::tie(a.subject, a.link, a.object, a.provenance, a.count) <
               std::tie(b.subject, b.link, b.object, b.provenance, b.count);
    });
    SourceTensor g;
    for (const Statement& st : sorted) {
        g.add({st.subject, st.link, st.object, st.provenance}, st.count);
    }
    return g;
}

CorpusTensor symmetrize(const CorpusTensor& t, TermId link) {
    CorpusTensor out = t;
    for (const auto& [key, value] : t.sorted_cells()) {
        if (key.link != link || key.subject == key.object) {
            continue;
        }
        CorpusKey mirror{key.object, key.link, key.subject};
        double merged = std::max(value, out.value(mirror));
        out.set(key, merged);
        out.set(mirror, merged);
    }
    return out;
}

namespace {

struct SourceRow {
    const std::string* s;
    const std::string* p;
    const std::string* o;
    const std::string* d;
    double value;
};

struct CorpusRow {
    const std::string* s;
    const std::string* p;
    const std::string* o;
    double value;
};

} // namespace

void save_source(const SourceTensor& t, const TermDictionary& dict, std::ostream& out) {
    std::vector<SourceRow> rows;
    rows.reserve(t.cell_count());
    for (const auto& [key, value] : t.cells()) {
        rows.push_back({&dict.term(key.subject), &dict.term(key.link),
                        &dict.term(key.object), &dict.term(key.provenance), value});
    }
    std::sort(rows.begin(), rows.end(), [](const SourceRow& a, const SourceRow& b) {
        return std::tie(*a.s, *a.p, *a.o, *a.d) < std::tie(*b.s, *b.p, *b.o, *b.d);
    });
    out << "# source tensor: s\tp\to\td\tvalue\n";
    for (const SourceRow& r : rows) {
        out << *r.s << '\t' << *r.p << '\t' << *r.o << '\t' << *r.d << '\t'
            << format_double(r.value) << '\n';
    }
}

void save_source(const SourceTensor& t, const TermDictionary& dict, const std::string& path) {
    std::ostringstream out;
    save_source(t, dict, out);
    write_file(path, out.str());
}

SourceTensor load_source(const std::string& path, TermDictionary& dict) {
    SourceTensor t;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 5) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 5 columns (s, p, o, d, value), got " + std::to_string(f.size()));
        }
        SourceKey key{dict.intern(f[0], Role::LeftArg), dict.intern(f[1], Role::Link),
                      dict.intern(f[2], Role::RightArg), dict.intern(f[3], Role::Provenance)};
        t.add(key, parse_double(f[4], path + ":" + std::to_string(line_no)));
    });
    return t;
}

void save_corpus(const CorpusTensor& t, const TermDictionary& dict, std::ostream& out) {
    std::vector<CorpusRow> rows;
    rows.reserve(t.cell_count());
    for (const auto& [key, value] : t.cells()) {
        rows.push_back({&dict.term(key.subject), &dict.term(key.link), &dict.term(key.object), value});
    }
    std::sort(rows.begin(), rows.end(), [](const CorpusRow& a, const CorpusRow& b) {
        return std::tie(*a.s, *a.p, *a.o) < std::tie(*b.s, *b.p, *b.o);
    });
    out << "# corpus tensor: s\tp\to\tvalue\n";
    for (const CorpusRow& r : rows) {
        out << *r.s << '\t' << *r.p << '\t' << *r.o << '\t' << format_double(r.value) << '\n';
    }
}

void save_corpus(const CorpusTensor& t, const TermDictionary& dict, const std::string& path) {
    std::ostringstream out;
    save_corpus(t, dict, out);
    write_file(path, out.str());
}

CorpusTensor load_corpus(const std::string& path, TermDictionary& dict) {
    CorpusTensor t;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 4) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 4 columns (s, p, o, value), got " + std::to_string(f.size()));
        }
        CorpusKey key{dict.intern(f[0], Role::LeftArg), dict.intern(f[1], Role::Link),
                      dict.intern(f[2], Role::RightArg)};
        t.add(key, parse_double(f[3], path + ":" + std::to_string(line_no)));
    });
    return t;
}

} // namespace dkb
