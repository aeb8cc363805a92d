// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

// Shared fixtures and independent oracles for the test suites. Oracles are
// deliberately written against the definitions, not against the library
// code paths they check.

#pragma once

#include "dkb/ingest.hpp"
#include "dkb/perspective.hpp"
#include "dkb/rng.hpp"
#include "dkb/tensor.hpp"
#include "dkb/term_dictionary.hpp"

#include <cmath>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dkb::testing {

// ---------------------------------------------------------------------------
// Worked-example fixture: the seven statements over documents d1..d4 and
// the corpus / perspectives they induce.

struct ExampleFixture {
    TermDictionary dict;
    std::vector<Statement> statements;

    TermId pd, p, d, g, itd, m, j, ed; // argument terms
    TermId D, T, I;                    // link terms
    TermId d1, d2, d3, d4;             // documents

    ExampleFixture() {
        auto arg = [&](const char* s) {
            TermId id = dict.intern(s, Role::LeftArg);
            dict.add_role(id, Role::RightArg);
            return id;
        };
        pd = arg("p.d.");
        p = arg("p.");
        d = arg("d.");
        g = arg("g.");
        itd = arg("i.t.d.");
        m = arg("m.");
        j = arg("j.");
        ed = arg("e.d.");
        D = dict.intern("D", Role::Link);
        T = dict.intern("T", Role::Link);
        I = dict.intern("I", Role::Link);
        d1 = dict.intern("d1", Role::Provenance);
        d2 = dict.intern("d2", Role::Provenance);
        d3 = dict.intern("d3", Role::Provenance);
        d4 = dict.intern("d4", Role::Provenance);

        statements = {
            {pd, D, p, d1, 1.0},  {pd, T, d, d1, 1.0}, {g, D, p, d2, 1.0},
            {itd, T, m, d3, 1.0}, {itd, I, j, d3, 1.0}, {itd, I, ed, d3, 1.0},
            {pd, T, d, d4, 1.0},
        };
    }

    /// The statement file encoding of the seven statements.
    static std::string statement_tsv() {
        return "# doc\ts\tp\to\tcount\n"
               "d1\tp.d.\tD\tp.\t1\n"
               "d1\tp.d.\tT\td.\t1\n"
               "d2\tg.\tD\tp.\t1\n"
               "d3\ti.t.d.\tT\tm.\t1\n"
               "d3\ti.t.d.\tI\tj.\t1\n"
               "d3\ti.t.d.\tI\te.d.\t1\n"
               "d4\tp.d.\tT\td.\t1\n";
    }
};

// ---------------------------------------------------------------------------
// Randomized corpus generation (deterministic via seed).

struct RandomCorpus {
    TermDictionary dict;
    CorpusTensor corpus;
};

/// Corpus with up to `max_cells` random cells over small index sets.
/// Values are positive multiples of 1/64 so round-trips are exact.
inline RandomCorpus random_corpus(std::uint64_t seed, std::size_t max_cells) {
    RandomCorpus rc;
    std::mt19937_64 rng(seed);
    std::size_t n_subjects = 2 + pick_below(rng, 12);
    std::size_t n_links = 1 + pick_below(rng, 4);
    std::size_t n_objects = 2 + pick_below(rng, 12);

    std::vector<TermId> subjects, links, objects;
    for (std::size_t i = 0; i < n_subjects; ++i) {
        subjects.push_back(rc.dict.intern("s" + std::to_string(i), Role::LeftArg));
    }
    for (std::size_t i = 0; i < n_links; ++i) {
        links.push_back(rc.dict.intern("l" + std::to_string(i), Role::Link));
    }
    for (std::size_t i = 0; i < n_objects; ++i) {
        objects.push_back(rc.dict.intern("o" + std::to_string(i), Role::RightArg));
    }
    std::size_t cells = 1 + pick_below(rng, max_cells);
    for (std::size_t i = 0; i < cells; ++i) {
        CorpusKey key{subjects[pick_below(rng, subjects.size())],
                      links[pick_below(rng, links.size())],
                      objects[pick_below(rng, objects.size())]};
        double value = static_cast<double>(1 + pick_below(rng, 64)) / 64.0;
        rc.corpus.set(key, value);
    }
    return rc;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

/// Transaction-counting support oracle for binary matrices:
/// |rows containing all of X| / (sqrt(|X|) * |non-empty rows|).
/// `rows` is the dense 0/1 matrix, `feature_cols` the column set X.
inline double binary_support_oracle(const std::vector<std::vector<int>>& rows,
                                    const std::set<std::size_t>& feature_cols) {
    std::size_t non_empty = 0;
    std::size_t containing = 0;
    for (const auto& row : rows) {
        bool any = false;
        for (int v : row) {
            if (v != 0) {
                any = true;
                break;
            }
        }
        if (!any) {
            continue;
        }
        ++non_empty;
        bool all = true;
        for (std::size_t c : feature_cols) {
            if (row[c] == 0) {
                all = false;
                break;
            }
        }
        if (all) {
            ++containing;
        }
    }
    if (non_empty == 0) {
        return 0.0;
    }
    return static_cast<double>(containing) /
           (std::sqrt(static_cast<double>(feature_cols.size())) * static_cast<double>(non_empty));
}

/// Classical relative-frequency support: |rows containing X| / |non-empty rows|.
inline double classical_support_oracle(const std::vector<std::vector<int>>& rows,
                                       const std::set<std::size_t>& feature_cols) {
    return binary_support_oracle(rows, feature_cols) *
           std::sqrt(static_cast<double>(feature_cols.size()));
}

/// Independent IR metric oracle over a ranked list and gold set, written as
/// a direct transcription of the definitions.
struct IrOracle {
    double precision = 0.0;
    double recall = 0.0;
    double average_precision = 0.0;
};

inline IrOracle ir_oracle(const std::vector<std::string>& ranked, const std::set<std::string>& gold) {
    IrOracle out;
    if (gold.empty()) {
        return out;
    }
    std::size_t hits = 0;
    double ap_sum = 0.0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        bool hit = gold.count(ranked[i]) > 0;
        if (hit) {
            ++hits;
            ap_sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    out.precision = ranked.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(ranked.size());
    out.recall = static_cast<double>(hits) / static_cast<double>(gold.size());
    out.average_precision = ap_sum / static_cast<double>(gold.size());
    return out;
}

/// Builds a perspective directly from a dense value table, bypassing
/// matricize. Labels must already be in the canonical (string-sorted)
/// order the perspective keeps.
inline Perspective dense_perspective(Mode mode, std::vector<Label> row_labels,
                                     std::vector<Label> col_labels,
                                     const std::vector<std::vector<double>>& values) {
    std::vector<std::vector<Perspective::Entry>> rows(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values[i].size(); ++j) {
            if (values[i][j] != 0.0) {
                rows[i].emplace_back(static_cast<std::uint32_t>(j), values[i][j]);
            }
        }
    }
    return Perspective(mode, std::move(row_labels), std::move(col_labels), std::move(rows));
}

} // namespace dkb::testing
