// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/perspective.hpp"
#include "dkb/term_dictionary.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace dkb {

/// Cosine similarity of two sparse vectors given as (index, value) entries
/// sorted by index. Throws DomainError when either norm is zero. With
/// non-negative inputs the result lies in [0, 1].
double cosine(std::span<const Perspective::Entry> a, std::span<const Perspective::Entry> b);

/// Cosine of two perspective rows.
double cosine_rows(const Perspective& m, std::uint32_t i, std::uint32_t j);

struct RelatedTerm {
    TermId term = 0;
    double similarity = 0.0;
};

/// Related terms of a query row, ordered by similarity descending with ties
/// broken by ascending term string. The query itself is excluded and every
/// reported similarity is strictly positive.
struct RelatedTermList {
    TermId query = 0;
    std::vector<RelatedTerm> entries;
};

/// All term-labeled rows t' != t with cosine(row(t), row(t')) > min_sim
/// (and > 0). Rows with zero norm and pair-labeled rows are skipped.
/// Throws StructuralError when `t` is not a row label of `m`.
RelatedTermList related_terms(const Perspective& m, TermId t, double min_sim,
                              const TermDictionary& dict);

// Generic sorted-sparse-vector kernels, shared with the evaluator's
// document vectors.

template <class Key>
double sparse_dot(std::span<const std::pair<Key, double>> a, std::span<const std::pair<Key, double>> b) {
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            dot += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return dot;
}

template <class Key>
double sparse_norm(std::span<const std::pair<Key, double>> a) {
    double sum = 0.0;
    for (const auto& [key, value] : a) {
        sum += value * value;
    }
    return std::sqrt(sum);
}

} // namespace dkb
