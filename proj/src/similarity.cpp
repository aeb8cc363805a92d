// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/similarity.hpp"
#include "dkb/error.hpp"

#include <algorithm>

namespace dkb {

double cosine(std::span<const Perspective::Entry> a, std::span<const Perspective::Entry> b) {
    double na = sparse_norm(a);
    double nb = sparse_norm(b);
    if (na == 0.0 || nb == 0.0) {
        throw DomainError("cosine undefined for a zero-norm vector");
    }
    return sparse_dot(a, b) / (na * nb);
}

double cosine_rows(const Perspective& m, std::uint32_t i, std::uint32_t j) {
    return cosine(m.row(i), m.row(j));
}

RelatedTermList related_terms(const Perspective& m, TermId t, double min_sim,
                              const TermDictionary& dict) {
    auto query_row = m.find_row(Label::term(t));
    if (!query_row) {
        throw StructuralError("term '" + dict.term(t) + "' is not a row of the " +
                              mode_name(m.mode()) + " perspective");
    }
    auto query = m.row(*query_row);
    double query_norm = sparse_norm(query);

    RelatedTermList out;
    out.query = t;
    if (query_norm == 0.0) {
        return out; // nothing can be strictly positive against a zero row
    }
    for (std::uint32_t i = 0; i < m.row_count(); ++i) {
        if (i == *query_row || m.row_label(i).kind != Label::Kind::Term) {
            continue;
        }
        auto row = m.row(i);
        double norm = sparse_norm(row);
        if (norm == 0.0) {
            continue;
        }
        double sim = sparse_dot(query, row) / (query_norm * norm);
        if (sim > min_sim && sim > 0.0) {
            out.entries.push_back({m.row_label(i).a, sim});
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [&](const RelatedTerm& x, const RelatedTerm& y) {
        if (x.similarity != y.similarity) {
            return x.similarity > y.similarity;
        }
        return dict.term(x.term) < dict.term(y.term);
    });
    return out;
}

} // namespace dkb
