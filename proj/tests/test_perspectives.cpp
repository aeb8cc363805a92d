// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/perspective.hpp"
#include "dkb/corpus.hpp"
#include "dkb/error.hpp"
#include "dkb/similarity.hpp"

#include "support.hpp"
#include "doctest.h"

#include <array>
#include <cstdio>
#include <random>

using namespace dkb;
using dkb::testing::ExampleFixture;

TEST_SUITE_BEGIN("perspectives");

namespace {

CorpusTensor example_corpus(ExampleFixture& fx) {
    CorpusConfig cfg;
    cfg.aggregation = Aggregation::RelativeFrequency;
    return build_corpus(build_source(fx.statements, fx.dict), cfg, fx.dict);
}

constexpr std::array<Mode, 6> kAllModes = {
    Mode::SubjectByLinkObject, Mode::ObjectByLinkSubject, Mode::LinkObjectBySubject,
    Mode::LinkSubjectByObject, Mode::LinkBySubjectObject, Mode::SubjectObjectByLink,
};

} // namespace

TEST_CASE("matricize s/(p,o) reproduces the worked-example matrix") {
    ExampleFixture fx;
    CorpusTensor c = example_corpus(fx);
    Perspective m = matricize(c, Mode::SubjectByLinkObject, fx.dict);

    REQUIRE(m.row_count() == 3);
    REQUIRE(m.col_count() == 5);

    auto row = [&](TermId t) { return *m.find_row(Label::term(t)); };
    auto col = [&](TermId p, TermId o) { return *m.find_col(Label::pair(p, o)); };

    CHECK(m.value(row(fx.pd), col(fx.D, fx.p)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.pd), col(fx.T, fx.d)) == doctest::Approx(2.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.pd), col(fx.T, fx.m)) == 0.0);
    CHECK(m.value(row(fx.g), col(fx.D, fx.p)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.g), col(fx.T, fx.d)) == 0.0);
    CHECK(m.value(row(fx.itd), col(fx.T, fx.m)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.itd), col(fx.I, fx.j)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.itd), col(fx.I, fx.ed)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.itd), col(fx.D, fx.p)) == 0.0);
}

TEST_CASE("matricize o/(p,s) reproduces the right-argument matrix") {
    ExampleFixture fx;
    CorpusTensor c = example_corpus(fx);
    Perspective m = matricize(c, Mode::ObjectByLinkSubject, fx.dict);

    REQUIRE(m.row_count() == 5); // p., d., m., j., e.d.
    REQUIRE(m.col_count() == 5);

    auto row = [&](TermId t) { return *m.find_row(Label::term(t)); };
    auto col = [&](TermId p, TermId s) { return *m.find_col(Label::pair(p, s)); };

    CHECK(m.value(row(fx.p), col(fx.D, fx.pd)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.p), col(fx.D, fx.g)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.d), col(fx.T, fx.pd)) == doctest::Approx(2.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.m), col(fx.T, fx.itd)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.j), col(fx.I, fx.itd)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.ed), col(fx.I, fx.itd)) == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(m.value(row(fx.j), col(fx.D, fx.pd)) == 0.0);
}

TEST_CASE("empty corpus matricizes to an empty perspective") {
    TermDictionary dict;
    CorpusTensor empty;
    for (Mode mode : kAllModes) {
        Perspective m = matricize(empty, mode, dict);
        CHECK(m.row_count() == 0);
        CHECK(m.col_count() == 0);
        CHECK(dematricize(m).cell_count() == 0);
    }
}

TEST_CASE("dematricize inverts matricize on the worked example") {
    ExampleFixture fx;
    CorpusTensor c = example_corpus(fx);
    CorpusTensor back = dematricize(matricize(c, Mode::SubjectByLinkObject, fx.dict));
    REQUIRE(back.cell_count() == c.cell_count());
    for (const auto& [key, value] : c.cells()) {
        CHECK(back.value(key) == value);
    }
}

TEST_CASE("round-trip holds for all six modes on random corpora") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto rc = dkb::testing::random_corpus(seed, 120);
        for (Mode mode : kAllModes) {
            CorpusTensor back = dematricize(matricize(rc.corpus, mode, rc.dict));
            REQUIRE(back.cell_count() == rc.corpus.cell_count());
            for (const auto& [key, value] : rc.corpus.cells()) {
                CHECK(back.value(key) == value);
            }
        }
    }
}

TEST_CASE("matricize preserves total value mass") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        auto rc = dkb::testing::random_corpus(seed, 100);
        double corpus_mass = rc.corpus.total_mass();
        for (Mode mode : kAllModes) {
            Perspective m = matricize(rc.corpus, mode, rc.dict);
            CHECK(m.total_mass() == doctest::Approx(corpus_mass).epsilon(1e-12));
        }
    }
}

TEST_CASE("(p,o)/s is the exact transpose of s/(p,o)") {
    ExampleFixture fx;
    CorpusTensor c = example_corpus(fx);
    Perspective a = matricize(c, Mode::SubjectByLinkObject, fx.dict);
    Perspective b = matricize(c, Mode::LinkObjectBySubject, fx.dict);

    REQUIRE(a.row_count() == b.col_count());
    REQUIRE(a.col_count() == b.row_count());
    for (std::uint32_t i = 0; i < a.row_count(); ++i) {
        std::uint32_t bj = *b.find_col(a.row_label(i));
        for (std::uint32_t j = 0; j < a.col_count(); ++j) {
            std::uint32_t bi = *b.find_row(a.col_label(j));
            CHECK(a.value(i, j) == b.value(bi, bj));
        }
    }
}

TEST_CASE("reduce_dimensions: identity when nothing to reduce, argument checks") {
    ExampleFixture fx;
    Perspective m = matricize(example_corpus(fx), Mode::SubjectByLinkObject, fx.dict);
    Perspective same = reduce_dimensions(m, 5, 1);
    CHECK(same.col_count() == 5);
    CHECK(same.col_label(0).kind == Label::Kind::Pair); // untouched labels
    Perspective larger = reduce_dimensions(m, 50, 1);
    CHECK(larger.col_count() == 5);
    CHECK_THROWS_AS(reduce_dimensions(m, 0, 1), StructuralError);
    CHECK_THROWS_AS(reduce_dimensions(m, -3, 1), StructuralError);
}

TEST_CASE("reduce_dimensions is deterministic for a fixed seed") {
    ExampleFixture fx;
    Perspective m = matricize(example_corpus(fx), Mode::SubjectByLinkObject, fx.dict);
    Perspective r1 = reduce_dimensions(m, 2, 42);
    Perspective r2 = reduce_dimensions(m, 2, 42);
    REQUIRE(r1.row_count() == 3);
    REQUIRE(r1.col_count() == 2);
    CHECK(r1.col_label(0).kind == Label::Kind::Synthetic);
    for (std::uint32_t i = 0; i < r1.row_count(); ++i) {
        for (std::uint32_t j = 0; j < r1.col_count(); ++j) {
            CHECK(r1.value(i, j) == r2.value(i, j)); // bit-identical
        }
    }
    Perspective r3 = reduce_dimensions(m, 2, 43);
    bool all_equal = true;
    for (std::uint32_t i = 0; i < r1.row_count(); ++i) {
        for (std::uint32_t j = 0; j < r1.col_count(); ++j) {
            all_equal = all_equal && r1.value(i, j) == r3.value(i, j);
        }
    }
    CHECK(!all_equal); // different seed, different projection
}

TEST_CASE("reduction to 100 dims keeps pairwise cosines within 0.15") {
    // 100x1000 random non-negative matrix; projection quality checked
    // against every row pair (fixed seeds, so the distortion is frozen:
    // 0.0969 worst case, well under the 0.15 bound).
    const std::size_t n_rows = 100, n_cols = 1000, target = 100;
    TermDictionary dict;
    std::vector<Label> rows_labels, cols_labels;
    TermId link = dict.intern("R", Role::Link);
    for (std::size_t i = 0; i < n_rows; ++i) {
        rows_labels.push_back(Label::term(dict.intern("row" + std::to_string(i), Role::LeftArg)));
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
        cols_labels.push_back(
            Label::pair(link, dict.intern("col" + std::to_string(j), Role::RightArg)));
    }
    std::mt19937_64 rng(1);
    std::vector<std::vector<Perspective::Entry>> rows(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            rows[i].emplace_back(static_cast<std::uint32_t>(j), pick_unit(rng) + 0.05);
        }
    }
    Perspective m(Mode::SubjectByLinkObject, rows_labels, cols_labels, std::move(rows));
    Perspective reduced = reduce_dimensions(m, target, 8);
    REQUIRE(reduced.col_count() == target);

    double worst = 0.0;
    for (std::uint32_t i = 0; i < n_rows; ++i) {
        for (std::uint32_t j = i + 1; j < n_rows; ++j) {
            double before = cosine_rows(m, i, j);
            double after = cosine_rows(reduced, i, j);
            worst = std::max(worst, std::abs(before - after));
        }
    }
    CHECK(worst < 0.15);
}

TEST_CASE("perspective TSV save/load round-trip with pair labels") {
    ExampleFixture fx;
    Perspective m = matricize(example_corpus(fx), Mode::SubjectByLinkObject, fx.dict);
    std::string path = "perspective_roundtrip.tsv";
    save_perspective(m, fx.dict, path);

    TermDictionary fresh;
    Perspective loaded = load_perspective(path, fresh);
    CHECK(loaded.mode() == m.mode());
    REQUIRE(loaded.row_count() == m.row_count());
    REQUIRE(loaded.col_count() == m.col_count());
    for (std::uint32_t i = 0; i < m.row_count(); ++i) {
        CHECK(label_string(loaded.row_label(i), fresh) == label_string(m.row_label(i), fx.dict));
        for (std::uint32_t j = 0; j < m.col_count(); ++j) {
            CHECK(loaded.value(i, j) == m.value(i, j));
        }
    }
    // and the reconstructed tensor matches through the string layer
    CorpusTensor back = dematricize(loaded);
    CorpusTensor original = example_corpus(fx);
    REQUIRE(back.cell_count() == original.cell_count());
    std::remove(path.c_str());
}

TEST_CASE("dematricize rejects synthetic columns") {
    ExampleFixture fx;
    Perspective m = matricize(example_corpus(fx), Mode::SubjectByLinkObject, fx.dict);
    Perspective reduced = reduce_dimensions(m, 2, 1);
    CHECK_THROWS_WITH_AS(dematricize(reduced), doctest::Contains("expected a pair"), StructuralError);
}

TEST_SUITE_END();
