// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/tensor.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include "support.hpp"
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

using namespace dkb;
using dkb::testing::ExampleFixture;

TEST_SUITE_BEGIN("tensor_core");

TEST_CASE("dictionary is a bijection with stable ids and role tags") {
    TermDictionary dict;
    TermId a = dict.intern("protein", Role::LeftArg);
    TermId b = dict.intern("gene", Role::RightArg);
    CHECK(a != b);
    CHECK(dict.intern("protein", Role::RightArg) == a); // stable id, role added
    CHECK(dict.term(a) == "protein");
    CHECK(dict.term(b) == "gene");
    CHECK(dict.find("protein") == a);
    CHECK(!dict.find("domain").has_value());
    CHECK(dict.has_role(a, Role::LeftArg));
    CHECK(dict.has_role(a, Role::RightArg));
    CHECK(!dict.has_role(a, Role::Link));
    CHECK(dict.size() == 2);
    CHECK_THROWS_AS(dict.term(99), StructuralError);
}

TEST_CASE("build_source: the seven worked-example statements give seven unit cells") {
    ExampleFixture fx;
    SourceTensor g = build_source(fx.statements, fx.dict);
    CHECK(g.cell_count() == 7);
    CHECK(g.value({fx.pd, fx.D, fx.p, fx.d1}) == 1.0);
    CHECK(g.value({fx.pd, fx.T, fx.d, fx.d1}) == 1.0);
    CHECK(g.value({fx.g, fx.D, fx.p, fx.d2}) == 1.0);
    CHECK(g.value({fx.itd, fx.T, fx.m, fx.d3}) == 1.0);
    CHECK(g.value({fx.itd, fx.I, fx.j, fx.d3}) == 1.0);
    CHECK(g.value({fx.itd, fx.I, fx.ed, fx.d3}) == 1.0);
    // the repeated (p.d., T, d.) statement lands in a second provenance cell
    CHECK(g.value({fx.pd, fx.T, fx.d, fx.d4}) == 1.0);
    CHECK(g.total_mass() == 7.0);
}

TEST_CASE("build_source: empty stream gives an empty tensor") {
    TermDictionary dict;
    SourceTensor g = build_source({}, dict);
    CHECK(g.cell_count() == 0);
    CHECK(g.empty());
}

TEST_CASE("build_source: counts are additive per cell") {
    ExampleFixture fx;
    std::vector<Statement> twice = {fx.statements[0], fx.statements[0]};
    SourceTensor g = build_source(twice, fx.dict);
    CHECK(g.cell_count() == 1);
    CHECK(g.value({fx.pd, fx.D, fx.p, fx.d1}) == 2.0);
}

TEST_CASE("build_source: unknown ids and wrong roles are structural errors naming the statement") {
    ExampleFixture fx;
    std::vector<Statement> bad{fx.statements[0]};
    bad[0].subject = 4096;
    CHECK_THROWS_AS(build_source(bad, fx.dict), StructuralError);

    std::vector<Statement> crossed{fx.statements[0]};
    crossed[0].link = fx.d1; // a provenance id in the link slot
    CHECK_THROWS_WITH_AS(build_source(crossed, fx.dict),
                         doctest::Contains("lacks the link role"), StructuralError);

    std::vector<Statement> zero{fx.statements[0]};
    zero[0].count = 0.0;
    CHECK_THROWS_WITH_AS(build_source(zero, fx.dict),
                         doctest::Contains("non-positive count"), StructuralError);
}

TEST_CASE("build_source is order independent") {
    ExampleFixture fx;
    std::vector<Statement> statements = fx.statements;
    // add fractional counts so accumulation order would show up if unsorted
    statements.push_back({fx.pd, fx.D, fx.p, fx.d1, 0.1});
    statements.push_back({fx.pd, fx.D, fx.p, fx.d1, 0.3});
    statements.push_back({fx.pd, fx.D, fx.p, fx.d1, 0.7});
    SourceTensor reference = build_source(statements, fx.dict);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(statements.begin(), statements.end(), rng);
        SourceTensor shuffled = build_source(statements, fx.dict);
        REQUIRE(shuffled.cell_count() == reference.cell_count());
        for (const auto& [key, value] : reference.cells()) {
            CHECK(shuffled.value(key) == value); // bit-identical
        }
    }
}

TEST_CASE("source tensor mass equals total input count mass") {
    ExampleFixture fx;
    std::vector<Statement> statements = fx.statements;
    statements.push_back({fx.g, fx.D, fx.p, fx.d2, 2.5});
    SourceTensor g = build_source(statements, fx.dict);
    CHECK(g.total_mass() == 9.5);
}

TEST_CASE("symmetrize: closure, idempotence, max-merge") {
    TermDictionary dict;
    TermId a = dict.intern("a", Role::LeftArg);
    TermId b = dict.intern("b", Role::RightArg);
    TermId r = dict.intern("R", Role::Link);

    CorpusTensor t;
    t.set({a, r, b}, 0.5);

    SUBCASE("one direction gets mirrored") {
        CorpusTensor s = symmetrize(t, r);
        CHECK(s.cell_count() == 2);
        CHECK(s.value({a, r, b}) == 0.5);
        CHECK(s.value({b, r, a}) == 0.5);
    }
    SUBCASE("already symmetric input is unchanged") {
        t.set({b, r, a}, 0.5);
        CorpusTensor s = symmetrize(t, r);
        CHECK(s.cell_count() == 2);
        CHECK(s.value({a, r, b}) == 0.5);
        CHECK(s.value({b, r, a}) == 0.5);
    }
    SUBCASE("conflicting directions merge by max") {
        t.set({b, r, a}, 0.2);
        CorpusTensor s = symmetrize(t, r);
        CHECK(s.value({a, r, b}) == 0.5);
        CHECK(s.value({b, r, a}) == 0.5);
    }
    SUBCASE("other links are untouched") {
        TermId q = dict.intern("Q", Role::Link);
        t.set({a, q, b}, 0.9);
        CorpusTensor s = symmetrize(t, r);
        CHECK(s.value({a, q, b}) == 0.9);
        CHECK(s.value({b, q, a}) == 0.0);
    }
    SUBCASE("empty tensor is a no-op") {
        CorpusTensor empty;
        CHECK(symmetrize(empty, r).cell_count() == 0);
    }
}

TEST_CASE("symmetrize is idempotent on random corpora") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto rc = dkb::testing::random_corpus(seed, 60);
        TermId link = *rc.dict.find("l0");
        CorpusTensor once = symmetrize(rc.corpus, link);
        CorpusTensor twice = symmetrize(once, link);
        REQUIRE(once.cell_count() == twice.cell_count());
        for (const auto& [key, value] : once.cells()) {
            CHECK(twice.value(key) == value);
        }
    }
}

TEST_CASE("tensor TSV round-trips through strings") {
    ExampleFixture fx;
    SourceTensor g = build_source(fx.statements, fx.dict);

    std::ostringstream source_text;
    save_source(g, fx.dict, source_text);
    std::string path = "tensor_roundtrip_source.tsv";
    write_file(path, source_text.str());

    TermDictionary fresh;
    SourceTensor loaded = load_source(path, fresh);
    CHECK(loaded.cell_count() == g.cell_count());
    for (const auto& [key, value] : g.cells()) {
        SourceKey translated{*fresh.find(fx.dict.term(key.subject)),
                             *fresh.find(fx.dict.term(key.link)),
                             *fresh.find(fx.dict.term(key.object)),
                             *fresh.find(fx.dict.term(key.provenance))};
        CHECK(loaded.value(translated) == value);
    }

    // saving the reloaded tensor reproduces the bytes
    std::ostringstream second;
    save_source(loaded, fresh, second);
    CHECK(second.str() == source_text.str());
    std::remove(path.c_str());
}

TEST_CASE("corpus TSV save/load round-trip") {
    auto rc = dkb::testing::random_corpus(42, 80);
    std::string path = "tensor_roundtrip_corpus.tsv";
    save_corpus(rc.corpus, rc.dict, path);
    TermDictionary fresh;
    CorpusTensor loaded = load_corpus(path, fresh);
    CHECK(loaded.cell_count() == rc.corpus.cell_count());
    for (const auto& [key, value] : rc.corpus.cells()) {
        CorpusKey translated{*fresh.find(rc.dict.term(key.subject)),
                             *fresh.find(rc.dict.term(key.link)),
                             *fresh.find(rc.dict.term(key.object))};
        CHECK(loaded.value(translated) == value);
    }
    std::remove(path.c_str());
}

TEST_SUITE_END();
