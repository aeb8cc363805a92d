// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

// Synthetic corpus generator: documents grouped into topics that share
// planted topic terms, a thesaurus grouping those terms under topic
// headings, and gold standards (topic terms as annotations, same-topic
// documents as related articles). Deterministic for a fixed seed, so
// pipeline runs over the generated corpus are reproducible end to end.

#include "dkb/rng.hpp"
#include "dkb/text_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct SynthConfig {
    std::string out_dir;
    std::size_t docs = 1000;
    std::size_t statements_per_doc = 50;
    std::size_t topics = 20;
    std::size_t terms_per_topic = 8;
    std::size_t background_terms = 150;
    std::uint64_t seed = 42;
};

std::string topic_term(std::size_t topic, std::size_t i) {
    return "t" + std::to_string(topic) + "_w" + std::to_string(i);
}

std::string topic_heading(std::size_t topic) {
    return "topic_" + std::to_string(topic);
}

int generate(const SynthConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    auto path = [&](const char* name) { return (fs::path(cfg.out_dir) / name).string(); };

    std::mt19937_64 rng(cfg.seed);

    // Thesaurus: topic terms grouped under their topic heading. Headings
    // stay unrelated to each other so mined rules cannot bridge topics.
    {
        std::ostringstream out;
        out << "# thesaurus: child\tparent\n";
        for (std::size_t t = 0; t < cfg.topics; ++t) {
            for (std::size_t i = 0; i < cfg.terms_per_topic; ++i) {
                out << topic_term(t, i) << '\t' << topic_heading(t) << '\n';
            }
        }
        dkb::write_file(path("thesaurus.tsv"), out.str());
    }

    // Article statements: mostly within-topic term pairs, some background
    // noise pairs shared across topics.
    std::size_t statement_lines = 0;
    {
        std::ostringstream out;
        out << "# statements: doc\ts\tp\to\tcount\n";
        for (std::size_t d = 0; d < cfg.docs; ++d) {
            std::size_t topic = d % cfg.topics;
            std::string doc = "doc" + std::to_string(d);
            for (std::size_t s = 0; s < cfg.statements_per_doc; ++s) {
                std::string left, right;
                if (dkb::pick_below(rng, 10) < 8) {
                    std::size_t a = dkb::pick_below(rng, cfg.terms_per_topic);
                    std::size_t b = dkb::pick_below(rng, cfg.terms_per_topic - 1);
                    if (b >= a) {
                        ++b;
                    }
                    left = topic_term(topic, a);
                    right = topic_term(topic, b);
                } else {
                    left = topic_term(topic, dkb::pick_below(rng, cfg.terms_per_topic));
                    right = "bg" + std::to_string(dkb::pick_below(rng, cfg.background_terms));
                    if (dkb::pick_below(rng, 2)) {
                        std::swap(left, right);
                    }
                }
                out << doc << '\t' << left << "\tR\t" << right << "\t1\n";
                ++statement_lines;
            }
        }
        dkb::write_file(path("article_statements.tsv"), out.str());
    }

    // Gold annotations: the planted topic terms plus the topic heading.
    {
        std::ostringstream out;
        out << "# gold annotations: doc\tterm\n";
        for (std::size_t d = 0; d < cfg.docs; ++d) {
            std::size_t topic = d % cfg.topics;
            std::string doc = "doc" + std::to_string(d);
            for (std::size_t i = 0; i < cfg.terms_per_topic; ++i) {
                out << doc << '\t' << topic_term(topic, i) << '\n';
            }
            out << doc << '\t' << topic_heading(topic) << '\n';
        }
        dkb::write_file(path("gold_annotations.tsv"), out.str());
    }

    // Gold related documents: every other document of the same topic.
    {
        std::ostringstream out;
        out << "# gold related: doc\trelated_doc\n";
        for (std::size_t d = 0; d < cfg.docs; ++d) {
            std::size_t topic = d % cfg.topics;
            for (std::size_t other = topic; other < cfg.docs; other += cfg.topics) {
                if (other != d) {
                    out << "doc" << d << "\tdoc" << other << '\n';
                }
            }
        }
        dkb::write_file(path("gold_related.tsv"), out.str());
    }

    // Pipeline configuration wired to the generated files.
    {
        std::ostringstream out;
        out << "statements=article_statements.tsv\n"
            << "thesaurus=thesaurus.tsv\n"
            << "gold_annotations=gold_annotations.tsv\n"
            << "gold_related=gold_related.tsv\n"
            << "output_dir=out\n"
            << "doc_weight=constant-1\n"
            << "statement_relevance=positive-pmi\n"
            << "aggregation=product\n"
            << "symmetrize_link=R\n"
            << "confidence_threshold=0.5\n"
            << "max_rule_size=3\n"
            << "stagnation_window=10\n"
            << "seed=" << cfg.seed << "\n"
            << "top_h=" << (cfg.terms_per_topic + 1) << "\n"
            << "firing_mode=subset\n"
            << "min_sim=0\n"
            << "threads=1\n";
        dkb::write_file(path("pipeline.conf"), out.str());
    }

    std::cout << "synth: " << cfg.docs << " docs, " << statement_lines << " statements, "
              << cfg.topics << " topics -> " << cfg.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic corpus generator with planted related-document structure"};
    SynthConfig cfg;
    app.add_option("--out", cfg.out_dir, "output directory")->required();
    app.add_option("--docs", cfg.docs, "number of documents");
    app.add_option("--statements-per-doc", cfg.statements_per_doc, "statements per document");
    app.add_option("--topics", cfg.topics, "number of planted topics");
    app.add_option("--terms-per-topic", cfg.terms_per_topic, "planted terms per topic");
    app.add_option("--background-terms", cfg.background_terms, "background vocabulary size");
    app.add_option("--seed", cfg.seed, "generator seed")->required();
    CLI11_PARSE(app, argc, argv);
    return generate(cfg);
}
