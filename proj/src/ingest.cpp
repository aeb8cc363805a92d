// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/ingest.hpp"
#include "dkb/error.hpp"
#include "dkb/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dkb {

void SynonymTable::add(std::string synonym, std::string preferred) {
    if (synonym == preferred) {
        return;
    }
    map_[std::move(synonym)] = std::move(preferred);
}

void SynonymTable::finalize() {
    for (auto& [synonym, preferred] : map_) {
        std::unordered_set<std::string> visited{synonym};
        while (true) {
            auto next = map_.find(preferred);
            if (next == map_.end()) {
                break;
            }
            if (!visited.insert(preferred).second) {
                throw ParseError("synonym cycle involving '" + synonym + "'");
            }
            preferred = next->second;
        }
    }
}

const std::string& SynonymTable::normalize(const std::string& term) const {
    auto it = map_.find(term);
    return it == map_.end() ? term : it->second;
}

SynonymTable SynonymTable::load(const std::string& path) {
    SynonymTable table;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected synonym<TAB>preferred");
        }
        table.add(std::string(f[0]), std::string(f[1]));
    });
    table.finalize();
    return table;
}

std::vector<Statement> parse_statement_file(std::string_view text, std::string_view name,
                                            TermDictionary& dict) {
    std::vector<Statement> out;
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        std::string context = std::string(name) + ":" + std::to_string(line_no);
        if (f.size() != 5) {
            throw ParseError(context + ": expected 5 columns (doc, s, p, o, count), got " +
                             std::to_string(f.size()));
        }
        double count = parse_double(f[4], context);
        if (!(count > 0.0)) {
            throw ParseError(context + ": rejected line, count must be positive (got " +
                             std::string(f[4]) + ")");
        }
        Statement st;
        st.provenance = dict.intern(f[0], Role::Provenance);
        st.subject = dict.intern(f[1], Role::LeftArg);
        st.link = dict.intern(f[2], Role::Link);
        st.object = dict.intern(f[3], Role::RightArg);
        st.count = count;
        out.push_back(st);
    });
    return out;
}

std::vector<Statement> parse_statement_file(const std::string& path, TermDictionary& dict) {
    return parse_statement_file(read_file(path), path, dict);
}

void save_statement_file(std::span<const Statement> statements, const TermDictionary& dict,
                         std::ostream& out) {
    struct Row {
        const std::string* d;
        const std::string* s;
        const std::string* p;
        const std::string* o;
        double count;
    };
    std::vector<Row> rows;
    rows.reserve(statements.size());
    for (const Statement& st : statements) {
        rows.push_back({&dict.term(st.provenance), &dict.term(st.subject), &dict.term(st.link),
                        &dict.term(st.object), st.count});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(*a.d, *a.s, *a.p, *a.o, a.count) < std::tie(*b.d, *b.s, *b.p, *b.o, b.count);
    });
    out << "# statements: doc\ts\tp\to\tcount\n";
    for (const Row& r : rows) {
        out << *r.d << '\t' << *r.s << '\t' << *r.p << '\t' << *r.o << '\t'
            << format_double(r.count) << '\n';
    }
}

void save_statement_file(std::span<const Statement> statements, const TermDictionary& dict,
                         const std::string& path) {
    std::ostringstream out;
    save_statement_file(statements, dict, out);
    write_file(path, out.str());
}

std::vector<ThesaurusEdge> load_thesaurus(const std::string& path) {
    std::vector<ThesaurusEdge> edges;
    std::string text = read_file(path);
    for_each_tsv_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected child<TAB>parent");
        }
        if (f[0].empty() || f[1].empty()) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": empty term");
        }
        if (f[0] == f[1]) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": self-loop '" +
                             std::string(f[0]) + "'");
        }
        edges.push_back({std::string(f[0]), std::string(f[1])});
    });
    return edges;
}

std::vector<Statement> thesaurus_to_statements(std::span<const ThesaurusEdge> edges,
                                               std::string_view link, std::string_view doc,
                                               TermDictionary& dict) {
    // Unordered related pairs: parent/child directly, siblings via a shared
    // parent. std::set keeps the emission order canonical.
    std::set<std::pair<std::string, std::string>> pairs;
    auto add_pair = [&](const std::string& a, const std::string& b) {
        if (a == b) {
            return;
        }
        pairs.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    };

    std::map<std::string, std::vector<std::string>> children_of;
    for (const ThesaurusEdge& e : edges) {
        add_pair(e.child, e.parent);
        children_of[e.parent].push_back(e.child);
    }
    for (auto& [parent, children] : children_of) {
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()), children.end());
        for (std::size_t i = 0; i < children.size(); ++i) {
            for (std::size_t j = i + 1; j < children.size(); ++j) {
                add_pair(children[i], children[j]);
            }
        }
    }

    TermId link_id = dict.intern(link, Role::Link);
    TermId doc_id = dict.intern(doc, Role::Provenance);
    std::vector<Statement> out;
    out.reserve(pairs.size() * 2);
    for (const auto& [a, b] : pairs) {
        TermId a_left = dict.intern(a, Role::LeftArg);
        TermId b_right = dict.intern(b, Role::RightArg);
        TermId b_left = dict.intern(b, Role::LeftArg);
        TermId a_right = dict.intern(a, Role::RightArg);
        out.push_back({a_left, link_id, b_right, doc_id, 1.0});
        out.push_back({b_left, link_id, a_right, doc_id, 1.0});
    }
    return out;
}

namespace {

std::vector<std::string> word_tokens(std::string_view sentence) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : sentence) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

std::vector<std::string_view> split_sentences(std::string_view text) {
    std::vector<std::string_view> sentences;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' || c == '?' || c == '!') {
            std::size_t j = i + 1;
            while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!')) {
                ++j;
            }
            if (j >= text.size() || std::isspace(static_cast<unsigned char>(text[j]))) {
                sentences.push_back(text.substr(start, i - start));
                i = j;
                start = j;
            }
        }
    }
    if (start < text.size()) {
        sentences.push_back(text.substr(start));
    }
    return sentences;
}

// Tokens a vocabulary-free extraction ignores.
const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words = {
        "a", "about", "above", "after", "again", "all", "an", "and", "any", "are", "as", "at",
        "be", "because", "been", "before", "being", "between", "both", "but", "by", "can",
        "did", "do", "does", "doing", "down", "during", "each", "few", "for", "from", "further",
        "had", "has", "have", "having", "he", "her", "here", "hers", "him", "his", "how", "i",
        "if", "in", "into", "is", "it", "its", "just", "more", "most", "my", "no", "nor", "not",
        "now", "of", "off", "on", "once", "only", "or", "other", "our", "out", "over", "own",
        "same", "she", "should", "so", "some", "such", "than", "that", "the", "their", "them",
        "then", "there", "these", "they", "this", "those", "through", "to", "too", "under",
        "until", "up", "very", "was", "we", "were", "what", "when", "where", "which", "while",
        "who", "whom", "why", "will", "with", "would", "you", "your",
    };
    return words;
}

struct PhraseTable {
    // lowercase space-joined phrase -> canonical surface form
    std::unordered_map<std::string, std::string> phrases;
    std::size_t max_len = 1;

    void add(std::string_view surface, std::string_view canonical) {
        std::vector<std::string> tokens = word_tokens(surface);
        if (tokens.empty()) {
            return;
        }
        std::string key = tokens[0];
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            key += ' ';
            key += tokens[i];
        }
        max_len = std::max(max_len, tokens.size());
        phrases.emplace(std::move(key), std::string(canonical));
    }
};

} // namespace

std::vector<Statement> extract_cooccurrence(std::string_view text, const SynonymTable& synonyms,
                                            const std::vector<std::string>* vocab,
                                            std::string_view doc, std::string_view link,
                                            TermDictionary& dict) {
    PhraseTable table;
    if (vocab) {
        std::unordered_set<std::string> vocab_set(vocab->begin(), vocab->end());
        for (const std::string& term : *vocab) {
            table.add(term, term);
        }
        // Synonyms whose preferred heading is in the vocabulary match too,
        // normalization happening before vocabulary lookup.
        for (const auto& [synonym, preferred] : synonyms.entries()) {
            if (vocab_set.count(preferred)) {
                table.add(synonym, preferred);
            }
        }
    } else {
        for (const auto& [synonym, preferred] : synonyms.entries()) {
            table.add(synonym, preferred);
        }
    }

    struct PairStats {
        double count = 0.0;
        bool first_is_lesser = true; // direction observed in the first sentence
    };
    std::map<std::pair<std::string, std::string>, PairStats> pair_counts;

    for (std::string_view sentence : split_sentences(text)) {
        std::vector<std::string> tokens = word_tokens(sentence);
        std::vector<std::string> terms; // first-occurrence order
        std::unordered_set<std::string> seen_terms;

        std::size_t i = 0;
        while (i < tokens.size()) {
            std::string matched;
            std::size_t matched_len = 0;
            std::size_t longest = std::min(table.max_len, tokens.size() - i);
            std::string key;
            for (std::size_t len = longest; len >= 1; --len) {
                key.clear();
                for (std::size_t t = 0; t < len; ++t) {
                    if (t) key += ' ';
                    key += tokens[i + t];
                }
                auto it = table.phrases.find(key);
                if (it != table.phrases.end()) {
                    matched = it->second;
                    matched_len = len;
                    break;
                }
            }
            if (matched_len > 0) {
                if (vocab) {
                    if (seen_terms.insert(matched).second) {
                        terms.push_back(matched);
                    }
                } else {
                    // Synonym hit in vocabulary-free mode: keep the
                    // preferred form, still subject to nothing further.
                    if (seen_terms.insert(matched).second) {
                        terms.push_back(matched);
                    }
                }
                i += matched_len;
                continue;
            }
            if (!vocab) {
                const std::string& token = tokens[i];
                if (!stopwords().count(token)) {
                    std::string canonical = synonyms.normalize(token);
                    if (seen_terms.insert(canonical).second) {
                        terms.push_back(canonical);
                    }
                }
            }
            ++i;
        }

        for (std::size_t a = 0; a < terms.size(); ++a) {
            for (std::size_t b = a + 1; b < terms.size(); ++b) {
                bool lesser_first = terms[a] < terms[b];
                auto key = lesser_first ? std::make_pair(terms[a], terms[b])
                                        : std::make_pair(terms[b], terms[a]);
                auto [it, inserted] = pair_counts.try_emplace(key);
                if (inserted) {
                    it->second.first_is_lesser = lesser_first;
                }
                it->second.count += 1.0;
            }
        }
    }

    TermId doc_id = dict.intern(doc, Role::Provenance);
    TermId link_id = dict.intern(link, Role::Link);
    std::vector<Statement> out;
    out.reserve(pair_counts.size());
    for (const auto& [key, stats] : pair_counts) {
        const std::string& subject = stats.first_is_lesser ? key.first : key.second;
        const std::string& object = stats.first_is_lesser ? key.second : key.first;
        out.push_back({dict.intern(subject, Role::LeftArg), link_id,
                       dict.intern(object, Role::RightArg), doc_id, stats.count});
    }
    return out;
}

} // namespace dkb
