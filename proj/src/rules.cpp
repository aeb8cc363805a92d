// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/rules.hpp"
#include "dkb/error.hpp"
#include "dkb/rng.hpp"
#include "dkb/text_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dkb {

std::string rule_variable_name(RuleVariable v) {
    return v == RuleVariable::Subject ? "subject" : "object";
}

RuleVariable parse_rule_variable(std::string_view name) {
    if (name == "subject") return RuleVariable::Subject;
    if (name == "object") return RuleVariable::Object;
    throw ConfigError("unknown rule variable '" + std::string(name) + "' (expected subject or object)");
}

double matrix_norm(const Perspective& m) {
    double norm = 0.0;
    bool any = false;
    for (std::uint32_t i = 0; i < m.row_count(); ++i) {
        std::size_t nnz = m.row_nnz(i);
        if (nnz == 0) {
            continue;
        }
        any = true;
        norm += m.row_sum(i) / static_cast<double>(nnz);
    }
    if (!any) {
        throw DomainError("matrix norm undefined: every row is empty");
    }
    return norm;
}

namespace {

std::vector<std::uint32_t> feature_columns(const Perspective& m, std::span<const Feature> features,
                                           const TermDictionary& dict) {
    if (features.empty()) {
        throw StructuralError("feature set must not be empty");
    }
    std::vector<std::uint32_t> cols;
    cols.reserve(features.size());
    for (const Feature& f : features) {
        auto col = m.find_col(Label::pair(f.link, f.arg));
        if (!col) {
            throw StructuralError("feature '" + dict.term(f.link) + "|" + dict.term(f.arg) +
                                  "' is not a column of the " + mode_name(m.mode()) + " perspective");
        }
        cols.push_back(*col);
    }
    return cols;
}

// Rows in which every listed column is non-zero, via sorted-list intersection.
std::vector<std::uint32_t> rows_supporting(const Perspective& m, const std::vector<std::uint32_t>& cols) {
    std::vector<std::uint32_t> rows = m.col_rows(cols[0]);
    for (std::size_t c = 1; c < cols.size() && !rows.empty(); ++c) {
        const auto& other = m.col_rows(cols[c]);
        std::vector<std::uint32_t> merged;
        std::set_intersection(rows.begin(), rows.end(), other.begin(), other.end(),
                              std::back_inserter(merged));
        rows = std::move(merged);
    }
    return rows;
}

double support_on_columns(const Perspective& m, const std::vector<std::uint32_t>& cols, double norm) {
    std::vector<std::uint32_t> rows = rows_supporting(m, cols);
    if (rows.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::uint32_t i : rows) {
        double sq = 0.0;
        for (std::uint32_t j : cols) {
            double v = m.value(i, j);
            sq += v * v;
        }
        sum += std::sqrt(sq) / static_cast<double>(cols.size());
    }
    return sum / norm;
}

} // namespace

double support(const Perspective& m, std::span<const Feature> features, const TermDictionary& dict) {
    return support_on_columns(m, feature_columns(m, features, dict), matrix_norm(m));
}

double confidence(const Perspective& m, std::span<const Feature> antecedent,
                  std::span<const Feature> consequent, const TermDictionary& dict) {
    if (antecedent.empty() || consequent.empty()) {
        throw StructuralError("rule sides must be non-empty");
    }
    std::set<Feature> overlap_check(antecedent.begin(), antecedent.end());
    for (const Feature& f : consequent) {
        if (overlap_check.count(f)) {
            throw StructuralError("antecedent and consequent must be disjoint");
        }
    }
    double norm = matrix_norm(m);
    auto a_cols = feature_columns(m, antecedent, dict);
    double supp_a = support_on_columns(m, a_cols, norm);
    if (supp_a == 0.0) {
        throw DomainError("confidence undefined: antecedent has zero support");
    }
    auto all_cols = a_cols;
    auto c_cols = feature_columns(m, consequent, dict);
    all_cols.insert(all_cols.end(), c_cols.begin(), c_cols.end());
    return support_on_columns(m, all_cols, norm) / supp_a;
}

std::vector<std::vector<Feature>> cluster_features(const Perspective& m, const MiningConfig& cfg) {
    std::size_t n = m.row_count();
    if (n < 2) {
        throw NothingToMine("fewer than two feature rows; nothing to mine");
    }
    if (cfg.max_rule_size < 2) {
        throw ConfigError("max_rule_size must be at least 2");
    }
    std::size_t n_cols = m.col_count();
    std::size_t k = (n + cfg.max_rule_size - 1) / cfg.max_rule_size;
    k = std::max<std::size_t>(1, std::min(k, n));

    // Dense copies of the sparse feature rows; the training matrix is small
    // (and typically column-reduced) by the time it gets here.
    std::vector<std::vector<double>> pts(n, std::vector<double>(n_cols, 0.0));
    for (std::uint32_t i = 0; i < n; ++i) {
        for (const auto& [j, v] : m.row(i)) {
            pts[i][j] = v;
        }
    }
    auto sq_dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double sum = 0.0;
        for (std::size_t d = 0; d < a.size(); ++d) {
            double diff = a[d] - b[d];
            sum += diff * diff;
        }
        return sum;
    };

    // Farthest-point initialization from a seeded first center.
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> center_rows;
    std::vector<char> is_center(n, 0);
    std::size_t first = static_cast<std::size_t>(pick_below(rng, n));
    center_rows.push_back(first);
    is_center[first] = 1;
    std::vector<double> nearest_sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        nearest_sq[i] = sq_dist(pts[i], pts[first]);
    }
    while (center_rows.size() < k) {
        std::size_t best = n;
        double best_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_center[i] && nearest_sq[i] > best_d) {
                best_d = nearest_sq[i];
                best = i;
            }
        }
        if (best == n) {
            break;
        }
        center_rows.push_back(best);
        is_center[best] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            nearest_sq[i] = std::min(nearest_sq[i], sq_dist(pts[i], pts[best]));
        }
    }
    k = center_rows.size();

    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    for (std::size_t c : center_rows) {
        centers.push_back(pts[c]);
    }

    std::vector<std::size_t> assign(n, 0);
    const int max_iterations = 100;
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = sq_dist(pts[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                double d = sq_dist(pts[i], centers[c]);
                if (d < best_d) { // strict: ties stay with the lowest index
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }

        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assign[i]];
        }
        // Reseed empty clusters with the point farthest from its current
        // center, taken from clusters that can spare one.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) {
                continue;
            }
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assign[i]] < 2) {
                    continue;
                }
                double d = sq_dist(pts[i], centers[assign[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far == n) {
                continue;
            }
            --counts[assign[far]];
            assign[far] = c;
            counts[c] = 1;
            changed = true;
        }

        for (auto& center : centers) {
            std::fill(center.begin(), center.end(), 0.0);
        }
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assign[i]];
            for (std::size_t d = 0; d < n_cols; ++d) {
                centers[assign[i]][d] += pts[i][d];
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (double& v : centers[c]) {
                    v /= static_cast<double>(counts[c]);
                }
            }
        }
        if (!changed) {
            break;
        }
    }

    std::vector<std::vector<Feature>> clusters(k);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Label& label = m.row_label(i);
        if (label.kind != Label::Kind::Pair) {
            throw StructuralError("training perspective rows must be (link, argument) pairs");
        }
        clusters[assign[i]].push_back({label.a, label.b});
    }
    clusters.erase(std::remove_if(clusters.begin(), clusters.end(),
                                  [](const auto& c) { return c.empty(); }),
                   clusters.end());
    for (auto& cluster : clusters) {
        std::sort(cluster.begin(), cluster.end());
    }
    return clusters;
}

std::vector<CandidateRule> enumerate_rules(std::span<const Feature> cluster, const MiningConfig& cfg) {
    std::vector<CandidateRule> out;
    std::size_t n = cluster.size();
    if (n < 2) {
        return out;
    }
    std::vector<Feature> sorted(cluster.begin(), cluster.end());
    std::sort(sorted.begin(), sorted.end());

    std::size_t max_size = std::min<std::size_t>(n, static_cast<std::size_t>(cfg.max_rule_size));
    std::vector<std::size_t> combo;
    // All subsets S with 2 <= |S| <= max_rule_size, then every ordered split
    // of S into non-empty (X, Y).
    auto emit_splits = [&](const std::vector<std::size_t>& subset) {
        std::size_t t = subset.size();
        for (std::uint32_t mask = 1; mask + 1 < (1u << t); ++mask) {
            CandidateRule rule;
            for (std::size_t b = 0; b < t; ++b) {
                if (mask & (1u << b)) {
                    rule.first.push_back(sorted[subset[b]]);
                } else {
                    rule.second.push_back(sorted[subset[b]]);
                }
            }
            out.push_back(std::move(rule));
        }
    };
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t want) {
        if (want == 0) {
            emit_splits(combo);
            return;
        }
        for (std::size_t i = start; i + want <= n; ++i) {
            combo.push_back(i);
            choose(i + 1, want - 1);
            combo.pop_back();
        }
    };
    for (std::size_t size = 2; size <= max_size; ++size) {
        choose(0, size);
    }
    return out;
}

namespace {

Mode training_mode(RuleVariable v) {
    return v == RuleVariable::Subject ? Mode::LinkObjectBySubject : Mode::LinkSubjectByObject;
}

Mode test_mode(RuleVariable v) {
    return v == RuleVariable::Subject ? Mode::SubjectByLinkObject : Mode::ObjectByLinkSubject;
}

using RuleKey = std::pair<std::vector<Feature>, std::vector<Feature>>;

} // namespace

MiningOutcome mine_rules(const CorpusTensor& corpus, const MiningConfig& cfg,
                         const TermDictionary& dict) {
    MiningOutcome outcome;
    if (corpus.empty()) {
        outcome.note = "empty corpus; nothing to mine";
        return outcome;
    }

    Perspective training = matricize(corpus, training_mode(cfg.variable), dict);
    if (cfg.reduce_to) {
        training = reduce_dimensions(training, *cfg.reduce_to, derive_seed(cfg.seed, 0xD1CEull));
    }
    // Rules are always scored on the raw, unreduced matrix.
    Perspective test = matricize(corpus, test_mode(cfg.variable), dict);

    double norm;
    try {
        norm = matrix_norm(test);
    } catch (const DomainError&) {
        outcome.note = "degenerate matrix norm; nothing to mine";
        return outcome;
    }

    std::map<RuleKey, double> accepted;
    std::set<RuleKey> seen;
    int stagnant = 0;
    std::size_t iteration = 0;

    auto support_of = [&](std::span<const Feature> features) {
        std::vector<std::uint32_t> cols;
        cols.reserve(features.size());
        for (const Feature& f : features) {
            auto col = test.find_col(Label::pair(f.link, f.arg));
            if (!col) {
                return 0.0; // feature absent from the test matrix: no support
            }
            cols.push_back(*col);
        }
        return support_on_columns(test, cols, norm);
    };

    while (stagnant < cfg.stagnation_window) {
        MiningConfig iter_cfg = cfg;
        iter_cfg.seed = derive_seed(cfg.seed, iteration);

        std::vector<std::vector<Feature>> clusters;
        try {
            clusters = cluster_features(training, iter_cfg);
        } catch (const NothingToMine& e) {
            outcome.note = e.what();
            break;
        }

        bool added = false;
        for (const auto& cluster : clusters) {
            for (CandidateRule& cand : enumerate_rules(cluster, cfg)) {
                RuleKey key{cand.first, cand.second};
                if (!seen.insert(key).second) {
                    continue;
                }
                double supp_a = support_of(cand.first);
                if (supp_a <= 0.0) {
                    continue;
                }
                std::vector<Feature> all = cand.first;
                all.insert(all.end(), cand.second.begin(), cand.second.end());
                double conf = support_of(all) / supp_a;
                if (conf >= cfg.confidence_threshold) {
                    accepted.emplace(std::move(key), conf);
                    added = true;
                }
            }
        }
        ++iteration;
        stagnant = added ? 0 : stagnant + 1;
    }

    outcome.iterations = iteration;
    outcome.rules.reserve(accepted.size());
    for (const auto& [key, conf] : accepted) {
        outcome.rules.push_back({cfg.variable, key.first, key.second, conf});
    }
    // Canonical output order: by the string form of the feature lists.
    auto feature_strings = [&](const std::vector<Feature>& fs) {
        std::vector<std::pair<std::string, std::string>> out;
        out.reserve(fs.size());
        for (const Feature& f : fs) {
            out.emplace_back(dict.term(f.link), dict.term(f.arg));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::stable_sort(outcome.rules.begin(), outcome.rules.end(), [&](const Rule& a, const Rule& b) {
        auto ka = std::make_pair(feature_strings(a.antecedent), feature_strings(a.consequent));
        auto kb = std::make_pair(feature_strings(b.antecedent), feature_strings(b.consequent));
        return ka < kb;
    });
    return outcome;
}

namespace {

std::string json_escape(const std::string& s) {
    return nlohmann::json(s).dump();
}

std::string features_to_json(const std::vector<Feature>& fs, const TermDictionary& dict) {
    std::vector<std::pair<std::string, std::string>> named;
    named.reserve(fs.size());
    for (const Feature& f : fs) {
        named.emplace_back(dict.term(f.link), dict.term(f.arg));
    }
    std::sort(named.begin(), named.end());
    std::string out = "[";
    for (std::size_t i = 0; i < named.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += "{\"link\":" + json_escape(named[i].first) + ",\"arg\":" + json_escape(named[i].second) + "}";
    }
    return out + "]";
}

} // namespace

std::string rule_to_json(const Rule& rule, const TermDictionary& dict) {
    std::string line = "{\"antecedent\":" + features_to_json(rule.antecedent, dict) +
                       ",\"consequent\":" + features_to_json(rule.consequent, dict) +
                       ",\"confidence\":" + format_sig(rule.confidence, 10);
    if (rule.variable == RuleVariable::Object) {
        line += ",\"variable\":\"object\"";
    }
    return line + "}";
}

void save_rules(std::span<const Rule> rules, const TermDictionary& dict, const std::string& path) {
    std::ostringstream out;
    for (const Rule& rule : rules) {
        out << rule_to_json(rule, dict) << '\n';
    }
    write_file(path, out.str());
}

std::vector<Rule> load_rules(const std::string& path, TermDictionary& dict) {
    std::string text = read_file(path);
    std::vector<Rule> rules;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line(text.data() + pos, end - pos);
        ++line_no;
        if (!is_skippable_line(line)) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
            }
            Rule rule;
            if (j.contains("variable")) {
                rule.variable = parse_rule_variable(j["variable"].get<std::string>());
            }
            // For subject-variable rules the arguments sit in the object
            // slot, for object-variable rules in the subject slot.
            Role arg_role = rule.variable == RuleVariable::Subject ? Role::RightArg : Role::LeftArg;
            auto read_side = [&](const char* side) {
                std::vector<Feature> fs;
                if (!j.contains(side) || !j[side].is_array() || j[side].empty()) {
                    throw ParseError(path + ":" + std::to_string(line_no) +
                                     ": missing or empty '" + side + "'");
                }
                for (const auto& item : j[side]) {
                    fs.push_back({dict.intern(item.at("link").get<std::string>(), Role::Link),
                                  dict.intern(item.at("arg").get<std::string>(), arg_role)});
                }
                std::sort(fs.begin(), fs.end());
                return fs;
            };
            rule.antecedent = read_side("antecedent");
            rule.consequent = read_side("consequent");
            rule.confidence = j.at("confidence").get<double>();
            rules.push_back(std::move(rule));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return rules;
}

} // namespace dkb
