// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/perspective.hpp"
#include "dkb/tensor.hpp"
#include "dkb/term_dictionary.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dkb {

/// One statement template (link, argument) of a single-variable rule.
/// For subject-variable rules these are the (p,o) column labels of the
/// s/(p,o) perspective; for object-variable rules the (p,s) labels of
/// o/(p,s).
struct Feature {
    TermId link = 0;
    TermId arg = 0;

    friend bool operator==(const Feature&, const Feature&) = default;
    friend auto operator<=>(const Feature&, const Feature&) = default;
};

/// Which statement slot the rule variable occupies.
enum class RuleVariable { Subject, Object };

std::string rule_variable_name(RuleVariable v);
RuleVariable parse_rule_variable(std::string_view name);

/// Conjunctive IF-THEN rule: antecedent and consequent are disjoint,
/// non-empty, sorted feature sets. The stored confidence is recomputable
/// from the perspective the rule was scored on.
struct Rule {
    RuleVariable variable = RuleVariable::Subject;
    std::vector<Feature> antecedent;
    std::vector<Feature> consequent;
    double confidence = 0.0;
};

struct MiningConfig {
    int max_rule_size = 3;              // >= 2
    double confidence_threshold = 0.5;  // rules kept when conf >= threshold
    int stagnation_window = 10;         // consecutive no-new-rule iterations that stop mining
    std::uint64_t seed = 0;
    std::optional<int> reduce_to;       // column reduction for clustering only
    RuleVariable variable = RuleVariable::Subject;
};

/// Matrix norm used by the generalized support:
/// ||M|| = sum over non-empty rows of (row sum / row non-zero count).
/// Throws DomainError when every row is empty.
double matrix_norm(const Perspective& m);

/// Generalized support of a feature set X on perspective `m`:
/// supp(X) = (1/||M||) * sum_{i in I_X} sqrt(sum_{j in X} m_ij^2) / |X|
/// where I_X are the rows in which every feature of X is non-zero.
/// Returns 0 when I_X is empty. Throws StructuralError when X is empty or
/// names a column `m` does not have.
double support(const Perspective& m, std::span<const Feature> features, const TermDictionary& dict);

/// conf(X -> Y) = supp(X u Y) / supp(X). Throws StructuralError when the
/// sides overlap or are empty, DomainError when supp(X) = 0.
double confidence(const Perspective& m, std::span<const Feature> antecedent,
                  std::span<const Feature> consequent, const TermDictionary& dict);

/// Groups the feature rows of the training perspective ((p,o)/s or (p,s)/o)
/// with k-means over Euclidean distance, k = ceil(#rows / max_rule_size).
/// Deterministic for a fixed seed: farthest-point initialization from a
/// seeded first center, nearest-center ties broken by lowest cluster index,
/// empty clusters reseeded to the point farthest from its assigned center.
/// Every feature lands in exactly one cluster. Throws NothingToMine when
/// fewer than two feature rows exist.
std::vector<std::vector<Feature>> cluster_features(const Perspective& m, const MiningConfig& cfg);

using CandidateRule = std::pair<std::vector<Feature>, std::vector<Feature>>;

/// All ordered pairs (X, Y) of disjoint non-empty subsets of `cluster` with
/// |X u Y| <= max_rule_size. A cluster of size < 2 yields no candidates;
/// without the size cap a cluster of size n yields 3^n - 2^(n+1) + 1.
std::vector<CandidateRule> enumerate_rules(std::span<const Feature> cluster, const MiningConfig& cfg);

struct MiningOutcome {
    std::vector<Rule> rules;   // canonical order (sorted by feature strings)
    std::size_t iterations = 0;
    std::string note;          // diagnostic when mining degenerated to nothing
};

/// Full mining loop: cluster on the training perspective (reduced when
/// configured), enumerate candidates, score them on the raw test
/// perspective, keep rules with conf >= threshold, and repeat with derived
/// per-iteration seeds until `stagnation_window` consecutive iterations add
/// nothing. Deterministic for a fixed cfg.seed.
MiningOutcome mine_rules(const CorpusTensor& corpus, const MiningConfig& cfg,
                         const TermDictionary& dict);

// Rule persistence: JSON lines of the form
// {"antecedent":[{"link":"R","arg":"t1"}],"consequent":[...],"confidence":0.8164965809}
// with confidences at 10 significant digits. Object-variable rules carry an
// extra "variable":"object" field.

std::string rule_to_json(const Rule& rule, const TermDictionary& dict);
void save_rules(std::span<const Rule> rules, const TermDictionary& dict, const std::string& path);
std::vector<Rule> load_rules(const std::string& path, TermDictionary& dict);

} // namespace dkb
