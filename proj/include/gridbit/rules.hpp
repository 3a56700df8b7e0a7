#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridbit/channel.hpp"

namespace gridbit {

enum class RuleKind { And, Or, Majority, KOutOfN };

/// A hard-decision fusion rule. KOutOfN fires when at least k inputs are 1;
/// k must satisfy 1 <= k <= input count at evaluation time.
struct DecisionRule {
    RuleKind kind = RuleKind::Majority;
    int k = 0; // KOutOfN only

    static DecisionRule and_rule() { return {RuleKind::And, 0}; }
    static DecisionRule or_rule() { return {RuleKind::Or, 0}; }
    static DecisionRule majority() { return {RuleKind::Majority, 0}; }
    static DecisionRule k_out_of_n(int k) { return {RuleKind::KOutOfN, k}; }

    /// Accepts "and", "or", "majority", "k-out-of-n:<k>".
    static DecisionRule parse(const std::string& text);

    std::string name() const;
    void validate_arity(int inputs) const;

    bool operator==(const DecisionRule&) const = default;
};

/// Tie can only come out of MAJORITY with an even input count split down
/// the middle; it is resolved by a fair coin (resolve) or weight 1/2 (exact).
enum class RuleOutcome { Zero, One, Tie };

/// Applies the rule to received bits.
RuleOutcome evaluate(const DecisionRule& rule, std::span<const std::uint8_t> bits);

/// Zero -> 0, One -> 1, Tie -> fair coin from rng.
int resolve(RuleOutcome outcome, RandomStream& rng);

/// P(resolve(evaluate(rule, B)) = 1) for independent Bernoulli inputs with the
/// given one-probabilities. Tie mass contributes with weight 1/2.
double output_one_prob(const DecisionRule& rule, std::span<const double> one_probs);

/// Distribution of the number of successes among independent non-identical
/// Bernoulli trials; pmf[c] = P(C = c), c in [0, m].
std::vector<double> poisson_binomial_pmf(std::span<const double> one_probs);

} // namespace gridbit
