#pragma once

#include <vector>

#include "gridbit/channel.hpp"
#include "gridbit/profiles.hpp"
#include "gridbit/rules.hpp"
#include "gridbit/topology.hpp"

namespace gridbit {

/// Bernoulli parameters of one slot after each stage of the pipeline.
struct SlotDistribution {
    double p_theta_one = 0.0;                // P(operator decides 1)
    std::vector<double> aggregator_one_probs; // q_i = P(aggregator i outputs 1), before hop 2
};

/// Per-slot error probabilities e[n] = P(theta[n] != s[n]) and their mean.
struct ExactErrorReport {
    std::vector<double> slot_error;
    double p_er = 0.0;
};

/// Propagates Bernoulli parameters through hop 1, the aggregator rule, hop 2
/// and the operator rule. Load-bearing assumption: all channel uses are
/// independent, so the aggregator outputs are conditionally independent given
/// the meter bits and the operator stage composes as a Poisson binomial.
/// MAJORITY tie mass enters with weight 1/2 instead of being sampled.
SlotDistribution slot_distribution(const StateMatrix& states, int slot,
                                   const NetworkTopology& topology,
                                   const ChannelSpec& channels,
                                   const DecisionRule& rule_agg,
                                   const DecisionRule& rule_op);

/// Oracle: P(theta[n] = 1) by summing over every hop-1 flip pattern, tie
/// resolution and hop-2 flip pattern. Refuses instances with more than
/// 24 channel uses (total meters + aggregators).
double brute_force_slot(const StateMatrix& states, int slot,
                        const NetworkTopology& topology, const ChannelSpec& channels,
                        const DecisionRule& rule_agg, const DecisionRule& rule_op);

ExactErrorReport exact_error(const StateMatrix& states, const NetworkTopology& topology,
                             const ChannelSpec& channels, const DecisionRule& rule_agg,
                             const DecisionRule& rule_op);

} // namespace gridbit
