#include "gridbit/exact.hpp"

#include <bit>
#include <cstdint>

#include "gridbit/errors.hpp"

namespace gridbit {

namespace {

void check_slot(const StateMatrix& states, int slot, const NetworkTopology& topology) {
    if (slot < 0 || slot >= states.n_max) {
        throw ValidationError("exact: slot " + std::to_string(slot) + " out of range");
    }
    if (states.meters != topology.total_meters()) {
        throw ValidationError("exact: state matrix has " + std::to_string(states.meters) +
                              " meters, topology expects " +
                              std::to_string(topology.total_meters()));
    }
}

} // namespace

SlotDistribution slot_distribution(const StateMatrix& states, int slot,
                                   const NetworkTopology& topology,
                                   const ChannelSpec& channels,
                                   const DecisionRule& rule_agg,
                                   const DecisionRule& rule_op) {
    check_slot(states, slot, topology);
    channels.validate();

    SlotDistribution out;
    const int k_aggs = topology.aggregator_count();
    out.aggregator_one_probs.reserve(static_cast<std::size_t>(k_aggs));

    std::vector<double> received;
    std::vector<double> operator_inputs;
    operator_inputs.reserve(static_cast<std::size_t>(k_aggs));
    for (int i = 0; i < k_aggs; ++i) {
        const int n_i = topology.meters_in(i);
        received.clear();
        for (int j = 0; j < n_i; ++j) {
            const int flat = topology.meter_index(i, j);
            received.push_back(received_one_prob(states.theta_at(flat, slot), channels.p1));
        }
        const double q_i = output_one_prob(rule_agg, received);
        out.aggregator_one_probs.push_back(q_i);
        // Bernoulli(q_i) pushed through the second BSC hop.
        operator_inputs.push_back(q_i * (1.0 - channels.p2) + (1.0 - q_i) * channels.p2);
    }
    out.p_theta_one = output_one_prob(rule_op, operator_inputs);
    return out;
}

double brute_force_slot(const StateMatrix& states, int slot,
                        const NetworkTopology& topology, const ChannelSpec& channels,
                        const DecisionRule& rule_agg, const DecisionRule& rule_op) {
    check_slot(states, slot, topology);
    channels.validate();

    const int total = topology.total_meters();
    const int k_aggs = topology.aggregator_count();
    if (total + k_aggs > 24) {
        throw CapacityError("brute force: " + std::to_string(total + k_aggs) +
                            " channel uses exceed the enumeration bound of 24");
    }

    // Per aggregator, tabulate every hop-1 flip submask: its probability and
    // the rule outcome on the flipped bits.
    struct SubEntry {
        double prob;
        RuleOutcome outcome;
    };
    std::vector<std::vector<SubEntry>> agg_tables(static_cast<std::size_t>(k_aggs));
    std::vector<std::uint8_t> rx;
    for (int i = 0; i < k_aggs; ++i) {
        const int n_i = topology.meters_in(i);
        auto& table = agg_tables[static_cast<std::size_t>(i)];
        table.resize(std::size_t{1} << n_i);
        for (std::uint32_t flips = 0; flips < table.size(); ++flips) {
            rx.clear();
            double prob = 1.0;
            for (int j = 0; j < n_i; ++j) {
                const int flat = topology.meter_index(i, j);
                const int flipped = (flips >> j) & 1u;
                prob *= flipped ? channels.p1 : 1.0 - channels.p1;
                rx.push_back(static_cast<std::uint8_t>(states.theta_at(flat, slot) ^ flipped));
            }
            table[flips] = {prob, evaluate(rule_agg, rx)};
        }
    }

    // Hop-2 flip patterns over the K aggregator bits.
    std::vector<double> hop2_prob(std::size_t{1} << k_aggs);
    for (std::uint32_t flips = 0; flips < hop2_prob.size(); ++flips) {
        double prob = 1.0;
        for (int i = 0; i < k_aggs; ++i) {
            prob *= ((flips >> i) & 1u) ? channels.p2 : 1.0 - channels.p2;
        }
        hop2_prob[flips] = prob;
    }

    double p_one = 0.0;
    std::vector<std::uint32_t> sub(static_cast<std::size_t>(k_aggs), 0);
    std::vector<int> tie_aggs;
    std::vector<std::uint8_t> agg_bits(static_cast<std::size_t>(k_aggs));
    std::vector<std::uint8_t> op_rx(static_cast<std::size_t>(k_aggs));

    // Odometer over the per-aggregator submasks enumerates all 2^M hop-1 patterns.
    while (true) {
        double prob1 = 1.0;
        tie_aggs.clear();
        for (int i = 0; i < k_aggs; ++i) {
            const SubEntry& e = agg_tables[static_cast<std::size_t>(i)][sub[static_cast<std::size_t>(i)]];
            prob1 *= e.prob;
            switch (e.outcome) {
                case RuleOutcome::Zero: agg_bits[static_cast<std::size_t>(i)] = 0; break;
                case RuleOutcome::One: agg_bits[static_cast<std::size_t>(i)] = 1; break;
                case RuleOutcome::Tie: tie_aggs.push_back(i); break;
            }
        }

        const int n_ties = static_cast<int>(tie_aggs.size());
        const double tie_weight = 1.0 / static_cast<double>(std::uint64_t{1} << n_ties);
        for (std::uint32_t coins = 0; coins < (std::uint32_t{1} << n_ties); ++coins) {
            for (int t = 0; t < n_ties; ++t) {
                agg_bits[static_cast<std::size_t>(tie_aggs[static_cast<std::size_t>(t)])] =
                    static_cast<std::uint8_t>((coins >> t) & 1u);
            }
            for (std::uint32_t flips2 = 0; flips2 < hop2_prob.size(); ++flips2) {
                for (int i = 0; i < k_aggs; ++i) {
                    op_rx[static_cast<std::size_t>(i)] =
                        static_cast<std::uint8_t>(agg_bits[static_cast<std::size_t>(i)] ^
                                                  ((flips2 >> i) & 1u));
                }
                const double w = prob1 * tie_weight * hop2_prob[flips2];
                switch (evaluate(rule_op, op_rx)) {
                    case RuleOutcome::Zero: break;
                    case RuleOutcome::One: p_one += w; break;
                    case RuleOutcome::Tie: p_one += 0.5 * w; break;
                }
            }
        }

        // Advance the odometer.
        int i = 0;
        for (; i < k_aggs; ++i) {
            auto& s = sub[static_cast<std::size_t>(i)];
            if (++s < agg_tables[static_cast<std::size_t>(i)].size()) break;
            s = 0;
        }
        if (i == k_aggs) break;
    }
    return p_one;
}

ExactErrorReport exact_error(const StateMatrix& states, const NetworkTopology& topology,
                             const ChannelSpec& channels, const DecisionRule& rule_agg,
                             const DecisionRule& rule_op) {
    ExactErrorReport report;
    report.slot_error.reserve(static_cast<std::size_t>(states.n_max));
    double sum = 0.0;
    for (int n = 0; n < states.n_max; ++n) {
        const SlotDistribution dist =
            slot_distribution(states, n, topology, channels, rule_agg, rule_op);
        const double e = states.s[static_cast<std::size_t>(n)] != 0
                             ? 1.0 - dist.p_theta_one
                             : dist.p_theta_one;
        report.slot_error.push_back(e);
        sum += e;
    }
    report.p_er = sum / states.n_max;
    return report;
}

} // namespace gridbit
