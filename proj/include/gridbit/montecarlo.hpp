#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridbit/channel.hpp"
#include "gridbit/profiles.hpp"
#include "gridbit/rules.hpp"
#include "gridbit/topology.hpp"

namespace gridbit {

/// One full realization of channel noise and tie coins over all slots.
struct SnapshotResult {
    std::vector<std::uint8_t> theta; // operator decision per slot
    int errors = 0;                  // slots where theta != s
};

struct EstimateReport {
    double p_er_mean = 0.0;
    double p_er_std_err = 0.0;
    std::uint64_t snapshots = 0;
    std::uint64_t master_seed = 0;
};

/// Fraction of slots where the two bit vectors disagree.
double average_error(std::span<const std::uint8_t> theta, std::span<const std::uint8_t> s);

/// Runs the two-hop pipeline once. Every random draw comes from a substream
/// keyed by (master_seed, snapshot, slot, stage, link), so the result is a
/// pure function of the arguments.
SnapshotResult simulate_snapshot(const StateMatrix& states, const NetworkTopology& topology,
                                 const ChannelSpec& channels, const DecisionRule& rule_agg,
                                 const DecisionRule& rule_op, std::uint64_t snapshot,
                                 std::uint64_t master_seed);

/// Mean and standard error of the per-snapshot error rate over independent
/// snapshots. threads = 0 picks hardware concurrency; the result is identical
/// for every thread count (integer error counts, order-free reduction).
EstimateReport estimate(const StateMatrix& states, const NetworkTopology& topology,
                        const ChannelSpec& channels, const DecisionRule& rule_agg,
                        const DecisionRule& rule_op, std::uint64_t snapshots,
                        std::uint64_t master_seed, int threads = 0);

} // namespace gridbit
