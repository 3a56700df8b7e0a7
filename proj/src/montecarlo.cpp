#include "gridbit/montecarlo.hpp"

#include <cmath>
#include <thread>

#include "gridbit/errors.hpp"

namespace gridbit {

double average_error(std::span<const std::uint8_t> theta, std::span<const std::uint8_t> s) {
    if (theta.empty() || theta.size() != s.size()) {
        throw ValidationError("average_error: vectors must have equal nonzero length");
    }
    std::uint64_t mismatches = 0;
    for (std::size_t n = 0; n < theta.size(); ++n) {
        mismatches += (theta[n] != 0) != (s[n] != 0);
    }
    return static_cast<double>(mismatches) / static_cast<double>(theta.size());
}

SnapshotResult simulate_snapshot(const StateMatrix& states, const NetworkTopology& topology,
                                 const ChannelSpec& channels, const DecisionRule& rule_agg,
                                 const DecisionRule& rule_op, std::uint64_t snapshot,
                                 std::uint64_t master_seed) {
    if (states.meters != topology.total_meters()) {
        throw ValidationError("simulate: state matrix does not match the topology");
    }
    channels.validate();
    const int k_aggs = topology.aggregator_count();

    SnapshotResult result;
    result.theta.resize(static_cast<std::size_t>(states.n_max));

    std::vector<std::uint8_t> rx_meters;
    std::vector<std::uint8_t> rx_aggs(static_cast<std::size_t>(k_aggs));

    for (int n = 0; n < states.n_max; ++n) {
        const auto slot = static_cast<std::uint64_t>(n);
        for (int i = 0; i < k_aggs; ++i) {
            const int n_i = topology.meters_in(i);
            rx_meters.clear();
            for (int j = 0; j < n_i; ++j) {
                const int flat = topology.meter_index(i, j);
                RandomStream rng = derive_stream({master_seed, snapshot, slot, StreamStage::Hop1,
                                                  static_cast<std::uint64_t>(flat)});
                rx_meters.push_back(static_cast<std::uint8_t>(
                    transmit(states.theta_at(flat, n), channels.p1, rng)));
            }
            const RuleOutcome outcome = evaluate(rule_agg, rx_meters);
            int bit;
            if (outcome == RuleOutcome::Tie) {
                RandomStream coin = derive_stream({master_seed, snapshot, slot,
                                                   StreamStage::AggregatorTie,
                                                   static_cast<std::uint64_t>(i)});
                bit = resolve(outcome, coin);
            } else {
                bit = outcome == RuleOutcome::One ? 1 : 0;
            }
            RandomStream rng = derive_stream({master_seed, snapshot, slot, StreamStage::Hop2,
                                              static_cast<std::uint64_t>(i)});
            rx_aggs[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(transmit(bit, channels.p2, rng));
        }

        const RuleOutcome outcome = evaluate(rule_op, rx_aggs);
        int theta_n;
        if (outcome == RuleOutcome::Tie) {
            RandomStream coin =
                derive_stream({master_seed, snapshot, slot, StreamStage::OperatorTie, 0});
            theta_n = resolve(outcome, coin);
        } else {
            theta_n = outcome == RuleOutcome::One ? 1 : 0;
        }
        result.theta[static_cast<std::size_t>(n)] = static_cast<std::uint8_t>(theta_n);
        result.errors += theta_n != (states.s[static_cast<std::size_t>(n)] != 0 ? 1 : 0);
    }
    return result;
}

EstimateReport estimate(const StateMatrix& states, const NetworkTopology& topology,
                        const ChannelSpec& channels, const DecisionRule& rule_agg,
                        const DecisionRule& rule_op, std::uint64_t snapshots,
                        std::uint64_t master_seed, int threads) {
    if (snapshots < 1) {
        throw ValidationError("estimate: need at least one snapshot");
    }
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    const auto n_workers =
        static_cast<std::uint64_t>(threads) < snapshots ? static_cast<std::uint64_t>(threads)
                                                        : snapshots;

    // Integer error counts reduce exactly, so worker count and scheduling
    // cannot change the result.
    std::vector<std::uint64_t> sum_err(n_workers, 0);
    std::vector<std::uint64_t> sum_err_sq(n_workers, 0);

    auto worker = [&](std::uint64_t w) {
        std::uint64_t local = 0, local_sq = 0;
        for (std::uint64_t snap = w; snap < snapshots; snap += n_workers) {
            const SnapshotResult r = simulate_snapshot(states, topology, channels, rule_agg,
                                                       rule_op, snap, master_seed);
            const auto e = static_cast<std::uint64_t>(r.errors);
            local += e;
            local_sq += e * e;
        }
        sum_err[w] = local;
        sum_err_sq[w] = local_sq;
    };

    if (n_workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::uint64_t w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    std::uint64_t total_err = 0, total_err_sq = 0;
    for (std::uint64_t w = 0; w < n_workers; ++w) {
        total_err += sum_err[w];
        total_err_sq += sum_err_sq[w];
    }

    EstimateReport report;
    report.snapshots = snapshots;
    report.master_seed = master_seed;
    const auto n_slots = static_cast<std::uint64_t>(states.n_max);
    report.p_er_mean =
        static_cast<double>(total_err) / static_cast<double>(snapshots * n_slots);
    if (snapshots > 1) {
        // Sample variance of the per-snapshot rates from integer sums:
        // A = S * sum(e^2) - (sum e)^2 is exactly zero when all counts agree.
        const unsigned __int128 a =
            static_cast<unsigned __int128>(snapshots) * total_err_sq;
        const unsigned __int128 b =
            static_cast<unsigned __int128>(total_err) * total_err;
        const double numerator = static_cast<double>(a - b);
        const double var = numerator / (static_cast<double>(snapshots) *
                                        static_cast<double>(n_slots * n_slots) *
                                        static_cast<double>(snapshots - 1));
        report.p_er_std_err = std::sqrt(var / static_cast<double>(snapshots));
    }
    return report;
}

} // namespace gridbit
