#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gridbit {

/// Two-stage network layout: K aggregators, aggregator i owning N_i meters.
/// Meter (i, j) maps to the flat index N_0 + ... + N_{i-1} + j, so all of
/// aggregator 0's meters come first. The flat order fixes CSV column order.
class NetworkTopology {
public:
    explicit NetworkTopology(std::vector<int> aggregator_sizes);

    int aggregator_count() const { return static_cast<int>(sizes_.size()); }
    int meters_in(int aggregator) const;
    int total_meters() const { return total_; }
    const std::vector<int>& aggregator_sizes() const { return sizes_; }

    /// Flat index of meter j under aggregator i. Bijective over valid pairs.
    int meter_index(int aggregator, int meter) const;

    /// Inverse of meter_index.
    std::pair<int, int> meter_coords(int flat) const;

    /// First flat index owned by the given aggregator.
    int aggregator_offset(int aggregator) const;

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_; // prefix sums; offsets_[i] = first flat index of aggregator i
    int total_ = 0;
};

/// Uniform measurement grid: slot n covers [t + n*tau, t + (n+1)*tau).
struct SamplingGrid {
    std::int64_t start_time_s = 0;
    std::int64_t period_s = 900;
    int n_max = 96;

    std::int64_t slot_time(int n) const {
        return start_time_s + static_cast<std::int64_t>(n) * period_s;
    }

    void validate() const;
};

} // namespace gridbit
