#include "gridbit/topology.hpp"

#include <stdexcept>
#include <string>

#include "gridbit/errors.hpp"

namespace gridbit {

NetworkTopology::NetworkTopology(std::vector<int> aggregator_sizes)
    : sizes_(std::move(aggregator_sizes)) {
    if (sizes_.empty()) {
        throw ValidationError("topology: need at least one aggregator");
    }
    offsets_.reserve(sizes_.size());
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (sizes_[i] < 1) {
            throw ValidationError("topology: aggregator " + std::to_string(i) +
                                  " has meter count " + std::to_string(sizes_[i]) +
                                  " (must be >= 1)");
        }
        offsets_.push_back(total_);
        total_ += sizes_[i];
    }
}

int NetworkTopology::meters_in(int aggregator) const {
    if (aggregator < 0 || aggregator >= aggregator_count()) {
        throw std::out_of_range("topology: aggregator index " + std::to_string(aggregator));
    }
    return sizes_[static_cast<std::size_t>(aggregator)];
}

int NetworkTopology::meter_index(int aggregator, int meter) const {
    const int n = meters_in(aggregator); // range-checks the aggregator
    if (meter < 0 || meter >= n) {
        throw std::out_of_range("topology: meter index " + std::to_string(meter) +
                                " out of range for aggregator " + std::to_string(aggregator));
    }
    return offsets_[static_cast<std::size_t>(aggregator)] + meter;
}

std::pair<int, int> NetworkTopology::meter_coords(int flat) const {
    if (flat < 0 || flat >= total_) {
        throw std::out_of_range("topology: flat meter index " + std::to_string(flat));
    }
    int aggregator = aggregator_count() - 1;
    while (offsets_[static_cast<std::size_t>(aggregator)] > flat) {
        --aggregator;
    }
    return {aggregator, flat - offsets_[static_cast<std::size_t>(aggregator)]};
}

int NetworkTopology::aggregator_offset(int aggregator) const {
    if (aggregator < 0 || aggregator >= aggregator_count()) {
        throw std::out_of_range("topology: aggregator index " + std::to_string(aggregator));
    }
    return offsets_[static_cast<std::size_t>(aggregator)];
}

void SamplingGrid::validate() const {
    if (period_s <= 0) {
        throw ValidationError("sampling grid: period must be positive");
    }
    if (n_max < 1) {
        throw ValidationError("sampling grid: n_max must be >= 1");
    }
}

} // namespace gridbit
