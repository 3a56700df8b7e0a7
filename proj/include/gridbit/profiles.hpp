#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridbit/topology.hpp"

namespace gridbit {

/// Per-household power series, all meters on one shared uniform time base.
/// Power is in watts throughout; kW appears only at the CLI boundary.
struct LoadProfileSet {
    std::vector<std::int64_t> timestamps_s; // uniform spacing, at least two samples
    std::vector<double> power_w;            // [meter * samples + sample]
    int meters = 0;
    std::int64_t sample_interval_s = 0;

    int samples() const { return static_cast<int>(timestamps_s.size()); }
    double at(int meter, int sample) const {
        return power_w[static_cast<std::size_t>(meter) * timestamps_s.size() +
                       static_cast<std::size_t>(sample)];
    }
};

/// Mean power per meter per slot on a SamplingGrid.
struct AveragedDemand {
    SamplingGrid grid;
    int meters = 0;
    std::vector<double> mean_w; // [meter * grid.n_max + slot]

    double at(int meter, int slot) const {
        return mean_w[static_cast<std::size_t>(meter) * grid.n_max +
                      static_cast<std::size_t>(slot)];
    }
};

/// 1-bit encodings: theta[m][n] = (demand > gamma), s[n] = (total > p_th).
/// Both comparisons are strict; values sitting exactly on a threshold encode 0.
struct StateMatrix {
    int meters = 0;
    int n_max = 0;
    double gamma_w = 0.0;
    double p_th_w = 0.0;
    std::vector<std::uint8_t> theta; // [meter * n_max + slot]
    std::vector<std::uint8_t> s;     // [slot]

    std::uint8_t theta_at(int meter, int slot) const {
        return theta[static_cast<std::size_t>(meter) * n_max + static_cast<std::size_t>(slot)];
    }
};

struct WeibullParams {
    double shape = 1.0;
    double scale_w = 1.0;
};

struct LogNormalParams {
    double mu_log_w = 0.0;
    double sigma = 1.0;
};

/// Synthetic demand model. The distribution choice and parameters are
/// illustrative defaults, not calibrated to any measured dataset.
struct SynthSpec {
    std::variant<WeibullParams, LogNormalParams> distribution = WeibullParams{};
    int meters = 1;
    std::int64_t sample_interval_s = 60;
    std::uint64_t seed = 0;

    /// Accepts "weibull:<shape>:<scale_w>" or "lognormal:<mu>:<sigma>".
    static SynthSpec parse(const std::string& text);

    std::string distribution_name() const;
    void validate() const;
};

/// Parses the profile CSV contract: header "timestamp,m0,...", one column per
/// meter of the topology, uniformly spaced integer timestamps, finite
/// non-negative decimal watts. Errors name the offending row.
LoadProfileSet parse_profiles(std::string_view csv, const NetworkTopology& topology);

/// Inverse of parse_profiles; doubles are written shortest-round-trip.
std::string serialize_profiles(const LoadProfileSet& profiles);

/// Averages samples into slots; slot n covers [t_n, t_n + tau). Requires tau
/// to be a multiple of the sample interval and full coverage of the grid.
AveragedDemand window_average(const LoadProfileSet& profiles, const SamplingGrid& grid);

/// Debug/plot export: "slot,t_n,m0,...".
std::string serialize_demand(const AveragedDemand& demand);

StateMatrix encode_states(const AveragedDemand& demand, double gamma_w, double p_th_w);

/// Independent draws per meter per sample, inverse-transform sampled from a
/// per-meter substream, so output is reproducible and order-independent.
LoadProfileSet synthesize(const SynthSpec& spec, const SamplingGrid& grid);

} // namespace gridbit
