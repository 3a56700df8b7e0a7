#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridbit/channel.hpp"
#include "gridbit/profiles.hpp"
#include "gridbit/rules.hpp"
#include "gridbit/topology.hpp"

namespace gridbit {

enum class Method { MonteCarlo, Exact };

std::string method_name(Method method);
Method parse_method(const std::string& text);

/// Cartesian grid over thresholds, channel probabilities and rule pairs.
/// With link_p set, p1_values holds the shared p list and p2_values is unused
/// (each point gets p1 = p2 = p).
struct SweepGrid {
    std::vector<double> gamma_values_w;
    std::vector<double> p_th_values_w;
    std::vector<double> p1_values;
    std::vector<double> p2_values;
    bool link_p = false;
    std::vector<std::pair<DecisionRule, DecisionRule>> rules; // (aggregator, operator)
    Method method = Method::MonteCarlo;
    std::uint64_t snapshots = 1000;

    void validate() const;
    std::vector<std::pair<double, double>> channel_points() const;
    std::size_t point_count() const;
};

/// One evaluated grid point; the serialized schema is identical for both
/// methods, with snapshots = 0 and std_err = 0 for exact rows.
struct ResultRow {
    DecisionRule rule_agg;
    DecisionRule rule_op;
    double gamma_w = 0.0;
    double p_th_w = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    Method method = Method::MonteCarlo;
    std::uint64_t snapshots = 0;
    std::uint64_t seed = 0;
    double p_er_mean = 0.0;
    double p_er_std_err = 0.0;
};

struct SweepResultTable {
    std::vector<ResultRow> rows;
};

/// Evaluates every grid point in lexicographic order (rule pair, gamma, p_th,
/// channel point). Monte Carlo substreams are keyed by the point's values,
/// not its position, so a sub-grid reproduces the numbers of the full grid.
SweepResultTable run_sweep(const AveragedDemand& demand, const NetworkTopology& topology,
                           const SweepGrid& grid, std::uint64_t master_seed, int threads = 0);

enum class TableFormat { Csv, JsonLines };

TableFormat parse_format(const std::string& text);

/// Fixed column order, probabilities with 12 significant digits.
std::string emit(const SweepResultTable& table, TableFormat format);

/// Reads back the CSV form; '#' comment lines are skipped.
SweepResultTable parse_table(std::string_view csv);

/// Flag value syntax: a single number, a comma list, or "start:stop:step"
/// (stop included when it is within step/2 of the last step).
std::vector<double> parse_value_list(const std::string& text);

} // namespace gridbit
