#include "gridbit/profiles.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <system_error>

#include "gridbit/channel.hpp"
#include "gridbit/errors.hpp"

namespace gridbit {

namespace {

std::string row_msg(std::size_t row, const std::string& what) {
    return "profiles: row " + std::to_string(row) + ": " + what;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::int64_t parse_timestamp(std::string_view field, std::size_t row) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(row_msg(row, "bad timestamp '" + std::string(field) + "'"));
    }
    return v;
}

double parse_power(std::string_view field, std::size_t row) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(row_msg(row, "bad power value '" + std::string(field) + "'"));
    }
    if (!std::isfinite(v)) {
        throw ParseError(row_msg(row, "power value is not finite"));
    }
    if (v < 0.0) {
        throw ParseError(row_msg(row, "negative power " + std::string(field)));
    }
    return v;
}

void append_double(std::string& out, double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw ValidationError("profiles: unformattable double");
    out.append(buf, ptr);
}

// Acklam's rational approximation of the standard normal quantile,
// |relative error| < 1.15e-9 over (0, 1).
double inv_norm_cdf(double p) {
    static const double a1 = -39.69683028665376, a2 = 220.9460984245205,
                        a3 = -275.9285104469687, a4 = 138.3577518672690,
                        a5 = -30.66479806614716, a6 = 2.506628277459239;
    static const double b1 = -54.47609879822406, b2 = 161.5858368580409,
                        b3 = -155.6989798598866, b4 = 66.80131188771972,
                        b5 = -13.28068155288572;
    static const double c1 = -7.784894002430293e-03, c2 = -3.223964580411365e-01,
                        c3 = -2.400758277161838, c4 = -2.549732539343734,
                        c5 = 4.374664141464968, c6 = 2.938163982698783;
    static const double d1 = 7.784695709041462e-03, d2 = 3.224671290700398e-01,
                        d3 = 2.445134137142996, d4 = 3.754408661907416;
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
               ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
    }
    if (p > phigh) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
               ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a1 * r + a2) * r + a3) * r + a4) * r + a5) * r + a6) * q /
           (((((b1 * r + b2) * r + b3) * r + b4) * r + b5) * r + 1.0);
}

constexpr std::uint64_t kSynthDomain = 0x73796e7468ULL; // "synth"

} // namespace

LoadProfileSet parse_profiles(std::string_view csv, const NetworkTopology& topology) {
    const std::size_t expected_cols = static_cast<std::size_t>(topology.total_meters()) + 1;

    std::vector<std::string_view> lines;
    for (std::string_view rest = csv; !rest.empty();) {
        const std::size_t pos = rest.find('\n');
        std::string_view line = rest.substr(0, pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    if (lines.empty()) throw ParseError("profiles: empty input");

    const auto header = split(lines[0], ',');
    if (header.size() != expected_cols) {
        throw ParseError("profiles: header has " + std::to_string(header.size()) +
                         " columns, topology needs " + std::to_string(expected_cols));
    }
    if (header[0] != "timestamp") {
        throw ParseError("profiles: first header column must be 'timestamp'");
    }

    const std::size_t n_rows = lines.size() - 1;
    if (n_rows < 2) {
        throw ParseError("profiles: need at least two data rows to fix the sample interval");
    }

    LoadProfileSet out;
    out.meters = topology.total_meters();
    out.timestamps_s.reserve(n_rows);
    out.power_w.resize(static_cast<std::size_t>(out.meters) * n_rows);

    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t row = r + 2; // 1-based, counting the header
        const auto fields = split(lines[r + 1], ',');
        if (fields.size() != expected_cols) {
            throw ParseError(row_msg(row, "expected " + std::to_string(expected_cols) +
                                              " fields, got " + std::to_string(fields.size())));
        }
        out.timestamps_s.push_back(parse_timestamp(fields[0], row));
        for (int m = 0; m < out.meters; ++m) {
            out.power_w[static_cast<std::size_t>(m) * n_rows + r] =
                parse_power(fields[static_cast<std::size_t>(m) + 1], row);
        }
    }

    out.sample_interval_s = out.timestamps_s[1] - out.timestamps_s[0];
    if (out.sample_interval_s <= 0) {
        throw ParseError(row_msg(3, "timestamps must be strictly increasing"));
    }
    for (std::size_t r = 1; r < n_rows; ++r) {
        if (out.timestamps_s[r] - out.timestamps_s[r - 1] != out.sample_interval_s) {
            throw ParseError(row_msg(r + 2, "non-uniform timestamp spacing"));
        }
    }
    return out;
}

std::string serialize_profiles(const LoadProfileSet& profiles) {
    std::string out = "timestamp";
    for (int m = 0; m < profiles.meters; ++m) {
        out += ",m" + std::to_string(m);
    }
    out += '\n';
    for (int s = 0; s < profiles.samples(); ++s) {
        out += std::to_string(profiles.timestamps_s[static_cast<std::size_t>(s)]);
        for (int m = 0; m < profiles.meters; ++m) {
            out += ',';
            append_double(out, profiles.at(m, s));
        }
        out += '\n';
    }
    return out;
}

AveragedDemand window_average(const LoadProfileSet& profiles, const SamplingGrid& grid) {
    grid.validate();
    const std::int64_t dt = profiles.sample_interval_s;
    if (dt <= 0) throw ValidationError("windowing: sample interval must be positive");
    if (grid.period_s % dt != 0) {
        throw ValidationError("windowing: tau " + std::to_string(grid.period_s) +
                              " s is not a multiple of the sample interval " +
                              std::to_string(dt) + " s");
    }
    const std::int64_t first = profiles.timestamps_s.front();
    if (grid.start_time_s < first || (grid.start_time_s - first) % dt != 0) {
        throw ValidationError("windowing: grid start is not aligned with the samples");
    }
    const std::int64_t needed_end = grid.start_time_s + grid.period_s * grid.n_max;
    const std::int64_t have_end = profiles.timestamps_s.back() + dt;
    if (needed_end > have_end) {
        throw ValidationError("windowing: profiles end at " + std::to_string(have_end) +
                              " s but the grid needs coverage up to " +
                              std::to_string(needed_end) + " s");
    }

    const int per_slot = static_cast<int>(grid.period_s / dt);
    const int skip = static_cast<int>((grid.start_time_s - first) / dt);

    AveragedDemand out;
    out.grid = grid;
    out.meters = profiles.meters;
    out.mean_w.resize(static_cast<std::size_t>(out.meters) * grid.n_max);
    for (int m = 0; m < out.meters; ++m) {
        for (int n = 0; n < grid.n_max; ++n) {
            double sum = 0.0;
            const int base = skip + n * per_slot;
            for (int k = 0; k < per_slot; ++k) {
                sum += profiles.at(m, base + k);
            }
            out.mean_w[static_cast<std::size_t>(m) * grid.n_max + n] = sum / per_slot;
        }
    }
    return out;
}

std::string serialize_demand(const AveragedDemand& demand) {
    std::string out = "slot,t_n";
    for (int m = 0; m < demand.meters; ++m) {
        out += ",m" + std::to_string(m);
    }
    out += '\n';
    for (int n = 0; n < demand.grid.n_max; ++n) {
        out += std::to_string(n);
        out += ',';
        out += std::to_string(demand.grid.slot_time(n));
        for (int m = 0; m < demand.meters; ++m) {
            out += ',';
            append_double(out, demand.at(m, n));
        }
        out += '\n';
    }
    return out;
}

StateMatrix encode_states(const AveragedDemand& demand, double gamma_w, double p_th_w) {
    if (!(gamma_w >= 0.0) || !(p_th_w >= 0.0)) {
        throw ValidationError("encode: thresholds must be non-negative");
    }
    StateMatrix out;
    out.meters = demand.meters;
    out.n_max = demand.grid.n_max;
    out.gamma_w = gamma_w;
    out.p_th_w = p_th_w;
    out.theta.resize(static_cast<std::size_t>(out.meters) * out.n_max);
    out.s.resize(static_cast<std::size_t>(out.n_max));
    for (int n = 0; n < out.n_max; ++n) {
        double total = 0.0;
        for (int m = 0; m < out.meters; ++m) {
            const double v = demand.at(m, n);
            total += v;
            out.theta[static_cast<std::size_t>(m) * out.n_max + n] = v > gamma_w ? 1 : 0;
        }
        out.s[static_cast<std::size_t>(n)] = total > p_th_w ? 1 : 0;
    }
    return out;
}

SynthSpec SynthSpec::parse(const std::string& text) {
    const auto parts = split(text, ':');
    auto num = [&](std::string_view field) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ValidationError("synth: bad number '" + std::string(field) + "' in '" + text + "'");
        }
        return v;
    };
    SynthSpec spec;
    if (parts.size() == 3 && parts[0] == "weibull") {
        spec.distribution = WeibullParams{num(parts[1]), num(parts[2])};
    } else if (parts.size() == 3 && parts[0] == "lognormal") {
        spec.distribution = LogNormalParams{num(parts[1]), num(parts[2])};
    } else {
        throw ValidationError("synth: expected weibull:<shape>:<scale_w> or "
                              "lognormal:<mu>:<sigma>, got '" + text + "'");
    }
    return spec;
}

std::string SynthSpec::distribution_name() const {
    if (const auto* w = std::get_if<WeibullParams>(&distribution)) {
        return "weibull:" + std::to_string(w->shape) + ":" + std::to_string(w->scale_w);
    }
    const auto& l = std::get<LogNormalParams>(distribution);
    return "lognormal:" + std::to_string(l.mu_log_w) + ":" + std::to_string(l.sigma);
}

void SynthSpec::validate() const {
    if (meters < 1) throw ValidationError("synth: meters must be >= 1");
    if (sample_interval_s <= 0) throw ValidationError("synth: sample interval must be positive");
    if (const auto* w = std::get_if<WeibullParams>(&distribution)) {
        if (!(w->shape > 0.0) || !(w->scale_w > 0.0)) {
            throw ValidationError("synth: weibull shape and scale must be positive");
        }
    } else {
        const auto& l = std::get<LogNormalParams>(distribution);
        if (!(l.sigma > 0.0)) throw ValidationError("synth: lognormal sigma must be positive");
        if (!std::isfinite(l.mu_log_w)) throw ValidationError("synth: lognormal mu must be finite");
    }
}

LoadProfileSet synthesize(const SynthSpec& spec, const SamplingGrid& grid) {
    spec.validate();
    grid.validate();
    const std::int64_t span = grid.period_s * grid.n_max;
    if (span % spec.sample_interval_s != 0) {
        throw ValidationError("synth: grid span is not a multiple of the sample interval");
    }
    const std::int64_t n_samples = span / spec.sample_interval_s;
    if (n_samples < 2) throw ValidationError("synth: need at least two samples");

    LoadProfileSet out;
    out.meters = spec.meters;
    out.sample_interval_s = spec.sample_interval_s;
    out.timestamps_s.reserve(static_cast<std::size_t>(n_samples));
    for (std::int64_t k = 0; k < n_samples; ++k) {
        out.timestamps_s.push_back(grid.start_time_s + k * spec.sample_interval_s);
    }
    out.power_w.resize(static_cast<std::size_t>(out.meters) * n_samples);

    for (int m = 0; m < out.meters; ++m) {
        RandomStream rng(SeedMixer(spec.seed)
                             .absorb(kSynthDomain)
                             .absorb(static_cast<std::uint64_t>(m))
                             .finish());
        for (std::int64_t k = 0; k < n_samples; ++k) {
            // Clamp away from 0 and 1 so both quantile transforms stay finite.
            const double u =
                std::min(std::max(rng.next_double(), 0x1.0p-60), 1.0 - 0x1.0p-60);
            double w = 0.0;
            if (const auto* wb = std::get_if<WeibullParams>(&spec.distribution)) {
                w = wb->scale_w * std::pow(-std::log1p(-u), 1.0 / wb->shape);
            } else {
                const auto& l = std::get<LogNormalParams>(spec.distribution);
                w = std::exp(l.mu_log_w + l.sigma * inv_norm_cdf(u));
            }
            out.power_w[static_cast<std::size_t>(m) * n_samples + k] = w;
        }
    }
    return out;
}

} // namespace gridbit
