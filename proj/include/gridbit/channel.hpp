#pragma once

#include <bit>
#include <cstdint>

namespace gridbit {

/// Flip probabilities for the two BSC hops.
struct ChannelSpec {
    double p1 = 0.0; // meter -> aggregator
    double p2 = 0.0; // aggregator -> operator

    void validate() const;

    /// True when either hop flips more often than not. Legal, but worth a warning.
    bool above_half() const { return p1 > 0.5 || p2 > 0.5; }
};

/// Where a random draw is consumed within one (snapshot, slot).
enum class StreamStage : std::uint64_t {
    Hop1 = 1,          // meter -> aggregator transmission, link = flat meter index
    Hop2 = 2,          // aggregator -> operator transmission, link = aggregator index
    AggregatorTie = 3, // MAJORITY tie coin at aggregator `link`
    OperatorTie = 4,   // MAJORITY tie coin at the operator (link = 0)
};

/// Identifies one substream. Identical keys give identical streams; distinct
/// keys give statistically independent ones, so results never depend on which
/// worker evaluates what.
struct StreamKey {
    std::uint64_t master_seed = 0;
    std::uint64_t snapshot = 0;
    std::uint64_t slot = 0;
    StreamStage stage = StreamStage::Hop1;
    std::uint64_t link = 0;
};

namespace detail {

// SplitMix64 finalizer (Stafford variant 13). Full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace detail

/// Deterministic 64-bit generator over a SplitMix64 sequence. Satisfies
/// UniformRandomBitGenerator, so std:: distributions accept it.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1), 53 significant bits.
    double next_double() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

/// Folds values into a well-mixed 64-bit seed. Order-sensitive.
class SeedMixer {
public:
    explicit SeedMixer(std::uint64_t seed = 0) : state_(detail::mix64(seed + detail::kGolden)) {}

    SeedMixer& absorb(std::uint64_t v) {
        state_ = detail::mix64(state_ ^ (v + detail::kGolden));
        return *this;
    }

    SeedMixer& absorb_double(double v) { return absorb(std::bit_cast<std::uint64_t>(v)); }

    std::uint64_t finish() const { return state_; }

private:
    std::uint64_t state_;
};

/// Pure function of the key; see StreamKey.
RandomStream derive_stream(const StreamKey& key);

/// One BSC use: returns 1 - bit with probability p, else bit.
int transmit(int bit, double p, RandomStream& rng);

/// P(received = 1) after one BSC use with the given sent bit.
double received_one_prob(int bit, double p);

} // namespace gridbit
