#include "gridbit/channel.hpp"

#include "gridbit/errors.hpp"

namespace gridbit {

void ChannelSpec::validate() const {
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw ValidationError("channel: p1 must lie in [0, 1]");
    }
    if (!(p2 >= 0.0 && p2 <= 1.0)) {
        throw ValidationError("channel: p2 must lie in [0, 1]");
    }
}

RandomStream derive_stream(const StreamKey& key) {
    SeedMixer mixer(key.master_seed);
    mixer.absorb(key.snapshot)
        .absorb(key.slot)
        .absorb(static_cast<std::uint64_t>(key.stage))
        .absorb(key.link);
    return RandomStream(mixer.finish());
}

int transmit(int bit, double p, RandomStream& rng) {
    return rng.bernoulli(p) ? 1 - bit : bit;
}

double received_one_prob(int bit, double p) {
    return bit == 1 ? 1.0 - p : p;
}

} // namespace gridbit
