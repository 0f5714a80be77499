#pragma once

#include <cstdint>
#include <random>

namespace manetsim {

/// Named substreams drawn from one run seed. Streams with different
/// labels are mutually independent; identical (seed, label) replays the
/// identical draw sequence on any platform.
enum class StreamLabel : std::uint64_t {
    Mobility = 0,
    Traffic = 1,
    ChannelJitter = 2,
    Protocol = 3,
};

/// Seeded deterministic random stream.
///
/// Substream derivation is fixed for the project: the 64-bit substream
/// seed is splitmix64(splitmix64(seed) ^ (GOLDEN_GAMMA * (label + 1))),
/// feeding a std::mt19937_64 whose output sequence the C++ standard pins
/// exactly. Uniform doubles come from the top 53 bits of one draw, so
/// values are bit-identical across machines.
class RngStream {
  public:
    RngStream(std::uint64_t seed, StreamLabel label);

    /// Uniform double in [0, 1).
    double uniform01();

    /// Uniform double in [lo, hi); faults if lo >= hi.
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

/// The four substreams every run owns.
struct RandomService {
    explicit RandomService(std::uint64_t seed)
        : mobility(seed, StreamLabel::Mobility),
          traffic(seed, StreamLabel::Traffic),
          channel_jitter(seed, StreamLabel::ChannelJitter),
          protocol(seed, StreamLabel::Protocol) {}

    RngStream mobility;
    RngStream traffic;
    RngStream channel_jitter;
    RngStream protocol;
};

}  // namespace manetsim
