#include "manetsim/rng.hpp"

#include "manetsim/engine.hpp"

namespace manetsim {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, StreamLabel label) {
    const auto salt = kGoldenGamma * (static_cast<std::uint64_t>(label) + 1);
    return splitmix64(splitmix64(seed) ^ salt);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, StreamLabel label) : engine_(substream_seed(seed, label)) {}

double RngStream::uniform01() {
    // Top 53 bits of one engine draw; exact on every platform.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    if (!(lo < hi)) {
        throw EngineFault("rng_uniform: lo must be < hi");
    }
    double v = lo + (hi - lo) * uniform01();
    if (v >= hi) {
        v = std::nextafter(hi, lo);
    }
    return v;
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
    if (n == 0) {
        throw EngineFault("uniform_int: n must be positive");
    }
    return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
}

}  // namespace manetsim
