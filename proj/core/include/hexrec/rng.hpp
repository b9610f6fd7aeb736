#pragma once

#include <cstdint>

namespace hexrec {

/// Deterministic random stream with a splitmix64 core.
///
/// Streams derived from one master seed with distinct (a, b) labels via
/// make_stream() are independent, so per-candidate, per-generation draws
/// never depend on evaluation order or thread scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), n > 0.
    int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Derive the independent stream labelled (a, b) under a master seed.
inline RngStream make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = detail::mix64(master ^ 0xD1B54A32D192ED03ull);
    s = detail::mix64(s + 0x9E3779B97F4A7C15ull * (a + 1));
    s = detail::mix64(s + 0xC2B2AE3D27D4EB4Full * (b + 1));
    return RngStream(s);
}

}  // namespace hexrec
