#pragma once

#include <cstdint>
#include <limits>

namespace biaslab {

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

// Counter-based stream: the key is derived once from
// (master seed, model id hash, index n, sample index) and the draw counter
// advances by a fixed increment, so any sample's stream can be regenerated
// in isolation.  Results are therefore independent of worker count and of
// how many draws other samples consumed.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) : state_(key) {}

    static RngStream keyed(std::uint64_t seed, std::uint64_t model_hash,
                           std::uint64_t n, std::uint64_t sample_index) {
        std::uint64_t k = detail::mix64(seed + detail::kGolden);
        k = detail::mix64(k ^ model_hash);
        k = detail::mix64(k ^ (n + detail::kGolden));
        k = detail::mix64(k ^ (sample_index * detail::kGolden + 1));
        return RngStream(k);
    }

    std::uint64_t operator()() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() {
        return std::numeric_limits<std::uint64_t>::max();
    }

    // Uniform on [0,1).
    double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe under log().
    double uniform_pos() {
        return double(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    // One standard normal via Box-Muller (no cached second value, so the
    // draw count per call is fixed).
    double normal();

    // Fills two standard normals from one Box-Muller pair.
    void normal_pair(double& a, double& b);

    // +1 or -1 with equal probability.
    double rademacher() { return ((*this)() >> 63) ? 1.0 : -1.0; }

    // Exact Binomial(n, p) draw.
    long binomial(long n, double p);

    // Exact Poisson(lambda) draw.
    long poisson(double lambda);

private:
    std::uint64_t state_;
};

// FNV-1a, used to key model streams by catalog id.
std::uint64_t hash_string(const std::string_view s);

}  // namespace biaslab
