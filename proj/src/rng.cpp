#include "biaslab/rng.hpp"

#include <cmath>
#include <random>
#include <string_view>

namespace biaslab {

double RngStream::normal() {
    const double u = uniform_pos();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
}

void RngStream::normal_pair(double& a, double& b) {
    const double u = uniform_pos();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = 6.283185307179586477 * v;
    a = r * std::cos(t);
    b = r * std::sin(t);
}

long RngStream::binomial(long n, double p) {
    std::binomial_distribution<long> dist(n, p);
    return dist(*this);
}

long RngStream::poisson(double lambda) {
    std::poisson_distribution<long> dist(lambda);
    return dist(*this);
}

std::uint64_t hash_string(const std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace biaslab
