#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace biaslab {

// All bilinear forms in this project use the plain (non-conjugating) complex
// product; `Cx * Cx` is already the right operation.
using Cx = std::complex<double>;

// Configuration / usage mistakes: bad parameters, malformed manifests,
// inadmissible function-model pairings.  CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failures while evaluating a sampler or functional (NaN/Inf, dimension
// mismatch at evaluation time).
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

inline bool finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double max_abs_component(Cx z) {
    return std::max(std::abs(z.real()), std::abs(z.imag()));
}

}  // namespace biaslab
