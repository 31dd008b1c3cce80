#pragma once

#include <functional>
#include <vector>

#include "biaslab/common.hpp"

namespace biaslab {

// Deterministic quadrature rule; `integrate` sums w_i * g(x_i).  Rules built
// by the `*_law` helpers fold the density into the weights, so they compute
// expectations against that law directly.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;

    template <class F>
    auto integrate(F&& g) const -> decltype(g(0.0)) {
        using R = decltype(g(0.0));
        R acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * g(nodes[i]);
        return acc;
    }
};

// Gauss-Legendre rule with k nodes on [a, b].
Quadrature gauss_legendre(int k, double a, double b);

// Expectation rule for the uniform law on [0,1].
Quadrature uniform01_law(int k = 128);

// Expectation rule for N(mean, sd^2), truncated at +-12 sd (the discarded
// tail mass is far below quadrature accuracy for bounded integrands).
Quadrature normal_law(double mean, double sd, int k = 256);

}  // namespace biaslab
