#include "biaslab/quadrature.hpp"

#include <cmath>

namespace biaslab {

Quadrature gauss_legendre(int k, double a, double b) {
    // Nodes are roots of P_k found by Newton iteration from the Chebyshev
    // initial guess; weights from the standard derivative formula.
    Quadrature q;
    q.nodes.resize(k);
    q.weights.resize(k);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (k + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < k; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = k * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.nodes[i] = mid - half * x;
        q.nodes[k - 1 - i] = mid + half * x;
        q.weights[i] = q.weights[k - 1 - i] = half * w;
    }
    return q;
}

Quadrature uniform01_law(int k) { return gauss_legendre(k, 0.0, 1.0); }

Quadrature normal_law(double mean, double sd, int k) {
    Quadrature q = gauss_legendre(k, mean - 12.0 * sd, mean + 12.0 * sd);
    const double inv = 1.0 / (sd * std::sqrt(2.0 * M_PI));
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double z = (q.nodes[i] - mean) / sd;
        q.weights[i] *= inv * std::exp(-0.5 * z * z);
    }
    return q;
}

}  // namespace biaslab
