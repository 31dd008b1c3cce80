#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biaslab/anyfn.hpp"
#include "biaslab/common.hpp"

namespace biaslab {

// The estimable functionals.  With Delta_f = f(Y_n) - f(Y) and the bilinear
// product throughout, the sample integrands are
//   Theoretical          Delta_phi * chi(Y)
//   Practical           -Delta_phi * chi(Y_n)
//   Symmetric            Delta_phi * Delta_chi / 2
//   SquareFieldPaired    Delta_phi^2 * (chi(Y_n) + chi(Y)) / 2
//   QuarticDiagnostic    |Delta_phi|^lambda   (lambda = 4 by default)
//   TheoreticalVariance  Delta_phi * Delta_chi * psi(Y)
//   PracticalVariance    Delta_phi * Delta_chi * psi(Y_n)
// Singular is never sampled; it is (Theoretical - Practical) / 2.
enum class BiasKind {
    Theoretical,
    Practical,
    Symmetric,
    Singular,
    QuarticDiagnostic,
    TheoreticalVariance,
    PracticalVariance,
    SquareFieldPaired,
};

std::string to_string(BiasKind k);
std::optional<BiasKind> bias_kind_from_string(const std::string& s);

struct BiasEstimate {
    std::int64_t n = 0;
    Cx mean{0.0, 0.0};
    double stderr_ = 0.0;  // max of the component standard errors
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    void check_finite() const {
        if (!finite(mean) || !std::isfinite(stderr_))
            throw EvalError("bias estimate has non-finite components");
    }
};

// (Theoretical - Practical) / 2 at matched n, standard errors in quadrature.
BiasEstimate singular_combine(const BiasEstimate& th, const BiasEstimate& pr);

struct LimitEstimate {
    Cx value{0.0, 0.0};
    double uncertainty = 0.0;
    std::string fit_model;
    double residual = 0.0;
    std::vector<BiasEstimate> points_used;
};

struct FunctionalSpec {
    BiasKind kind = BiasKind::Theoretical;
    AnyFn phi;
    AnyFn chi;  // invalid => constant 1
    AnyFn psi;  // variance kinds only; invalid => chi
    double quartic_exponent = 4.0;
};

}  // namespace biaslab
