#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "biaslab/common.hpp"
#include "biaslab/integrand.hpp"

namespace biaslab {

struct ScalarState {
    double x;
};

struct VectorState {
    std::vector<double> x;
};

// Scaled partial-sum path on [0,1]: using the first `count` of the shared
// steps V_1..V_total,
//   X(t) = count^{-1/2} ( sum_{k <= [count t]} V_k + frac * V_{[count t]+1} ).
// The path is piecewise linear, so int f dX is computed exactly from the
// per-cell integrals of f.
struct PartialSumPath {
    std::shared_ptr<const std::vector<double>> steps;
    std::int64_t count = 0;

    double at(double t) const;
    // Phase of the exponential: the real number int_0^1 f dX.
    double stieltjes(const Integrand& f) const;
};

// Empirical functional state for distribution-function processes: holds the
// underlying sample points; int f dZ = count^{-1/2} sum_k (f(p_k) - c_f)
// where the centering constant c_f is int_0^1 f for the clean process or the
// expectation of f under the perturbed point law.
struct EmpiricalPath {
    std::shared_ptr<const std::vector<double>> points;
    std::int64_t count = 0;
    // Absent => center with int_0^1 f; present => center with this rule.
    std::shared_ptr<const std::function<double(const Integrand&)>> center;

    double stieltjes(const Integrand& f) const;
};

// Uniform-grid path: values at k/steps, k = 0..steps.  Marginals interpolate
// linearly; int f dX uses the integration-by-parts sum
//   X(1) f(1) - X(0) f(0) - sum_j X(s_j) (f(s_{j+1}) - f(s_j)).
struct GridPath {
    std::shared_ptr<const std::vector<double>> values;  // steps + 1 entries

    double at(double t) const;
    double stieltjes(const Integrand& f) const;
};

struct PointMeasureState {
    std::vector<double> marks;
};

using ModelState = std::variant<ScalarState, VectorState, PartialSumPath,
                                EmpiricalPath, GridPath, PointMeasureState>;

// Squared distance in the natural state metric (used by the coupling
// diagnostics): scalars and vectors use the Euclidean metric, grid and
// partial-sum paths the L2([0,1]) metric on a probe grid, point measures the
// summed squared mark displacement.
double state_distance2(const ModelState& a, const ModelState& b);

}  // namespace biaslab
