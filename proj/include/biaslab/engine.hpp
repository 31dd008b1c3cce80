#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "biaslab/estimate.hpp"
#include "biaslab/functions.hpp"
#include "biaslab/model.hpp"

namespace biaslab {
namespace engine {

struct EstimateOptions {
    std::int64_t samples = 10000;  // >= 100
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = honor BIASLAB_THREADS, else hardware count
};

// Monte Carlo estimate of one bias functional at fixed index n.
BiasEstimate estimate(const ApproximationModel& model, const FunctionalSpec& spec,
                      std::int64_t n, const EstimateOptions& opts);

// One estimate per grid index, independent substreams.
std::vector<BiasEstimate> estimate_grid(const ApproximationModel& model,
                                        const FunctionalSpec& spec,
                                        const std::vector<std::int64_t>& grid,
                                        const EstimateOptions& opts);

// Several functionals evaluated on the same coupled samples in one pass.
// `with_coupling_moment` additionally averages the squared state distance
// (scaled by alpha_n), which drives the raw-error diagnostics.
struct Bundle {
    std::vector<BiasEstimate> estimates;
    std::optional<BiasEstimate> coupling_moment;
};
Bundle estimate_bundle(const ApproximationModel& model,
                       const std::vector<FunctionalSpec>& specs, std::int64_t n,
                       const EstimateOptions& opts,
                       bool with_coupling_moment = false);

// Max over samples of | th + pr + 2 * sym | for the unscaled integrands of
// the pair (phi, chi); an algebraic identity, so this is rounding noise.
double decomposition_residual(const ApproximationModel& model, const AnyFn& phi,
                              const AnyFn& chi, std::int64_t n,
                              const EstimateOptions& opts);

// alpha_n * E[ phi(Y_n) psi(Y) - phi(Y) psi(Y_n) ]; the antisymmetry
// functional used by the symmetry check.
BiasEstimate antisymmetry_estimate(const ApproximationModel& model,
                                   const AnyFn& phi, const AnyFn& psi,
                                   std::int64_t n, const EstimateOptions& opts);

// alpha_n * E[ defect integrand ] where the defect is the first-order
// (derivation) failure of the singular part assembled from the theoretical
// and practical integrands of (phi psi, chi), (psi, phi chi), (phi, psi chi).
BiasEstimate first_order_defect_estimate(const ApproximationModel& model,
                                         const AnyFn& phi, const AnyFn& psi,
                                         const AnyFn& chi, std::int64_t n,
                                         const EstimateOptions& opts);

enum class FitModel { Constant, Sqrt, SqrtInverse };

std::string to_string(FitModel f);
std::optional<FitModel> fit_model_from_string(const std::string& s);

// Two-term fit by default, three-term once four grid points are available.
FitModel default_fit_model(std::size_t points);

// Least-squares fit per component of c0 (+ c1 n^{-1/2} (+ c2 n^{-1})); the
// limit is c0.  Uncertainty combines the propagated measurement errors, the
// residual scatter and the largest-n standard error.
LimitEstimate extrapolate(const std::vector<BiasEstimate>& points, FitModel fit);

// Extrapolated limit over the model's grid in one call.
LimitEstimate limit_of(const ApproximationModel& model, const FunctionalSpec& spec,
                       const std::vector<std::int64_t>& grid,
                       const EstimateOptions& opts);

struct ChainRuleResult {
    BiasEstimate lhs;      // alpha_n E[(F(f(Y_n)) - F(f(Y)))^2]
    Cx rhs{0.0, 0.0};      // E_Y[ sum_ij F'_i F'_j Gamma[f_i, f_j] ]
    double rhs_unc = 0.0;
    double z = 0.0;
    bool pass = false;
};

// Composite error-propagation identity; refuses models whose limit form is
// not expected to be local.
ChainRuleResult chain_rule_check(const ApproximationModel& model,
                                 const OuterFunction& outer,
                                 const std::vector<TestFunction>& fs,
                                 std::int64_t n, const EstimateOptions& opts);

}  // namespace engine
}  // namespace biaslab
