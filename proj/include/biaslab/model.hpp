#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "biaslab/anyfn.hpp"
#include "biaslab/estimate.hpp"
#include "biaslab/quadrature.hpp"
#include "biaslab/rate.hpp"
#include "biaslab/rng.hpp"
#include "biaslab/state.hpp"

namespace biaslab {

enum class StateSpace { ScalarUnit, ScalarReal, Vector, Path, PointMeasure };

struct ModelFlags {
    bool asymptotically_symmetric = false;
    bool expected_local = true;
    bool deterministic_approximation = false;  // approximation is a function of Y
};

struct CoupledSample {
    ModelState limit_state;
    ModelState approx_state;
};

// A closed-form (or companion-simulated) reference value for one functional.
struct Reference {
    Cx value{0.0, 0.0};
    double unc = 0.0;
    bool monte_carlo = false;  // true when produced by a companion simulation
};

// A catalog entry: coupled sampler, scaling sequence, reference operators.
// Immutable after construction; the sampler is pure given its stream, so
// models can be shared freely across threads.
class ApproximationModel {
public:
    std::string id;
    std::string description;
    StateSpace state_space = StateSpace::ScalarUnit;
    int vector_dim = 0;
    RateSequence rate = RateSequence::constant();
    ModelFlags flags;
    std::vector<std::int64_t> default_grid;
    std::int64_t min_index = 1;
    std::int64_t max_index = std::numeric_limits<std::int64_t>::max();

    std::function<CoupledSample(std::int64_t n, RngStream&)> sampler;

    // Reference table; absent entry = "no reference" (distinct from zero).
    std::function<std::optional<Reference>(BiasKind, const AnyFn& phi,
                                           const AnyFn& chi, const AnyFn& psi)>
        closed_form;

    // Optional extras used by checks and diagnostics.
    std::function<double(double)> limit_cdf;  // declared limit law, scalar models
    std::function<double(const ModelState&, const ModelState&)> coupling_metric2;
    // Pointwise square-field density gamma[f,g](y) for scalar models, paired
    // with the expectation rule for the limit law.
    std::function<Cx(const TestFunction&, const TestFunction&, double)> gamma_point;
    Quadrature law_quad;
    // Reference for lim alpha_n E[dist^2(Y_n, Y)] where one exists (exact
    // constant or companion simulation).
    std::function<Reference(std::int64_t samples, std::uint64_t seed)>
        raw_error_limit;
    // Probe functionals that behave well for this model (admissible and with
    // convergent functionals); empty = use the state-space defaults.
    std::vector<AnyFn> preferred_probes;

    std::uint64_t id_hash() const { return hash_string(id); }

    void check_index(std::int64_t n) const {
        if (n < min_index || n > max_index)
            throw ConfigError("index " + std::to_string(n) +
                              " outside the admissible range of model " + id);
    }

    // Throws unless the functional fits the model's state space.
    void check_admissible(const AnyFn& f) const;

    double metric2(const ModelState& a, const ModelState& b) const {
        return coupling_metric2 ? coupling_metric2(a, b) : state_distance2(a, b);
    }
};

}  // namespace biaslab
