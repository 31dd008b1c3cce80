#pragma once

// Shared helpers for the catalog translation units.  Internal header.

#include <functional>
#include <optional>

#include "biaslab/catalog.hpp"
#include "biaslab/model.hpp"
#include "biaslab/quadrature.hpp"

namespace biaslab {
namespace catalog {
namespace detail {

// Diffusion-type operator table for scalar models:
//   theoretical  a2 phi'' + b_th phi'
//   practical    a2 phi'' + b_pr phi'
//   symmetric    E[ a2 phi' chi' ]          (the quadratic-form convention)
//   square field 2 a2
// The variance references assume the singular part is first order, which
// holds for every catalog model that installs this table.
struct ScalarForms {
    Quadrature law;
    std::function<double(double)> a2;    // null => 0
    std::function<double(double)> b_th;  // null => 0
    std::function<double(double)> b_pr;  // null => 0
    bool local = true;
};

std::optional<Reference> scalar_reference(const ScalarForms& forms, BiasKind kind,
                                          const AnyFn& phi, const AnyFn& chi,
                                          const AnyFn& psi);

// Installs closed_form / gamma_point / law_quad from a ScalarForms table.
void install_scalar_forms(ApproximationModel& model, ScalarForms forms);

inline Reference exact_ref(Cx v) { return Reference{v, 1e-8, false}; }

}  // namespace detail
}  // namespace catalog
}  // namespace biaslab
