#pragma once

#include <memory>
#include <optional>
#include <string>

#include "biaslab/cylindrical.hpp"
#include "biaslab/functions.hpp"
#include "biaslab/state.hpp"

namespace biaslab {

// A functional applicable to model states: a TestFunction for scalar/vector
// states, a CylindricalFunction for path states, or exp(i * int phi dN) with
// a TestFunction mark integrand for point-measure states.
class AnyFn {
public:
    AnyFn() = default;
    AnyFn(TestFunction f);           // NOLINT: implicit by design
    AnyFn(CylindricalFunction f);    // NOLINT
    static AnyFn point_exp(TestFunction inner);

    bool valid() const { return impl_ != nullptr; }

    Cx eval(const ModelState& s) const;

    // Product staying inside the same family; nullopt when not representable.
    std::optional<AnyFn> multiply(const AnyFn& other) const;

    const TestFunction* as_test() const;
    const CylindricalFunction* as_cylindrical() const;
    const TestFunction* point_inner() const;

    // Stable identity used to deduplicate evaluations within one pass.
    const void* key() const { return impl_.get(); }

    std::string describe() const;

    static AnyFn one() { return AnyFn(TestFunction::constant(1.0)); }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace biaslab
