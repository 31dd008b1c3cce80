#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biaslab/common.hpp"
#include "biaslab/integrand.hpp"
#include "biaslab/state.hpp"

namespace biaslab {

// Cylindrical element of the path algebra: either
//   MarginalExp  exp( i * sum_l u_l X(t_l) )
//   IntegralExp  exp( i * int_0^1 f dX )
class CylindricalFunction {
public:
    static CylindricalFunction marginal_exp(std::vector<double> times,
                                            std::vector<double> weights);
    static CylindricalFunction integral_exp(Integrand f);

    Cx eval(const PartialSumPath& s) const;
    Cx eval(const EmpiricalPath& s) const;
    Cx eval(const GridPath& s) const;

    // Product within the algebra; nullopt when the two kinds do not combine.
    std::optional<CylindricalFunction> multiply(const CylindricalFunction&) const;

    const Integrand* integrand() const {
        return integral_ ? &*integral_ : nullptr;
    }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& weights() const { return weights_; }

    std::string describe() const;

private:
    CylindricalFunction() = default;
    std::optional<Integrand> integral_;
    std::vector<double> times_, weights_;
};

}  // namespace biaslab
