#include "biaslab/cylindrical.hpp"

#include <cmath>
#include <sstream>

namespace biaslab {

CylindricalFunction CylindricalFunction::marginal_exp(
    std::vector<double> times, std::vector<double> weights) {
    if (times.empty() || times.size() != weights.size())
        throw ConfigError("marginal_exp: times and weights must pair up");
    for (double t : times)
        if (t < 0.0 || t > 1.0)
            throw ConfigError("marginal_exp: times must lie in [0,1]");
    CylindricalFunction f;
    f.times_ = std::move(times);
    f.weights_ = std::move(weights);
    return f;
}

CylindricalFunction CylindricalFunction::integral_exp(Integrand f) {
    CylindricalFunction g;
    g.integral_ = std::move(f);
    return g;
}

namespace {
template <class S>
double marginal_phase(const std::vector<double>& t,
                      const std::vector<double>& u, const S& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) acc += u[i] * s.at(t[i]);
    return acc;
}
}  // namespace

Cx CylindricalFunction::eval(const PartialSumPath& s) const {
    const double phase = integral_ ? s.stieltjes(*integral_)
                                   : marginal_phase(times_, weights_, s);
    return std::polar(1.0, phase);
}

Cx CylindricalFunction::eval(const EmpiricalPath& s) const {
    if (!integral_)
        throw EvalError("marginal functionals are not defined on empirical "
                        "distribution states");
    return std::polar(1.0, s.stieltjes(*integral_));
}

Cx CylindricalFunction::eval(const GridPath& s) const {
    const double phase = integral_ ? s.stieltjes(*integral_)
                                   : marginal_phase(times_, weights_, s);
    return std::polar(1.0, phase);
}

std::optional<CylindricalFunction> CylindricalFunction::multiply(
    const CylindricalFunction& o) const {
    if (integral_ && o.integral_)
        return integral_exp(*integral_ + *o.integral_);
    if (!integral_ && !o.integral_) {
        std::vector<double> t = times_, u = weights_;
        t.insert(t.end(), o.times_.begin(), o.times_.end());
        u.insert(u.end(), o.weights_.begin(), o.weights_.end());
        return marginal_exp(std::move(t), std::move(u));
    }
    return std::nullopt;
}

std::string CylindricalFunction::describe() const {
    if (integral_) return "intexp:f=" + integral_->describe();
    std::ostringstream os;
    os << "margexp:";
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (i) os << ",";
        os << "t=" << times_[i] << ",u=" << weights_[i];
    }
    return os.str();
}

}  // namespace biaslab
