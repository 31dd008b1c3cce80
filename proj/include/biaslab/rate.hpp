#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "biaslab/common.hpp"

namespace biaslab {

// The scaling sequence alpha_n attached to an approximation scheme.
//
//   power              alpha_n = c * n^p
//   reciprocal_epsilon alpha_n = n / eps0   (the scheme's step is eps0 / n)
//   mutual             alpha(m) = m / k(m), k(m) = ceil(theta * sqrt(m))
//   constant           alpha_n = 1
class RateSequence {
public:
    enum class Kind { Power, ReciprocalEpsilon, Mutual, Constant };

    static RateSequence power(double c, double p) {
        require_positive(c, "power rate coefficient");
        return RateSequence(Kind::Power, c, p);
    }
    static RateSequence reciprocal_epsilon(double eps0) {
        require_positive(eps0, "reciprocal-epsilon rate eps0");
        return RateSequence(Kind::ReciprocalEpsilon, eps0, 0.0);
    }
    static RateSequence mutual(double theta) {
        require_positive(theta, "mutual rate theta");
        return RateSequence(Kind::Mutual, theta, 0.0);
    }
    static RateSequence constant() {
        return RateSequence(Kind::Constant, 1.0, 0.0);
    }

    Kind kind() const { return kind_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }

    // k(m) of the mutual pairing; only meaningful for Kind::Mutual.
    std::int64_t mutual_partner_gap(std::int64_t m) const {
        return std::int64_t(std::ceil(a_ * std::sqrt(double(m))));
    }

    double eval(std::int64_t n) const {
        if (n < 1) throw ConfigError("rate index must be >= 1");
        switch (kind_) {
            case Kind::Power:
                return a_ * std::pow(double(n), b_);
            case Kind::ReciprocalEpsilon:
                return double(n) / a_;
            case Kind::Mutual:
                return double(n) / double(mutual_partner_gap(n));
            case Kind::Constant:
                return 1.0;
        }
        throw ConfigError("unknown rate kind");
    }

    std::string describe() const;

private:
    RateSequence(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}

    static void require_positive(double v, const char* what) {
        if (!(v > 0.0))
            throw ConfigError(std::string(what) + " must be positive");
    }

    Kind kind_;
    double a_;
    double b_;
};

inline double rate_eval(const RateSequence& rate, std::int64_t n) {
    return rate.eval(n);
}

inline std::string RateSequence::describe() const {
    switch (kind_) {
        case Kind::Power:
            return "alpha_n = " + std::to_string(a_) + " * n^" + std::to_string(b_);
        case Kind::ReciprocalEpsilon:
            return "alpha_n = n / " + std::to_string(a_);
        case Kind::Mutual:
            return "alpha(m) = m / ceil(" + std::to_string(a_) + " * sqrt(m))";
        case Kind::Constant:
            return "alpha_n = 1";
    }
    return "?";
}

}  // namespace biaslab
