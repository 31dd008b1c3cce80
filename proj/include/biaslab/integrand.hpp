#pragma once

#include <string>
#include <vector>

#include "biaslab/common.hpp"

namespace biaslab {

// Deterministic integrand f : [0,1] -> R used inside path functionals
// exp(i * int f dX).  Canonical representation is a sorted list of affine
// pieces, so piecewise-constant specs, affine specs and their sums all
// share one evaluation path and have exact cell integrals.
class Integrand {
public:
    struct Piece {
        double t_end;  // piece covers [previous end, t_end)
        double a;      // f(s) = a + b * s on the piece
        double b;
    };

    // Piecewise constant: breaks.size() == values.size() + 1, breaks[0] == 0,
    // breaks.back() == 1, strictly increasing.
    static Integrand piecewise_constant(std::vector<double> breaks,
                                        std::vector<double> values);
    static Integrand affine(double a, double b);  // f(s) = a + b s
    static Integrand constant(double c) { return affine(c, 0.0); }

    friend Integrand operator+(const Integrand& f, const Integrand& g);

    double eval(double s) const;
    double deriv(double s) const;  // a.e. derivative (0 inside constant pieces)

    // True when the canonical form is a single affine piece (a C^1 element).
    bool is_smooth() const { return pieces_.size() == 1; }
    bool is_constant(double* value = nullptr) const;

    double integral() const;                         // int_0^1 f
    double integral_sq() const;                      // int_0^1 f^2
    double cell_integral(double a, double b) const;  // int_a^b f

    static double integral_prod(const Integrand& f, const Integrand& g);

    const std::vector<Piece>& pieces() const { return pieces_; }
    std::string describe() const;

private:
    explicit Integrand(std::vector<Piece> p) : pieces_(std::move(p)) {}
    std::vector<Piece> pieces_;
};

}  // namespace biaslab
