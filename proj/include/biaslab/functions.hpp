#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "biaslab/common.hpp"

namespace biaslab {

// Whitelisted outer maps for composites.  Every entry is entire, so it
// evaluates on complex inner values, and its supremum over a bounded inner
// range can be certified.
class OuterFunction {
public:
    enum class Kind { Polynomial, Affine, Product, Sin, Cos, Exp };

    // Univariate polynomial c0 + c1 x + ... + cK x^K.
    static OuterFunction polynomial(std::vector<double> coeffs);
    // b + sum_i a_i x_i.
    static OuterFunction affine(std::vector<double> a, double b);
    // x_1 * ... * x_k.
    static OuterFunction product(int arity);
    static OuterFunction sine();
    static OuterFunction cosine();
    static OuterFunction exponential();

    int arity() const { return arity_; }
    Kind kind() const { return kind_; }
    // Stored coefficients: polynomial c0..cK, or [b, a_1..a_k] for affine.
    const std::vector<double>& poly_coeffs() const { return coeffs_; }

    Cx eval(std::span<const Cx> z) const;
    std::vector<Cx> grad(std::span<const Cx> z) const;
    // Flattened arity x arity second-derivative matrix.
    std::vector<Cx> hess(std::span<const Cx> z) const;
    double bound_given(std::span<const double> inner_bounds) const;
    std::string describe() const;

private:
    OuterFunction(Kind k, int arity, std::vector<double> coeffs)
        : kind_(k), arity_(arity), coeffs_(std::move(coeffs)) {}

    Kind kind_;
    int arity_;
    std::vector<double> coeffs_;  // polynomial coefficients or [b, a_1..a_k]
};

// An element of the bounded test algebra on R^d: spans of imaginary
// exponentials closed under sum, product, scalar multiple and whitelisted
// C^1 composition.  Values are complex; all derivative formulas are exact.
class TestFunction {
public:
    TestFunction() = default;  // identically zero

    static TestFunction fourier_mode(int p);                   // e^{2 pi i p x}
    static TestFunction imaginary_exp(std::vector<double> u);  // e^{i <u,x>}
    static TestFunction constant(Cx c);
    static TestFunction scaled(Cx c, const TestFunction& f);
    static TestFunction compose(OuterFunction outer,
                                std::vector<TestFunction> inner);

    friend TestFunction operator+(const TestFunction& a, const TestFunction& b);
    friend TestFunction operator*(const TestFunction& a, const TestFunction& b);

    // 0 means "constant, any dimension accepted".
    int dim() const;
    double bound() const;
    bool valid() const { return node_ != nullptr; }

    Cx eval(std::span<const double> x) const;
    std::vector<Cx> grad(std::span<const double> x) const;
    std::vector<Cx> hess(std::span<const double> x) const;  // flattened d x d

    // Scalar-domain conveniences.
    Cx eval1(double x) const { return eval(std::span<const double>(&x, 1)); }
    Cx d1(double x) const { return grad(std::span<const double>(&x, 1))[0]; }
    Cx d2(double x) const { return hess(std::span<const double>(&x, 1))[0]; }

    std::string describe() const;

    struct Node;

private:
    explicit TestFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Convenience: real part of a Fourier mode, cos(2 pi p x), staying inside
// the algebra as (e^{2 pi i p x} + e^{-2 pi i p x}) / 2.
TestFunction cosine_mode(int p);

// (F' o f)^2 as an algebra element, for univariate whitelisted outers.  The
// square makes the construction sign-insensitive, which is what lets the
// cos case reuse the sin outer.
TestFunction outer_derivative_square(const OuterFunction& outer,
                                     const TestFunction& f);

// Plain bilinear product; kept as a named operation because every pairing
// in the estimator uses this convention rather than the Hermitian one.
inline Cx bilinear(Cx a, Cx b) { return a * b; }

}  // namespace biaslab
