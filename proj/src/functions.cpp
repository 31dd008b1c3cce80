#include "biaslab/functions.hpp"

#include <cmath>
#include <sstream>

namespace biaslab {

namespace {
constexpr double kTwoPi = 6.283185307179586477;

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}
}  // namespace

// ---------------------------------------------------------------------------
// OuterFunction

OuterFunction OuterFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ConfigError("polynomial outer needs coefficients");
    return OuterFunction(Kind::Polynomial, 1, std::move(coeffs));
}

OuterFunction OuterFunction::affine(std::vector<double> a, double b) {
    if (a.empty()) throw ConfigError("affine outer needs at least one slope");
    std::vector<double> c;
    c.push_back(b);
    c.insert(c.end(), a.begin(), a.end());
    return OuterFunction(Kind::Affine, int(a.size()), std::move(c));
}

OuterFunction OuterFunction::product(int arity) {
    if (arity < 1) throw ConfigError("product outer needs arity >= 1");
    return OuterFunction(Kind::Product, arity, {});
}

OuterFunction OuterFunction::sine() { return OuterFunction(Kind::Sin, 1, {}); }
OuterFunction OuterFunction::cosine() { return OuterFunction(Kind::Cos, 1, {}); }
OuterFunction OuterFunction::exponential() {
    return OuterFunction(Kind::Exp, 1, {});
}

Cx OuterFunction::eval(std::span<const Cx> z) const {
    switch (kind_) {
        case Kind::Polynomial: {
            Cx acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
                acc = acc * z[0] + *it;
            return acc;
        }
        case Kind::Affine: {
            Cx acc = coeffs_[0];
            for (int i = 0; i < arity_; ++i) acc += coeffs_[i + 1] * z[i];
            return acc;
        }
        case Kind::Product: {
            Cx acc = 1.0;
            for (int i = 0; i < arity_; ++i) acc *= z[i];
            return acc;
        }
        case Kind::Sin:
            return std::sin(z[0]);
        case Kind::Cos:
            return std::cos(z[0]);
        case Kind::Exp:
            return std::exp(z[0]);
    }
    throw EvalError("unknown outer kind");
}

std::vector<Cx> OuterFunction::grad(std::span<const Cx> z) const {
    std::vector<Cx> g(arity_, Cx(0.0));
    switch (kind_) {
        case Kind::Polynomial: {
            Cx acc = 0.0;
            for (std::size_t k = coeffs_.size() - 1; k >= 1; --k)
                acc = acc * z[0] + double(k) * coeffs_[k];
            g[0] = acc;
            break;
        }
        case Kind::Affine:
            for (int i = 0; i < arity_; ++i) g[i] = coeffs_[i + 1];
            break;
        case Kind::Product:
            for (int i = 0; i < arity_; ++i) {
                Cx acc = 1.0;
                for (int j = 0; j < arity_; ++j)
                    if (j != i) acc *= z[j];
                g[i] = acc;
            }
            break;
        case Kind::Sin:
            g[0] = std::cos(z[0]);
            break;
        case Kind::Cos:
            g[0] = -std::sin(z[0]);
            break;
        case Kind::Exp:
            g[0] = std::exp(z[0]);
            break;
    }
    return g;
}

std::vector<Cx> OuterFunction::hess(std::span<const Cx> z) const {
    std::vector<Cx> h(std::size_t(arity_) * arity_, Cx(0.0));
    switch (kind_) {
        case Kind::Polynomial: {
            Cx acc = 0.0;
            for (std::size_t k = coeffs_.size() - 1; k >= 2; --k)
                acc = acc * z[0] + double(k) * double(k - 1) * coeffs_[k];
            h[0] = acc;
            break;
        }
        case Kind::Affine:
            break;
        case Kind::Product:
            for (int i = 0; i < arity_; ++i)
                for (int j = 0; j < arity_; ++j) {
                    if (i == j) continue;
                    Cx acc = 1.0;
                    for (int k = 0; k < arity_; ++k)
                        if (k != i && k != j) acc *= z[k];
                    h[std::size_t(i) * arity_ + j] = acc;
                }
            break;
        case Kind::Sin:
            h[0] = -std::sin(z[0]);
            break;
        case Kind::Cos:
            h[0] = -std::cos(z[0]);
            break;
        case Kind::Exp:
            h[0] = std::exp(z[0]);
            break;
    }
    return h;
}

double OuterFunction::bound_given(std::span<const double> b) const {
    switch (kind_) {
        case Kind::Polynomial: {
            double acc = 0.0, pw = 1.0;
            for (double c : coeffs_) {
                acc += std::abs(c) * pw;
                pw *= b[0];
            }
            return acc;
        }
        case Kind::Affine: {
            double acc = std::abs(coeffs_[0]);
            for (int i = 0; i < arity_; ++i) acc += std::abs(coeffs_[i + 1]) * b[i];
            return acc;
        }
        case Kind::Product: {
            double acc = 1.0;
            for (int i = 0; i < arity_; ++i) acc *= b[i];
            return acc;
        }
        case Kind::Sin:
        case Kind::Cos:
            return std::cosh(b[0]);
        case Kind::Exp:
            return std::exp(b[0]);
    }
    return 0.0;
}

std::string OuterFunction::describe() const {
    switch (kind_) {
        case Kind::Polynomial: {
            std::string s = "poly[";
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                s += (i ? "," : "") + fmt_num(coeffs_[i]);
            return s + "]";
        }
        case Kind::Affine: {
            std::string s = "affine[" + fmt_num(coeffs_[0]);
            for (int i = 0; i < arity_; ++i) s += "," + fmt_num(coeffs_[i + 1]);
            return s + "]";
        }
        case Kind::Product:
            return "mul";
        case Kind::Sin:
            return "sin";
        case Kind::Cos:
            return "cos";
        case Kind::Exp:
            return "exp";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// TestFunction expression tree

struct TestFunction::Node {
    enum class Kind { Fourier, IExp, Const, Sum, Prod, Scale, Comp };

    Kind kind;
    int p = 0;                      // Fourier
    std::vector<double> u;          // IExp
    Cx c{0.0, 0.0};                 // Const / Scale factor
    std::shared_ptr<const Node> lhs, rhs;
    std::shared_ptr<const OuterFunction> outer;
    std::vector<std::shared_ptr<const Node>> inner;

    int dim = 0;
    double bound = 0.0;
};

namespace {

using Node = TestFunction::Node;
using NodePtr = std::shared_ptr<const Node>;

int merge_dim(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw ConfigError("test function dimension mismatch");
    return a;
}

void check_point(const Node& n, std::span<const double> x) {
    if (n.dim != 0 && int(x.size()) != n.dim)
        throw EvalError("evaluation point has wrong dimension");
    if (n.dim == 0 && x.empty())
        throw EvalError("evaluation point is empty");
}

Cx eval_node(const Node& n, std::span<const double> x) {
    switch (n.kind) {
        case Node::Kind::Fourier:
            return std::polar(1.0, kTwoPi * n.p * x[0]);
        case Node::Kind::IExp: {
            double s = 0.0;
            for (std::size_t i = 0; i < n.u.size(); ++i) s += n.u[i] * x[i];
            return std::polar(1.0, s);
        }
        case Node::Kind::Const:
            return n.c;
        case Node::Kind::Sum:
            return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Node::Kind::Prod:
            return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Node::Kind::Scale:
            return n.c * eval_node(*n.lhs, x);
        case Node::Kind::Comp: {
            std::vector<Cx> z(n.inner.size());
            for (std::size_t i = 0; i < n.inner.size(); ++i)
                z[i] = eval_node(*n.inner[i], x);
            return n.outer->eval(z);
        }
    }
    throw EvalError("unknown node kind");
}

struct Jet {
    Cx v{};
    std::vector<Cx> g;  // d entries
    std::vector<Cx> h;  // d*d entries
};

Jet jet_node(const Node& n, std::span<const double> x) {
    const int d = int(x.size());
    Jet out;
    out.g.assign(d, Cx(0.0));
    out.h.assign(std::size_t(d) * d, Cx(0.0));
    switch (n.kind) {
        case Node::Kind::Fourier: {
            const Cx v = std::polar(1.0, kTwoPi * n.p * x[0]);
            const Cx w(0.0, kTwoPi * n.p);
            out.v = v;
            out.g[0] = w * v;
            out.h[0] = w * w * v;
            return out;
        }
        case Node::Kind::IExp: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += n.u[i] * x[i];
            const Cx v = std::polar(1.0, s);
            out.v = v;
            for (int i = 0; i < d; ++i) out.g[i] = Cx(0.0, n.u[i]) * v;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    out.h[std::size_t(i) * d + j] = -n.u[i] * n.u[j] * v;
            return out;
        }
        case Node::Kind::Const:
            out.v = n.c;
            return out;
        case Node::Kind::Sum: {
            Jet a = jet_node(*n.lhs, x), b = jet_node(*n.rhs, x);
            out.v = a.v + b.v;
            for (int i = 0; i < d; ++i) out.g[i] = a.g[i] + b.g[i];
            for (std::size_t i = 0; i < out.h.size(); ++i)
                out.h[i] = a.h[i] + b.h[i];
            return out;
        }
        case Node::Kind::Prod: {
            Jet a = jet_node(*n.lhs, x), b = jet_node(*n.rhs, x);
            out.v = a.v * b.v;
            for (int i = 0; i < d; ++i) out.g[i] = a.g[i] * b.v + a.v * b.g[i];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    out.h[std::size_t(i) * d + j] =
                        a.h[std::size_t(i) * d + j] * b.v + a.g[i] * b.g[j] +
                        a.g[j] * b.g[i] + a.v * b.h[std::size_t(i) * d + j];
            return out;
        }
        case Node::Kind::Scale: {
            Jet a = jet_node(*n.lhs, x);
            out.v = n.c * a.v;
            for (int i = 0; i < d; ++i) out.g[i] = n.c * a.g[i];
            for (std::size_t i = 0; i < out.h.size(); ++i) out.h[i] = n.c * a.h[i];
            return out;
        }
        case Node::Kind::Comp: {
            const int k = int(n.inner.size());
            std::vector<Jet> inner(k);
            std::vector<Cx> z(k);
            for (int a = 0; a < k; ++a) {
                inner[a] = jet_node(*n.inner[a], x);
                z[a] = inner[a].v;
            }
            out.v = n.outer->eval(z);
            const std::vector<Cx> fg = n.outer->grad(z);
            const std::vector<Cx> fh = n.outer->hess(z);
            for (int i = 0; i < d; ++i)
                for (int a = 0; a < k; ++a) out.g[i] += fg[a] * inner[a].g[i];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Cx acc = 0.0;
                    for (int a = 0; a < k; ++a) {
                        for (int b = 0; b < k; ++b)
                            acc += fh[std::size_t(a) * k + b] * inner[a].g[i] *
                                   inner[b].g[j];
                        acc += fg[a] * inner[a].h[std::size_t(i) * d + j];
                    }
                    out.h[std::size_t(i) * d + j] = acc;
                }
            return out;
        }
    }
    throw EvalError("unknown node kind");
}

std::string describe_node(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Fourier:
            return "fourier:p=" + std::to_string(n.p);
        case Node::Kind::IExp: {
            std::string s = "iexp:u=";
            for (std::size_t i = 0; i < n.u.size(); ++i)
                s += (i ? "," : "") + fmt_num(n.u[i]);
            return s;
        }
        case Node::Kind::Const:
            if (n.c.imag() == 0.0) return "const:" + fmt_num(n.c.real());
            return "const:" + fmt_num(n.c.real()) + "," + fmt_num(n.c.imag());
        case Node::Kind::Sum:
            return "sum(" + describe_node(*n.lhs) + ";" + describe_node(*n.rhs) + ")";
        case Node::Kind::Prod:
            return "prod(" + describe_node(*n.lhs) + ";" + describe_node(*n.rhs) + ")";
        case Node::Kind::Scale: {
            std::string c = n.c.imag() == 0.0
                                ? fmt_num(n.c.real())
                                : fmt_num(n.c.real()) + "," + fmt_num(n.c.imag());
            return "scale(" + c + ";" + describe_node(*n.lhs) + ")";
        }
        case Node::Kind::Comp: {
            std::string s = "comp(" + n.outer->describe();
            for (const auto& f : n.inner) s += ";" + describe_node(*f);
            return s + ")";
        }
    }
    return "?";
}

}  // namespace

TestFunction TestFunction::fourier_mode(int p) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Fourier;
    n->p = p;
    n->dim = 1;
    n->bound = 1.0;
    return TestFunction(n);
}

TestFunction TestFunction::imaginary_exp(std::vector<double> u) {
    if (u.empty()) throw ConfigError("imaginary_exp needs a nonempty weight vector");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::IExp;
    n->dim = int(u.size());
    n->u = std::move(u);
    n->bound = 1.0;
    return TestFunction(n);
}

TestFunction TestFunction::constant(Cx c) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Const;
    n->c = c;
    n->dim = 0;
    n->bound = std::abs(c);
    return TestFunction(n);
}

TestFunction TestFunction::scaled(Cx c, const TestFunction& f) {
    if (!f.valid()) throw ConfigError("scaled: invalid operand");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Scale;
    n->c = c;
    n->lhs = f.node_;
    n->dim = f.dim();
    n->bound = std::abs(c) * f.bound();
    return TestFunction(n);
}

TestFunction TestFunction::compose(OuterFunction outer,
                                   std::vector<TestFunction> inner) {
    if (inner.empty()) throw ConfigError("compose: empty inner family");
    if (int(inner.size()) != outer.arity())
        throw ConfigError("compose: outer arity does not match inner family size");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Comp;
    n->outer = std::make_shared<OuterFunction>(std::move(outer));
    std::vector<double> bounds;
    int dim = 0;
    for (const auto& f : inner) {
        if (!f.valid()) throw ConfigError("compose: invalid inner function");
        dim = merge_dim(dim, f.dim());
        bounds.push_back(f.bound());
        n->inner.push_back(f.node_);
    }
    n->dim = dim;
    n->bound = n->outer->bound_given(bounds);
    return TestFunction(n);
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
    if (!a.valid() || !b.valid()) throw ConfigError("sum: invalid operand");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Sum;
    n->lhs = a.node_;
    n->rhs = b.node_;
    n->dim = merge_dim(a.dim(), b.dim());
    n->bound = a.bound() + b.bound();
    return TestFunction(n);
}

TestFunction operator*(const TestFunction& a, const TestFunction& b) {
    if (!a.valid() || !b.valid()) throw ConfigError("product: invalid operand");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Prod;
    n->lhs = a.node_;
    n->rhs = b.node_;
    n->dim = merge_dim(a.dim(), b.dim());
    n->bound = a.bound() * b.bound();
    return TestFunction(n);
}

int TestFunction::dim() const { return node_ ? node_->dim : 0; }
double TestFunction::bound() const { return node_ ? node_->bound : 0.0; }

Cx TestFunction::eval(std::span<const double> x) const {
    if (!node_) return Cx(0.0);
    check_point(*node_, x);
    return eval_node(*node_, x);
}

std::vector<Cx> TestFunction::grad(std::span<const double> x) const {
    if (!node_) return std::vector<Cx>(x.size(), Cx(0.0));
    check_point(*node_, x);
    return jet_node(*node_, x).g;
}

std::vector<Cx> TestFunction::hess(std::span<const double> x) const {
    if (!node_) return std::vector<Cx>(x.size() * x.size(), Cx(0.0));
    check_point(*node_, x);
    return jet_node(*node_, x).h;
}

std::string TestFunction::describe() const {
    return node_ ? describe_node(*node_) : "const:0";
}

TestFunction cosine_mode(int p) {
    return TestFunction::scaled(0.5, TestFunction::fourier_mode(p)) +
           TestFunction::scaled(0.5, TestFunction::fourier_mode(-p));
}

TestFunction outer_derivative_square(const OuterFunction& outer,
                                     const TestFunction& f) {
    if (outer.arity() != 1)
        throw ConfigError("squared outer derivative needs a univariate outer");
    auto square = [&](TestFunction g) { return g * g; };
    switch (outer.kind()) {
        case OuterFunction::Kind::Sin:
        case OuterFunction::Kind::Cos:
            return square(TestFunction::compose(
                outer.kind() == OuterFunction::Kind::Sin ? OuterFunction::cosine()
                                                         : OuterFunction::sine(),
                {f}));
        case OuterFunction::Kind::Exp:
            return square(TestFunction::compose(OuterFunction::exponential(), {f}));
        case OuterFunction::Kind::Polynomial: {
            const std::vector<double>& c = outer.poly_coeffs();
            std::vector<double> d(std::max<std::size_t>(c.size() - 1, 1), 0.0);
            for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
            return square(
                TestFunction::compose(OuterFunction::polynomial(std::move(d)), {f}));
        }
        case OuterFunction::Kind::Affine: {
            const std::vector<double>& c = outer.poly_coeffs();  // [b, a1]
            return TestFunction::constant(c[1] * c[1]);
        }
        case OuterFunction::Kind::Product:
            break;
    }
    throw ConfigError("squared outer derivative not available for this outer");
}

}  // namespace biaslab
