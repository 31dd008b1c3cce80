#include "biaslab/anyfn.hpp"

#include <cmath>
#include <variant>

namespace biaslab {

struct AnyFn::Impl {
    std::variant<TestFunction, CylindricalFunction> fn;
    bool point_measure = false;  // set: fn holds the mark integrand
};

AnyFn::AnyFn(TestFunction f) {
    auto impl = std::make_shared<Impl>();
    impl->fn = std::move(f);
    impl_ = std::move(impl);
}

AnyFn::AnyFn(CylindricalFunction f) {
    auto impl = std::make_shared<Impl>();
    impl->fn = std::move(f);
    impl_ = std::move(impl);
}

AnyFn AnyFn::point_exp(TestFunction inner) {
    AnyFn out(std::move(inner));
    const_cast<Impl*>(out.impl_.get())->point_measure = true;
    return out;
}

const TestFunction* AnyFn::as_test() const {
    if (!impl_ || impl_->point_measure) return nullptr;
    return std::get_if<TestFunction>(&impl_->fn);
}

const CylindricalFunction* AnyFn::as_cylindrical() const {
    if (!impl_) return nullptr;
    return std::get_if<CylindricalFunction>(&impl_->fn);
}

const TestFunction* AnyFn::point_inner() const {
    if (!impl_ || !impl_->point_measure) return nullptr;
    return std::get_if<TestFunction>(&impl_->fn);
}

Cx AnyFn::eval(const ModelState& s) const {
    if (!impl_) throw EvalError("evaluating an empty functional");
    if (const TestFunction* inner = point_inner()) {
        const auto* pm = std::get_if<PointMeasureState>(&s);
        if (!pm)
            throw EvalError("point-measure functional applied to a non-point "
                            "state");
        Cx phase = 0.0;
        for (double mark : pm->marks) phase += inner->eval1(mark);
        return std::exp(Cx(0.0, 1.0) * phase);
    }
    if (const auto* tf = std::get_if<TestFunction>(&impl_->fn)) {
        if (const auto* sc = std::get_if<ScalarState>(&s)) return tf->eval1(sc->x);
        if (const auto* ve = std::get_if<VectorState>(&s)) return tf->eval(ve->x);
        if (tf->dim() == 0) return tf->eval1(0.0);  // constants fit any state
        throw EvalError("test function applied to a non-scalar state");
    }
    const auto& cf = std::get<CylindricalFunction>(impl_->fn);
    if (const auto* ps = std::get_if<PartialSumPath>(&s)) return cf.eval(*ps);
    if (const auto* ep = std::get_if<EmpiricalPath>(&s)) return cf.eval(*ep);
    if (const auto* gp = std::get_if<GridPath>(&s)) return cf.eval(*gp);
    throw EvalError("cylindrical function applied to a non-path state");
}

std::optional<AnyFn> AnyFn::multiply(const AnyFn& other) const {
    if (!impl_ || !other.impl_) return std::nullopt;
    if (const auto* a = point_inner()) {
        const auto* b = other.point_inner();
        if (!b) return std::nullopt;
        return point_exp(*a + *b);
    }
    if (const auto* a = as_test()) {
        const auto* b = other.as_test();
        if (!b) return std::nullopt;
        return AnyFn(*a * *b);
    }
    const auto* a = as_cylindrical();
    const auto* b = other.as_cylindrical();
    if (!a || !b) return std::nullopt;
    auto prod = a->multiply(*b);
    if (!prod) return std::nullopt;
    return AnyFn(std::move(*prod));
}

std::string AnyFn::describe() const {
    if (!impl_) return "<none>";
    if (const auto* inner = point_inner())
        return "pointexp:phi=" + inner->describe();
    if (const auto* tf = as_test()) return tf->describe();
    return as_cylindrical()->describe();
}

}  // namespace biaslab
