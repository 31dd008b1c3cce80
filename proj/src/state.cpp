#include "biaslab/state.hpp"

#include <algorithm>
#include <cmath>

namespace biaslab {

double PartialSumPath::at(double t) const {
    const auto& v = *steps;
    const double ct = std::clamp(t, 0.0, 1.0) * double(count);
    const auto whole = std::int64_t(ct);
    double s = 0.0;
    for (std::int64_t k = 0; k < std::min(whole, count); ++k) s += v[k];
    if (whole < count) s += (ct - double(whole)) * v[whole];
    return s / std::sqrt(double(count));
}

double PartialSumPath::stieltjes(const Integrand& f) const {
    const auto& v = *steps;
    const double m = double(count);
    const double root = std::sqrt(m);
    double c;
    if (f.is_constant(&c)) {
        // Constant integrand: int f dX = c * X(1).
        double s = 0.0;
        for (std::int64_t k = 0; k < count; ++k) s += v[k];
        return c * s / root;
    }
    // Merge the cell grid with the integrand pieces; slope of X on cell k is
    // sqrt(m) * V_{k+1}, so int f dX = sqrt(m) * sum_k V_{k+1} int_cell f.
    double acc = 0.0;
    const auto& pieces = f.pieces();
    std::size_t pi = 0;
    for (std::int64_t k = 0; k < count; ++k) {
        const double lo = double(k) / m;
        const double hi = double(k + 1) / m;
        double w = 0.0;
        double a = lo;
        while (a < hi) {
            while (pi < pieces.size() && pieces[pi].t_end <= a + 1e-15) ++pi;
            const auto& p = pieces[std::min(pi, pieces.size() - 1)];
            const double b = std::min(hi, std::max(p.t_end, a));
            w += p.a * (b - a) + 0.5 * p.b * (b * b - a * a);
            a = b;
        }
        acc += w * v[k];
    }
    return root * acc;
}

double EmpiricalPath::stieltjes(const Integrand& f) const {
    const auto& pts = *points;
    const double cf = center ? (*center)(f) : f.integral();
    double acc = 0.0;
    for (std::int64_t k = 0; k < count; ++k) acc += f.eval(pts[k]) - cf;
    return acc / std::sqrt(double(count));
}

double GridPath::at(double t) const {
    const auto& v = *values;
    const std::size_t steps = v.size() - 1;
    const double ct = std::clamp(t, 0.0, 1.0) * double(steps);
    const auto k = std::min(std::size_t(ct), steps - 1);
    const double frac = ct - double(k);
    return v[k] + frac * (v[k + 1] - v[k]);
}

double GridPath::stieltjes(const Integrand& f) const {
    const auto& v = *values;
    const std::size_t steps = v.size() - 1;
    double acc = v[steps] * f.eval(1.0) - v[0] * f.eval(0.0);
    for (std::size_t j = 0; j < steps; ++j) {
        const double s0 = double(j) / double(steps);
        const double s1 = double(j + 1) / double(steps);
        acc -= v[j] * (f.eval(s1) - f.eval(s0));
    }
    return acc;
}

namespace {

template <class P>
double path_l2(const P& a, const P& b) {
    constexpr int kProbe = 257;
    double acc = 0.0;
    for (int i = 0; i < kProbe; ++i) {
        const double t = double(i) / double(kProbe - 1);
        const double d = a.at(t) - b.at(t);
        acc += d * d;
    }
    return acc / double(kProbe);
}

}  // namespace

double state_distance2(const ModelState& a, const ModelState& b) {
    if (auto* sa = std::get_if<ScalarState>(&a)) {
        const double d = sa->x - std::get<ScalarState>(b).x;
        return d * d;
    }
    if (auto* va = std::get_if<VectorState>(&a)) {
        const auto& vb = std::get<VectorState>(b).x;
        double acc = 0.0;
        for (std::size_t i = 0; i < va->x.size(); ++i) {
            const double d = va->x[i] - vb[i];
            acc += d * d;
        }
        return acc;
    }
    if (auto* pa = std::get_if<PartialSumPath>(&a))
        return path_l2(*pa, std::get<PartialSumPath>(b));
    if (auto* ga = std::get_if<GridPath>(&a))
        return path_l2(*ga, std::get<GridPath>(b));
    if (auto* ea = std::get_if<EmpiricalPath>(&a)) {
        // Compare the underlying point displacement.
        const auto& eb = std::get<EmpiricalPath>(b);
        const auto n = std::min(ea->count, eb.count);
        double acc = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const double d = (*ea->points)[i] - (*eb.points)[i];
            acc += d * d;
        }
        return acc / double(n);
    }
    if (auto* na = std::get_if<PointMeasureState>(&a)) {
        const auto& nb = std::get<PointMeasureState>(b).marks;
        double acc = 0.0;
        for (std::size_t i = 0; i < na->marks.size(); ++i) {
            const double d = na->marks[i] - nb[i];
            acc += d * d;
        }
        return acc;
    }
    throw EvalError("state_distance2: mismatched states");
}

}  // namespace biaslab
