#include "biaslab/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace biaslab {
namespace engine {

namespace {

// Internal integrand zoo: the public kinds plus the composite integrands the
// verification checks need sampled as single quantities (so their standard
// errors come out of the same pass).
enum class Integrand9 {
    Theoretical,
    Practical,
    Symmetric,
    Quartic,
    TheoreticalVariance,
    PracticalVariance,
    SquareFieldPaired,
    Antisymmetry,
    FirstOrderDefect,
};

struct Term {
    Integrand9 kind;
    int phi = -1, chi = -1, psi = -1;  // slots into the evaluation cache
    int phichi = -1, psichi = -1, phipsi = -1;  // products, defect only
    double exponent = 4.0;
};

struct Plan {
    std::vector<AnyFn> fns;  // deduplicated functionals
    std::vector<Term> terms;
    bool coupling = false;
};

int intern(Plan& plan, const AnyFn& f) {
    for (std::size_t i = 0; i < plan.fns.size(); ++i)
        if (plan.fns[i].key() == f.key()) return int(i);
    plan.fns.push_back(f);
    return int(plan.fns.size()) - 1;
}

Integrand9 to_internal(BiasKind k) {
    switch (k) {
        case BiasKind::Theoretical: return Integrand9::Theoretical;
        case BiasKind::Practical: return Integrand9::Practical;
        case BiasKind::Symmetric: return Integrand9::Symmetric;
        case BiasKind::QuarticDiagnostic: return Integrand9::Quartic;
        case BiasKind::TheoreticalVariance: return Integrand9::TheoreticalVariance;
        case BiasKind::PracticalVariance: return Integrand9::PracticalVariance;
        case BiasKind::SquareFieldPaired: return Integrand9::SquareFieldPaired;
        case BiasKind::Singular:
            throw ConfigError(
                "the singular functional is not sampled directly; combine the "
                "theoretical and practical estimates");
    }
    throw ConfigError("unknown bias kind");
}

struct Moments {
    double sum_re = 0.0, sum_im = 0.0;
    double sq_re = 0.0, sq_im = 0.0;

    void add(Cx v) {
        sum_re += v.real();
        sum_im += v.imag();
        sq_re += v.real() * v.real();
        sq_im += v.imag() * v.imag();
    }
    void merge(const Moments& o) {
        sum_re += o.sum_re;
        sum_im += o.sum_im;
        sq_re += o.sq_re;
        sq_im += o.sq_im;
    }
};

struct Partial {
    std::vector<Moments> terms;
    Moments coupling;
    double max_residual = 0.0;
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BIASLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Runs fn over samples split in fixed-size chunks, merging partials in chunk
// order; results are bit-identical for any worker count.
template <class ChunkFn>
Partial run_chunked(std::int64_t samples, int threads, std::size_t n_terms,
                    ChunkFn&& fn) {
    constexpr std::int64_t kChunk = 4096;
    const std::int64_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Partial> partials(std::size_t(n_chunks));
    const int workers = std::min<std::int64_t>(resolve_threads(threads), n_chunks);

    auto body = [&](std::atomic<std::int64_t>& next) {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            Partial p;
            p.terms.resize(n_terms);
            fn(c * kChunk, std::min(samples, (c + 1) * kChunk), p);
            partials[std::size_t(c)] = std::move(p);
        }
    };

    std::atomic<std::int64_t> next{0};
    if (workers <= 1) {
        body(next);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back([&] { body(next); });
        for (auto& t : pool) t.join();
    }

    Partial out;
    out.terms.resize(n_terms);
    for (const auto& p : partials) {
        for (std::size_t i = 0; i < n_terms; ++i) out.terms[i].merge(p.terms[i]);
        out.coupling.merge(p.coupling);
        out.max_residual = std::max(out.max_residual, p.max_residual);
    }
    return out;
}

BiasEstimate from_moments(const Moments& m, double alpha, std::int64_t n,
                          std::int64_t samples, std::uint64_t seed) {
    BiasEstimate e;
    e.n = n;
    e.samples = samples;
    e.seed = seed;
    const double inv = 1.0 / double(samples);
    const double mean_re = m.sum_re * inv;
    const double mean_im = m.sum_im * inv;
    e.mean = alpha * Cx(mean_re, mean_im);
    auto se = [&](double sq, double mean) {
        const double var = std::max(0.0, sq * inv - mean * mean);
        return std::sqrt(var * inv);
    };
    e.stderr_ = alpha * std::max(se(m.sq_re, mean_re), se(m.sq_im, mean_im));
    e.check_finite();
    return e;
}

Plan build_plan(const ApproximationModel& model,
                const std::vector<FunctionalSpec>& specs) {
    Plan plan;
    for (const auto& spec : specs) {
        Term t;
        t.kind = to_internal(spec.kind);
        t.exponent = spec.quartic_exponent;
        const AnyFn chi = spec.chi.valid() ? spec.chi : AnyFn::one();
        const AnyFn psi = spec.psi.valid() ? spec.psi : chi;
        model.check_admissible(spec.phi);
        model.check_admissible(chi);
        t.phi = intern(plan, spec.phi);
        t.chi = intern(plan, chi);
        if (spec.kind == BiasKind::TheoreticalVariance ||
            spec.kind == BiasKind::PracticalVariance) {
            model.check_admissible(psi);
            t.psi = intern(plan, psi);
        }
        plan.terms.push_back(t);
    }
    return plan;
}

Bundle run_plan(const ApproximationModel& model, Plan plan, std::int64_t n,
                const EstimateOptions& opts, double* max_residual_out) {
    if (opts.samples < 100) throw ConfigError("estimate needs samples >= 100");
    model.check_index(n);
    const double alpha = model.rate.eval(n);
    if (!(alpha > 0.0)) throw ConfigError("rate must be positive on the grid");
    const std::uint64_t model_hash = model.id_hash();
    const std::size_t n_fns = plan.fns.size();
    const bool track_residual = max_residual_out != nullptr;

    Partial total = run_chunked(
        opts.samples, opts.threads, plan.terms.size(),
        [&](std::int64_t begin, std::int64_t end, Partial& p) {
            std::vector<Cx> at_limit(n_fns), at_approx(n_fns);
            for (std::int64_t i = begin; i < end; ++i) {
                RngStream stream =
                    RngStream::keyed(opts.seed, model_hash, std::uint64_t(n),
                                     std::uint64_t(i));
                const CoupledSample s = model.sampler(n, stream);
                for (std::size_t f = 0; f < n_fns; ++f) {
                    at_limit[f] = plan.fns[f].eval(s.limit_state);
                    at_approx[f] = plan.fns[f].eval(s.approx_state);
                }
                for (std::size_t ti = 0; ti < plan.terms.size(); ++ti) {
                    const Term& t = plan.terms[ti];
                    const Cx dphi = at_approx[t.phi] - at_limit[t.phi];
                    Cx value;
                    switch (t.kind) {
                        case Integrand9::Theoretical:
                            value = dphi * at_limit[t.chi];
                            break;
                        case Integrand9::Practical:
                            value = -dphi * at_approx[t.chi];
                            break;
                        case Integrand9::Symmetric:
                            value = 0.5 * dphi * (at_approx[t.chi] - at_limit[t.chi]);
                            break;
                        case Integrand9::Quartic: {
                            const double a = std::abs(dphi);
                            value = t.exponent == 4.0
                                        ? Cx(a * a * a * a, 0.0)
                                        : Cx(std::pow(a, t.exponent), 0.0);
                            break;
                        }
                        case Integrand9::TheoreticalVariance:
                            value = dphi * (at_approx[t.chi] - at_limit[t.chi]) *
                                    at_limit[t.psi];
                            break;
                        case Integrand9::PracticalVariance:
                            value = dphi * (at_approx[t.chi] - at_limit[t.chi]) *
                                    at_approx[t.psi];
                            break;
                        case Integrand9::SquareFieldPaired:
                            value = dphi * dphi * 0.5 *
                                    (at_approx[t.chi] + at_limit[t.chi]);
                            break;
                        case Integrand9::Antisymmetry:
                            value = at_approx[t.phi] * at_limit[t.chi] -
                                    at_limit[t.phi] * at_approx[t.chi];
                            break;
                        case Integrand9::FirstOrderDefect: {
                            auto half = [&](const std::vector<Cx>& at) {
                                return (at_approx[t.phipsi] - at_limit[t.phipsi]) *
                                           at[t.chi] -
                                       (at_approx[t.psi] - at_limit[t.psi]) *
                                           at[t.phichi] -
                                       dphi * at[t.psichi];
                            };
                            value = 0.5 * (half(at_limit) + half(at_approx));
                            break;
                        }
                    }
                    p.terms[ti].add(value);
                }
                if (track_residual && plan.terms.size() >= 3) {
                    const Term& t = plan.terms[0];
                    const Cx dphi = at_approx[t.phi] - at_limit[t.phi];
                    const Cx dchi = at_approx[t.chi] - at_limit[t.chi];
                    const Cx th = dphi * at_limit[t.chi];
                    const Cx pr = -dphi * at_approx[t.chi];
                    const Cx sym = 0.5 * dphi * dchi;
                    p.max_residual = std::max(
                        p.max_residual, max_abs_component(th + pr + 2.0 * sym));
                }
                if (plan.coupling) {
                    p.coupling.add(
                        Cx(model.metric2(s.approx_state, s.limit_state), 0.0));
                }
            }
        });

    Bundle out;
    for (std::size_t ti = 0; ti < plan.terms.size(); ++ti)
        out.estimates.push_back(from_moments(total.terms[ti], alpha, n,
                                             opts.samples, opts.seed));
    if (plan.coupling)
        out.coupling_moment =
            from_moments(total.coupling, alpha, n, opts.samples, opts.seed);
    if (max_residual_out) *max_residual_out = total.max_residual;
    return out;
}

}  // namespace

BiasEstimate estimate(const ApproximationModel& model, const FunctionalSpec& spec,
                      std::int64_t n, const EstimateOptions& opts) {
    return estimate_bundle(model, {spec}, n, opts).estimates.at(0);
}

std::vector<BiasEstimate> estimate_grid(const ApproximationModel& model,
                                        const FunctionalSpec& spec,
                                        const std::vector<std::int64_t>& grid,
                                        const EstimateOptions& opts) {
    if (grid.empty()) throw ConfigError("estimate_grid: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw ConfigError("estimate_grid: grid must be strictly increasing");
    std::vector<BiasEstimate> out;
    out.reserve(grid.size());
    for (std::int64_t n : grid) out.push_back(estimate(model, spec, n, opts));
    return out;
}

Bundle estimate_bundle(const ApproximationModel& model,
                       const std::vector<FunctionalSpec>& specs, std::int64_t n,
                       const EstimateOptions& opts, bool with_coupling_moment) {
    Plan plan = build_plan(model, specs);
    plan.coupling = with_coupling_moment;
    return run_plan(model, std::move(plan), n, opts, nullptr);
}

double decomposition_residual(const ApproximationModel& model, const AnyFn& phi,
                              const AnyFn& chi, std::int64_t n,
                              const EstimateOptions& opts) {
    std::vector<FunctionalSpec> specs(3);
    specs[0] = {BiasKind::Theoretical, phi, chi, AnyFn(), 4.0};
    specs[1] = {BiasKind::Practical, phi, chi, AnyFn(), 4.0};
    specs[2] = {BiasKind::Symmetric, phi, chi, AnyFn(), 4.0};
    Plan plan = build_plan(model, specs);
    double residual = 0.0;
    run_plan(model, std::move(plan), n, opts, &residual);
    return residual;
}

BiasEstimate antisymmetry_estimate(const ApproximationModel& model,
                                   const AnyFn& phi, const AnyFn& psi,
                                   std::int64_t n, const EstimateOptions& opts) {
    Plan plan;
    model.check_admissible(phi);
    model.check_admissible(psi);
    Term t;
    t.kind = Integrand9::Antisymmetry;
    t.phi = intern(plan, phi);
    t.chi = intern(plan, psi);
    plan.terms.push_back(t);
    return run_plan(model, std::move(plan), n, opts, nullptr).estimates.at(0);
}

BiasEstimate first_order_defect_estimate(const ApproximationModel& model,
                                         const AnyFn& phi, const AnyFn& psi,
                                         const AnyFn& chi, std::int64_t n,
                                         const EstimateOptions& opts) {
    auto phipsi = phi.multiply(psi);
    auto phichi = phi.multiply(chi);
    auto psichi = psi.multiply(chi);
    if (!phipsi || !phichi || !psichi)
        throw ConfigError("first-order defect needs the pairwise products to "
                          "stay inside the algebra");
    Plan plan;
    for (const AnyFn& f : {phi, psi, chi, *phipsi, *phichi, *psichi})
        model.check_admissible(f);
    Term t;
    t.kind = Integrand9::FirstOrderDefect;
    t.phi = intern(plan, phi);
    t.psi = intern(plan, psi);
    t.chi = intern(plan, chi);
    t.phipsi = intern(plan, *phipsi);
    t.phichi = intern(plan, *phichi);
    t.psichi = intern(plan, *psichi);
    plan.terms.push_back(t);
    return run_plan(model, std::move(plan), n, opts, nullptr).estimates.at(0);
}

std::string to_string(FitModel f) {
    switch (f) {
        case FitModel::Constant: return "c0";
        case FitModel::Sqrt: return "c0+c1*n^-1/2";
        case FitModel::SqrtInverse: return "c0+c1*n^-1/2+c2*n^-1";
    }
    return "?";
}

std::optional<FitModel> fit_model_from_string(const std::string& s) {
    if (s == "constant" || s == "c0") return FitModel::Constant;
    if (s == "sqrt" || s == "c0+c1*n^-1/2") return FitModel::Sqrt;
    if (s == "sqrt+inv" || s == "c0+c1*n^-1/2+c2*n^-1")
        return FitModel::SqrtInverse;
    return std::nullopt;
}

FitModel default_fit_model(std::size_t points) {
    if (points < 2) return FitModel::Constant;
    if (points < 4) return FitModel::Sqrt;
    return FitModel::SqrtInverse;
}

LimitEstimate extrapolate(const std::vector<BiasEstimate>& points, FitModel fit) {
    const std::size_t n = points.size();
    const std::size_t k = fit == FitModel::Constant ? 1
                          : fit == FitModel::Sqrt  ? 2
                                                   : 3;
    if (n < k)
        throw ConfigError("extrapolate: need at least " + std::to_string(k) +
                          " grid points for this fit");

    // Design matrix rows [1, n^-1/2, n^-1].
    std::vector<std::array<double, 3>> X(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_sqrt = 1.0 / std::sqrt(double(points[i].n));
        X[i] = {1.0, inv_sqrt, inv_sqrt * inv_sqrt};
    }

    // Normal equations, solved by Gaussian elimination with partial pivoting.
    std::array<std::array<double, 3>, 3> G{};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) G[a][b] += X[i][a] * X[i][b];

    std::array<std::array<double, 3>, 3> inv{};
    for (std::size_t a = 0; a < k; ++a) inv[a][a] = 1.0;
    {
        auto A = G;
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < k; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            if (std::abs(A[piv][col]) < 1e-13)
                throw ConfigError("extrapolate: singular design matrix "
                                  "(duplicate grid points?)");
            std::swap(A[col], A[piv]);
            std::swap(inv[col], inv[piv]);
            const double d = A[col][col];
            for (std::size_t c = 0; c < k; ++c) {
                A[col][c] /= d;
                inv[col][c] /= d;
            }
            for (std::size_t r = 0; r < k; ++r) {
                if (r == col) continue;
                const double f = A[r][col];
                for (std::size_t c = 0; c < k; ++c) {
                    A[r][c] -= f * A[col][c];
                    inv[r][c] -= f * inv[col][c];
                }
            }
        }
    }

    // Hat row for c0: h = e0^T (X^T X)^{-1} X^T.
    std::vector<double> h(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) h[i] += inv[0][a] * X[i][a];

    auto solve_component = [&](auto value_of) {
        std::array<double, 3> rhs{};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < k; ++a)
                rhs[a] += X[i][a] * value_of(points[i]);
        std::array<double, 3> c{};
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) c[a] += inv[a][b] * rhs[b];
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double pred = 0.0;
            for (std::size_t a = 0; a < k; ++a) pred += X[i][a] * c[a];
            const double r = value_of(points[i]) - pred;
            ssr += r * r;
        }
        return std::pair<double, double>(c[0], ssr);
    };

    const auto [c0_re, ssr_re] =
        solve_component([](const BiasEstimate& p) { return p.mean.real(); });
    const auto [c0_im, ssr_im] =
        solve_component([](const BiasEstimate& p) { return p.mean.imag(); });

    double meas2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        meas2 += h[i] * h[i] * points[i].stderr_ * points[i].stderr_;

    const double dof = double(n) - double(k);
    const double ssr = std::max(ssr_re, ssr_im);
    const double model_var = dof > 0.0 ? (ssr / dof) * inv[0][0] : 0.0;
    const double se_last = points.back().stderr_;

    LimitEstimate out;
    out.value = Cx(c0_re, c0_im);
    out.fit_model = to_string(fit);
    out.residual = std::sqrt(ssr / double(n));
    out.uncertainty = std::sqrt(meas2 + model_var + se_last * se_last);
    out.uncertainty = std::max(out.uncertainty, 0.5 * se_last);
    out.points_used = points;
    if (!finite(out.value) || !std::isfinite(out.uncertainty))
        throw EvalError("extrapolation produced non-finite values");
    return out;
}

LimitEstimate limit_of(const ApproximationModel& model, const FunctionalSpec& spec,
                       const std::vector<std::int64_t>& grid,
                       const EstimateOptions& opts) {
    const auto pts = estimate_grid(model, spec, grid, opts);
    return extrapolate(pts, default_fit_model(pts.size()));
}

ChainRuleResult chain_rule_check(const ApproximationModel& model,
                                 const OuterFunction& outer,
                                 const std::vector<TestFunction>& fs,
                                 std::int64_t n, const EstimateOptions& opts) {
    if (!model.flags.expected_local)
        throw ConfigError("chain rule requires a local limit form; model " +
                          model.id + " is not expected to be local");
    if (fs.empty()) throw ConfigError("chain rule needs at least one inner function");

    const TestFunction composite = TestFunction::compose(outer, fs);
    FunctionalSpec lhs_spec;
    lhs_spec.kind = BiasKind::SquareFieldPaired;  // with chi = 1: alpha E[(dg)^2]
    lhs_spec.phi = AnyFn(composite);
    lhs_spec.chi = AnyFn::one();

    ChainRuleResult out;
    out.lhs = estimate(model, lhs_spec, n, opts);

    const int p = int(fs.size());
    if (model.gamma_point && !model.law_quad.nodes.empty()) {
        out.rhs = model.law_quad.integrate([&](double y) -> Cx {
            std::vector<Cx> z(p);
            for (int i = 0; i < p; ++i) z[i] = fs[i].eval1(y);
            const auto g = outer.grad(z);
            Cx acc = 0.0;
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j)
                    acc += g[i] * g[j] * model.gamma_point(fs[i], fs[j], y);
            return acc;
        });
        out.rhs_unc = 1e-8;
    } else {
        // Monte Carlo route: a variance-kind estimate with (F' o f)^2 as the
        // smearing function recovers E_Y[F'^2(f) Gamma[f,f]] for local
        // models.  Univariate outers only.
        if (p != 1)
            throw ConfigError("Monte Carlo chain-rule reference needs a "
                              "closed-form square field for multivariate outers");
        FunctionalSpec v;
        v.kind = BiasKind::TheoreticalVariance;
        v.phi = AnyFn(fs[0]);
        v.chi = AnyFn(fs[0]);
        v.psi = AnyFn(outer_derivative_square(outer, fs[0]));
        const BiasEstimate e = estimate(model, v, n, opts);
        out.rhs = e.mean;
        out.rhs_unc = e.stderr_;
    }

    const double tol = 3.0 * std::hypot(out.lhs.stderr_, out.rhs_unc) + 1e-10;
    const double diff = max_abs_component(out.lhs.mean - out.rhs);
    out.z = diff / std::max(tol / 3.0, 1e-300);
    out.pass = diff <= tol;
    return out;
}

}  // namespace engine
}  // namespace biaslab
