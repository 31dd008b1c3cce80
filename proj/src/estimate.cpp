#include "biaslab/estimate.hpp"

namespace biaslab {

std::string to_string(BiasKind k) {
    switch (k) {
        case BiasKind::Theoretical: return "theoretical";
        case BiasKind::Practical: return "practical";
        case BiasKind::Symmetric: return "symmetric";
        case BiasKind::Singular: return "singular";
        case BiasKind::QuarticDiagnostic: return "quartic";
        case BiasKind::TheoreticalVariance: return "theoretical_variance";
        case BiasKind::PracticalVariance: return "practical_variance";
        case BiasKind::SquareFieldPaired: return "square_field";
    }
    return "?";
}

std::optional<BiasKind> bias_kind_from_string(const std::string& s) {
    if (s == "theoretical") return BiasKind::Theoretical;
    if (s == "practical") return BiasKind::Practical;
    if (s == "symmetric") return BiasKind::Symmetric;
    if (s == "singular") return BiasKind::Singular;
    if (s == "quartic") return BiasKind::QuarticDiagnostic;
    if (s == "theoretical_variance") return BiasKind::TheoreticalVariance;
    if (s == "practical_variance") return BiasKind::PracticalVariance;
    if (s == "square_field") return BiasKind::SquareFieldPaired;
    return std::nullopt;
}

BiasEstimate singular_combine(const BiasEstimate& th, const BiasEstimate& pr) {
    if (th.n != pr.n)
        throw ConfigError("singular_combine: estimates taken at different n");
    BiasEstimate out;
    out.n = th.n;
    out.mean = 0.5 * (th.mean - pr.mean);
    out.stderr_ = 0.5 * std::hypot(th.stderr_, pr.stderr_);
    out.samples = th.samples;
    out.seed = th.seed;
    out.check_finite();
    return out;
}

}  // namespace biaslab
