#include "biaslab/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace biaslab {

namespace {
constexpr double kEdgeTol = 1e-12;
}

Integrand Integrand::piecewise_constant(std::vector<double> breaks,
                                        std::vector<double> values) {
    if (breaks.size() != values.size() + 1 || values.empty())
        throw ConfigError("piecewise integrand: breaks must bracket values");
    if (std::abs(breaks.front()) > kEdgeTol ||
        std::abs(breaks.back() - 1.0) > kEdgeTol)
        throw ConfigError("piecewise integrand: domain must be [0,1]");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (breaks[i + 1] <= breaks[i])
            throw ConfigError("piecewise integrand: breaks must increase");
        pieces.push_back({breaks[i + 1], values[i], 0.0});
    }
    pieces.back().t_end = 1.0;
    return Integrand(std::move(pieces));
}

Integrand Integrand::affine(double a, double b) {
    return Integrand({Piece{1.0, a, b}});
}

Integrand operator+(const Integrand& f, const Integrand& g) {
    std::vector<Integrand::Piece> merged;
    std::size_t i = 0, j = 0;
    double t = 0.0;
    while (t < 1.0 - kEdgeTol) {
        const auto& pf = f.pieces_[i];
        const auto& pg = g.pieces_[j];
        const double end = std::min(pf.t_end, pg.t_end);
        merged.push_back({end, pf.a + pg.a, pf.b + pg.b});
        t = end;
        if (pf.t_end <= end + kEdgeTol) ++i;
        if (pg.t_end <= end + kEdgeTol) ++j;
    }
    merged.back().t_end = 1.0;
    return Integrand(std::move(merged));
}

double Integrand::eval(double s) const {
    for (const auto& p : pieces_)
        if (s < p.t_end) return p.a + p.b * s;
    const auto& p = pieces_.back();
    return p.a + p.b * s;  // right endpoint
}

double Integrand::deriv(double s) const {
    for (const auto& p : pieces_)
        if (s < p.t_end) return p.b;
    return pieces_.back().b;
}

bool Integrand::is_constant(double* value) const {
    if (pieces_.size() != 1 || pieces_[0].b != 0.0) return false;
    if (value) *value = pieces_[0].a;
    return true;
}

double Integrand::cell_integral(double a, double b) const {
    double acc = 0.0;
    double lo = a;
    for (const auto& p : pieces_) {
        if (lo >= b) break;
        if (p.t_end <= lo) continue;
        const double hi = std::min(b, p.t_end);
        acc += p.a * (hi - lo) + 0.5 * p.b * (hi * hi - lo * lo);
        lo = hi;
    }
    return acc;
}

double Integrand::integral() const { return cell_integral(0.0, 1.0); }

double Integrand::integral_sq() const { return integral_prod(*this, *this); }

double Integrand::integral_prod(const Integrand& f, const Integrand& g) {
    // Products of affine pieces are quadratics; integrate each merged piece
    // exactly via Simpson.
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    double lo = 0.0;
    while (lo < 1.0 - kEdgeTol) {
        const auto& pf = f.pieces_[i];
        const auto& pg = g.pieces_[j];
        const double hi = std::min(pf.t_end, pg.t_end);
        const double mid = 0.5 * (lo + hi);
        auto fg = [&](double s) { return (pf.a + pf.b * s) * (pg.a + pg.b * s); };
        acc += (hi - lo) / 6.0 * (fg(lo) + 4.0 * fg(mid) + fg(hi));
        lo = hi;
        if (pf.t_end <= hi + kEdgeTol) ++i;
        if (pg.t_end <= hi + kEdgeTol) ++j;
    }
    return acc;
}

std::string Integrand::describe() const {
    std::ostringstream os;
    if (pieces_.size() == 1 && pieces_[0].b == 0.0) {
        os << "const[" << pieces_[0].a << "]";
        return os.str();
    }
    if (pieces_.size() == 1) {
        os << "lin[a=" << pieces_[0].a << ",b=" << pieces_[0].b << "]";
        return os.str();
    }
    os << "pw[";
    double lo = 0.0;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (k) os << ";";
        os << lo << ":" << pieces_[k].t_end << "=" << pieces_[k].a;
        if (pieces_[k].b != 0.0) os << "+" << pieces_[k].b << "s";
        lo = pieces_[k].t_end;
    }
    os << "]";
    return os.str();
}

}  // namespace biaslab
