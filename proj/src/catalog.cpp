#include "biaslab/catalog.hpp"

#include <algorithm>
#include <mutex>

namespace biaslab {
namespace catalog {

double ParamMap::get(const std::string& key, double def) const {
    used_.push_back(key);
    auto it = nums_.find(key);
    return it == nums_.end() ? def : it->second;
}

std::string ParamMap::get_str(const std::string& key,
                              const std::string& def) const {
    used_.push_back(key);
    auto it = strs_.find(key);
    return it == strs_.end() ? def : it->second;
}

void ParamMap::finish(const std::string& model_id) const {
    auto check = [&](const std::string& key) {
        if (std::find(used_.begin(), used_.end(), key) == used_.end())
            throw ConfigError("model " + model_id + ": unknown parameter '" +
                              key + "'");
    };
    for (const auto& [k, v] : nums_) check(k);
    for (const auto& [k, v] : strs_) check(k);
}

namespace {

struct Registry {
    std::vector<std::string> order;
    std::map<std::string, EntryInfo> infos;
    std::map<std::string, detail::Builder> builders;
};

Registry& registry() {
    static Registry r;
    return r;
}

std::once_flag g_once;

}  // namespace

namespace detail {

void register_model(EntryInfo info, Builder builder) {
    Registry& r = registry();
    r.order.push_back(info.id);
    r.builders[info.id] = builder;
    r.infos[info.id] = std::move(info);
}

void ensure_registered() {
    std::call_once(g_once, [] {
        register_scalar_models();
        register_path_models();
        register_sde_models();
    });
}

}  // namespace detail

std::vector<std::string> model_ids() {
    detail::ensure_registered();
    return registry().order;
}

bool has_model(const std::string& id) {
    detail::ensure_registered();
    return registry().builders.count(id) != 0;
}

const EntryInfo& info(const std::string& id) {
    detail::ensure_registered();
    auto it = registry().infos.find(id);
    if (it == registry().infos.end())
        throw ConfigError("unknown model '" + id + "'");
    return it->second;
}

ApproximationModel build(const std::string& id, const ParamMap& params) {
    detail::ensure_registered();
    auto it = registry().builders.find(id);
    if (it == registry().builders.end())
        throw ConfigError("unknown model '" + id + "'");
    ApproximationModel m = it->second(params);
    params.finish(id);
    return m;
}

std::vector<AnyFn> default_probes(const ApproximationModel& model) {
    if (!model.preferred_probes.empty()) return model.preferred_probes;
    switch (model.state_space) {
        case StateSpace::ScalarUnit:
            return {AnyFn(TestFunction::fourier_mode(1)),
                    AnyFn(TestFunction::fourier_mode(-1)),
                    AnyFn(TestFunction::fourier_mode(2))};
        case StateSpace::ScalarReal:
            return {AnyFn(TestFunction::imaginary_exp({0.7})),
                    AnyFn(TestFunction::imaginary_exp({-1.1})),
                    AnyFn(TestFunction::imaginary_exp({0.4}))};
        case StateSpace::Vector: {
            std::vector<AnyFn> out;
            const int d = model.vector_dim;
            std::vector<double> u(d, 0.0);
            u[0] = 1.0;
            out.emplace_back(TestFunction::imaginary_exp(u));
            std::fill(u.begin(), u.end(), 0.5);
            out.emplace_back(TestFunction::imaginary_exp(u));
            u[0] = -0.8;
            out.emplace_back(TestFunction::imaginary_exp(u));
            return out;
        }
        case StateSpace::Path:
            return {AnyFn(CylindricalFunction::integral_exp(Integrand::constant(1.0))),
                    AnyFn(CylindricalFunction::integral_exp(
                        Integrand::piecewise_constant({0.0, 0.5, 1.0}, {1.0, -1.0}))),
                    AnyFn(CylindricalFunction::integral_exp(
                        Integrand::constant(0.5)))};
        case StateSpace::PointMeasure:
            return {AnyFn::point_exp(cosine_mode(1)),
                    AnyFn::point_exp(cosine_mode(2)),
                    AnyFn::point_exp(TestFunction::scaled(
                        0.5, cosine_mode(1)))};
    }
    throw ConfigError("unknown state space");
}

}  // namespace catalog
}  // namespace biaslab
