#pragma once

#include <map>
#include <string>
#include <vector>

#include "biaslab/model.hpp"

namespace biaslab {
namespace catalog {

// Parameter bag for model construction.  Builders consume keys as they go;
// finish() rejects anything left over, so a typo in a manifest is reported
// by field name.
class ParamMap {
public:
    ParamMap() = default;

    void set(const std::string& key, double v) { nums_[key] = v; }
    void set(const std::string& key, const std::string& v) { strs_[key] = v; }

    double get(const std::string& key, double def) const;
    std::string get_str(const std::string& key, const std::string& def) const;

    void finish(const std::string& model_id) const;  // throws on unused keys

private:
    std::map<std::string, double> nums_;
    std::map<std::string, std::string> strs_;
    mutable std::vector<std::string> used_;
};

struct ParamDoc {
    std::string name;
    std::string def;
    std::string doc;
};

struct EntryInfo {
    std::string id;
    std::string summary;
    std::string rate_doc;
    StateSpace state_space = StateSpace::ScalarUnit;
    ModelFlags flags;
    std::vector<ParamDoc> params;
    std::vector<std::string> closed_form_kinds;
};

std::vector<std::string> model_ids();
bool has_model(const std::string& id);
const EntryInfo& info(const std::string& id);

ApproximationModel build(const std::string& id, const ParamMap& params = {});

// Probe functionals suited to the model's state space, for default check
// configurations: at least three distinct non-constant elements.
std::vector<AnyFn> default_probes(const ApproximationModel& model);

// Internal registration hooks (catalog_*.cpp translation units).
namespace detail {
using Builder = ApproximationModel (*)(const ParamMap&);
void register_model(EntryInfo info, Builder builder);
void ensure_registered();
void register_scalar_models();
void register_path_models();
void register_sde_models();
}  // namespace detail

}  // namespace catalog
}  // namespace biaslab
