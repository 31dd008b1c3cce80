#include "biaslab/model.hpp"

namespace biaslab {

void ApproximationModel::check_admissible(const AnyFn& f) const {
    if (!f.valid()) throw ConfigError("empty functional for model " + id);
    switch (state_space) {
        case StateSpace::ScalarUnit:
        case StateSpace::ScalarReal: {
            const auto* tf = f.as_test();
            if (!tf || (tf->dim() != 0 && tf->dim() != 1))
                throw ConfigError("model " + id +
                                  " needs a scalar test function, got " +
                                  f.describe());
            return;
        }
        case StateSpace::Vector: {
            const auto* tf = f.as_test();
            if (!tf || (tf->dim() != 0 && tf->dim() != vector_dim))
                throw ConfigError("model " + id + " needs a test function on R^" +
                                  std::to_string(vector_dim) + ", got " +
                                  f.describe());
            return;
        }
        case StateSpace::Path: {
            if (!f.as_cylindrical() && !f.as_test())
                throw ConfigError("model " + id +
                                  " needs a cylindrical functional, got " +
                                  f.describe());
            // Constants are admissible everywhere.
            if (const auto* tf = f.as_test(); tf && tf->dim() != 0)
                throw ConfigError("model " + id +
                                  " needs a cylindrical functional, got " +
                                  f.describe());
            return;
        }
        case StateSpace::PointMeasure: {
            if (!f.point_inner()) {
                if (const auto* tf = f.as_test(); tf && tf->dim() == 0) return;
                throw ConfigError("model " + id +
                                  " needs a point-measure functional, got " +
                                  f.describe());
            }
            return;
        }
    }
}

}  // namespace biaslab
