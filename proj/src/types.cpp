#include "fedcontrib/types.hpp"

#include <string>

namespace fedcontrib {

void Architecture::validate() const {
    if (layer_sizes.size() < 2) {
        throw ConfigError("architecture needs at least 2 layer sizes (input dim and class count)");
    }
    for (std::size_t i = 0; i < layer_sizes.size(); ++i) {
        if (layer_sizes[i] < 1) {
            throw ConfigError("architecture layer " + std::to_string(i) + " has size " +
                              std::to_string(layer_sizes[i]) + ", must be >= 1");
        }
    }
}

Eigen::Index Architecture::weight_offset(int layer) const {
    Eigen::Index offset = 0;
    for (int l = 0; l < layer; ++l) {
        offset += static_cast<Eigen::Index>(fan_in(l)) * fan_out(l) + fan_out(l);
    }
    return offset;
}

Eigen::Index Architecture::bias_offset(int layer) const {
    return weight_offset(layer) + static_cast<Eigen::Index>(fan_in(layer)) * fan_out(layer);
}

Eigen::Index Architecture::param_count() const {
    return weight_offset(num_layers());
}

void Hyper::validate() const {
    if (batch_size < 1) throw ConfigError("hyper.batch_size must be >= 1");
    if (local_epochs < 1) throw ConfigError("hyper.local_epochs must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("hyper.learning_rate must be > 0");
    if (rounds < 1) throw ConfigError("hyper.rounds must be >= 1");
}

}  // namespace fedcontrib
