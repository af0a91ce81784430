#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <utility>
#include <vector>

#include "fedcontrib/common.hpp"

namespace fedcontrib {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Weight blocks inside the flat parameter vector are stored row-major.
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Layer widths: input dimension first, class count last.
struct Architecture {
    std::vector<int> layer_sizes;

    Architecture() = default;
    Architecture(std::initializer_list<int> sizes) : layer_sizes(sizes) { validate(); }
    explicit Architecture(std::vector<int> sizes) : layer_sizes(std::move(sizes)) { validate(); }

    void validate() const;

    int input_dim() const { return layer_sizes.front(); }
    int num_classes() const { return layer_sizes.back(); }
    int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }

    int fan_in(int layer) const { return layer_sizes[layer]; }
    int fan_out(int layer) const { return layer_sizes[layer + 1]; }

    // Offsets into the flat vector: per layer, fan_in x fan_out row-major
    // weights followed by fan_out biases.
    Eigen::Index weight_offset(int layer) const;
    Eigen::Index bias_offset(int layer) const;
    Eigen::Index param_count() const;

    bool operator==(const Architecture&) const = default;
};

/// Flat 64-bit parameter vector plus the architecture that interprets it.
struct ModelParams {
    Architecture arch;
    Vector values;

    Eigen::Map<const RowMajorMatrix> weights(int layer) const {
        return {values.data() + arch.weight_offset(layer), arch.fan_in(layer), arch.fan_out(layer)};
    }
    Eigen::Map<RowMajorMatrix> weights(int layer) {
        return {values.data() + arch.weight_offset(layer), arch.fan_in(layer), arch.fan_out(layer)};
    }
    Eigen::Map<const Vector> biases(int layer) const {
        return {values.data() + arch.bias_offset(layer), arch.fan_out(layer)};
    }
    Eigen::Map<Vector> biases(int layer) {
        return {values.data() + arch.bias_offset(layer), arch.fan_out(layer)};
    }
};

/// Validation result; accuracy in [0,1], mean cross-entropy in nats.
struct PerfScore {
    double accuracy = 0.0;
    double mean_loss = 0.0;
};

struct Hyper {
    int batch_size = 50;
    int local_epochs = 30;
    double learning_rate = 0.25;
    int rounds = 30;

    void validate() const;
};

}  // namespace fedcontrib
