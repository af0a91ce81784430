#pragma once

#include <cstdint>
#include <utility>

#include "fedcontrib/dataset.hpp"
#include "fedcontrib/types.hpp"

namespace fedcontrib {

// Glorot-uniform weights, zero biases; deterministic in (arch, seed).
ModelParams init_model(const Architecture& arch, std::uint64_t seed);

// ReLU hidden layers, softmax output (max-subtracted). Every row sums to one.
Matrix forward(const ModelParams& model, const Eigen::Ref<const Matrix>& features);

// Mean cross-entropy over the batch and its gradient for every parameter.
std::pair<double, Vector> loss_and_grad(const ModelParams& model,
                                        const Eigen::Ref<const Matrix>& features,
                                        const Eigen::Ref<const Eigen::VectorXi>& labels);

// local_epochs passes of shuffled minibatch SGD (last batch may be short).
// Returns the updated copy and the number of SGD steps taken,
// local_epochs * ceil(n / batch_size). The input model is not modified.
std::pair<ModelParams, std::int64_t> local_train(const ModelParams& model,
                                                 const LabeledDataset& data, const Hyper& h,
                                                 std::uint64_t seed);

// Argmax accuracy (ties resolved toward the lowest class index) and mean loss.
PerfScore evaluate(const ModelParams& model, const LabeledDataset& data);

}  // namespace fedcontrib
