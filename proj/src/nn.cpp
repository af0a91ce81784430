#include "fedcontrib/nn.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fedcontrib/rng.hpp"

namespace fedcontrib {

namespace {

void check_feature_dims(const Architecture& arch, const Eigen::Ref<const Matrix>& features) {
    if (features.cols() != arch.input_dim()) {
        throw ShapeError("feature dim " + std::to_string(features.cols()) +
                         " does not match model input dim " + std::to_string(arch.input_dim()));
    }
}

void check_labels(const Architecture& arch, const Eigen::Ref<const Eigen::VectorXi>& labels,
                  Eigen::Index n) {
    if (labels.size() != n) {
        throw ShapeError("label count " + std::to_string(labels.size()) +
                         " does not match feature row count " + std::to_string(n));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (labels[i] < 0 || labels[i] >= arch.num_classes()) {
            throw ContractViolation("label " + std::to_string(labels[i]) + " at row " +
                                    std::to_string(i) + " outside [0, " +
                                    std::to_string(arch.num_classes()) + ")");
        }
    }
}

// Final-layer logits; ReLU between layers.
Matrix output_logits(const ModelParams& model, const Eigen::Ref<const Matrix>& features) {
    const int layers = model.arch.num_layers();
    Matrix acts = features;
    for (int l = 0; l < layers; ++l) {
        acts = (acts * model.weights(l)).rowwise() + model.biases(l).transpose();
        if (l + 1 < layers) acts = acts.cwiseMax(0.0);
    }
    return acts;
}

void softmax_rows_in_place(Matrix& logits) {
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        auto row = logits.row(i);
        const double peak = row.maxCoeff();
        row = (row.array() - peak).exp();
        row /= row.sum();
    }
}

// Mean cross-entropy from logits via log-sum-exp.
double mean_cross_entropy(const Matrix& logits, const Eigen::Ref<const Eigen::VectorXi>& labels) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const auto row = logits.row(i);
        const double peak = row.maxCoeff();
        const double lse = peak + std::log((row.array() - peak).exp().sum());
        total += lse - row[labels[i]];
    }
    return total / static_cast<double>(logits.rows());
}

}  // namespace

ModelParams init_model(const Architecture& arch, std::uint64_t seed) {
    arch.validate();
    ModelParams model;
    model.arch = arch;
    model.values = Vector::Zero(arch.param_count());
    Rng rng(seed);
    for (int l = 0; l < arch.num_layers(); ++l) {
        const double limit = std::sqrt(6.0 / (arch.fan_in(l) + arch.fan_out(l)));
        auto weights = model.weights(l);
        for (Eigen::Index i = 0; i < weights.rows(); ++i) {
            for (Eigen::Index j = 0; j < weights.cols(); ++j) {
                weights(i, j) = rng.uniform(-limit, limit);
            }
        }
        // biases stay zero
    }
    return model;
}

Matrix forward(const ModelParams& model, const Eigen::Ref<const Matrix>& features) {
    check_feature_dims(model.arch, features);
    Matrix probs = output_logits(model, features);
    softmax_rows_in_place(probs);
    return probs;
}

std::pair<double, Vector> loss_and_grad(const ModelParams& model,
                                        const Eigen::Ref<const Matrix>& features,
                                        const Eigen::Ref<const Eigen::VectorXi>& labels) {
    const Eigen::Index n = features.rows();
    if (n == 0) throw ContractViolation("loss_and_grad: empty batch");
    check_feature_dims(model.arch, features);
    check_labels(model.arch, labels, n);

    const Architecture& arch = model.arch;
    const int layers = arch.num_layers();

    // Forward pass, keeping pre- and post-activation values per layer.
    std::vector<Matrix> acts(layers + 1);
    std::vector<Matrix> pre(layers);
    acts[0] = features;
    for (int l = 0; l < layers; ++l) {
        pre[l] = (acts[l] * model.weights(l)).rowwise() + model.biases(l).transpose();
        acts[l + 1] = (l + 1 < layers) ? pre[l].cwiseMax(0.0) : pre[l];
    }

    const double loss = mean_cross_entropy(pre[layers - 1], labels);

    // Backward pass: softmax + cross-entropy gives probs - onehot at the top.
    Matrix delta = pre[layers - 1];
    softmax_rows_in_place(delta);
    for (Eigen::Index i = 0; i < n; ++i) delta(i, labels[i]) -= 1.0;
    delta /= static_cast<double>(n);

    Vector grad = Vector::Zero(arch.param_count());
    for (int l = layers - 1; l >= 0; --l) {
        Eigen::Map<RowMajorMatrix> grad_w(grad.data() + arch.weight_offset(l), arch.fan_in(l),
                                          arch.fan_out(l));
        Eigen::Map<Vector> grad_b(grad.data() + arch.bias_offset(l), arch.fan_out(l));
        grad_w = acts[l].transpose() * delta;
        grad_b = delta.colwise().sum();
        if (l > 0) {
            delta = (delta * model.weights(l).transpose())
                        .cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
        }
    }
    return {loss, std::move(grad)};
}

std::pair<ModelParams, std::int64_t> local_train(const ModelParams& model,
                                                 const LabeledDataset& data, const Hyper& h,
                                                 std::uint64_t seed) {
    h.validate();
    if (data.empty()) throw ContractViolation("local_train: empty dataset");
    check_feature_dims(model.arch, data.features);

    ModelParams current = model;
    Rng rng(seed);
    const Eigen::Index n = data.size();
    const Eigen::Index batch = h.batch_size;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    Matrix batch_features;
    Eigen::VectorXi batch_labels;
    std::int64_t steps = 0;

    for (int epoch = 0; epoch < h.local_epochs; ++epoch) {
        rng.shuffle(order);
        for (Eigen::Index start = 0; start < n; start += batch) {
            const Eigen::Index size = std::min(batch, n - start);
            batch_features.resize(size, data.dim());
            batch_labels.resize(size);
            for (Eigen::Index r = 0; r < size; ++r) {
                batch_features.row(r) = data.features.row(order[start + r]);
                batch_labels[r] = data.labels[order[start + r]];
            }
            const auto [loss, grad] = loss_and_grad(current, batch_features, batch_labels);
            (void)loss;
            current.values -= h.learning_rate * grad;
            ++steps;
        }
    }
    return {std::move(current), steps};
}

PerfScore evaluate(const ModelParams& model, const LabeledDataset& data) {
    if (data.empty()) throw ContractViolation("evaluate: empty dataset");
    check_feature_dims(model.arch, data.features);
    check_labels(model.arch, data.labels, data.size());

    const Matrix logits = output_logits(model, data.features);
    Eigen::Index correct = 0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        // first strict maximum: ties resolve toward the lowest class index
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < logits.cols(); ++j) {
            if (logits(i, j) > logits(i, best)) best = j;
        }
        if (best == data.labels[i]) ++correct;
    }
    PerfScore score;
    score.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
    score.mean_loss = mean_cross_entropy(logits, data.labels);
    return score;
}

}  // namespace fedcontrib
