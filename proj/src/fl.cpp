#include "fedcontrib/fl.hpp"

#include <string>
#include <utility>

#include "fedcontrib/parallel.hpp"

namespace fedcontrib {

ModelParams aggregate(const std::vector<ModelParams>& models, const std::vector<double>& weights) {
    if (models.empty()) throw ContractViolation("aggregate: no models");
    if (weights.size() != models.size()) {
        throw ContractViolation("aggregate: " + std::to_string(models.size()) + " models but " +
                                std::to_string(weights.size()) + " weights");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < models.size(); ++k) {
        if (models[k].arch != models[0].arch) {
            throw ContractViolation("aggregate: architecture mismatch at model " +
                                    std::to_string(k));
        }
        if (weights[k] < 0.0) {
            throw ContractViolation("aggregate: negative weight at model " + std::to_string(k));
        }
        total += weights[k];
    }
    if (!(total > 0.0)) throw ContractViolation("aggregate: weights sum to zero");

    ModelParams out;
    out.arch = models[0].arch;
    out.values = Vector::Zero(models[0].values.size());
    for (std::size_t k = 0; k < models.size(); ++k) {
        out.values += (weights[k] / total) * models[k].values;
    }
    return out;
}

std::pair<ModelParams, RoundRecord> run_round(const ModelParams& global,
                                              const std::vector<FlClient>& clients, const Hyper& h,
                                              const LabeledDataset& validation,
                                              const FlOptions& opts, CostLedger& ledger,
                                              std::uint64_t run_seed, int round) {
    if (clients.empty()) throw ContractViolation("run_round: no clients");
    if (validation.empty()) throw ContractViolation("run_round: empty validation set");
    for (const auto& client : clients) {
        if (client.data.empty()) {
            throw ContractViolation("run_round: client " + std::to_string(client.id) +
                                    " has no data");
        }
    }
    if (opts.track_loo && clients.size() < 2) {
        throw ContractViolation("run_round: leave-one-out tracking needs at least 2 clients");
    }

    const std::size_t count = clients.size();
    std::vector<ModelParams> updated(count);
    std::vector<std::int64_t> steps(count);
    parallel_for(count, opts.jobs, [&](std::size_t i) {
        auto [model, step_count] =
            local_train(global, clients[i].data, h, client_seed(run_seed, round, clients[i].id));
        updated[i] = std::move(model);
        steps[i] = step_count;
    });

    std::vector<double> weights(count);
    for (std::size_t i = 0; i < count; ++i) {
        weights[i] = opts.uniform_weights ? 1.0 : static_cast<double>(clients[i].data.size());
    }

    ModelParams new_global = aggregate(updated, weights);
    ledger.server_aggregations += 1;

    RoundRecord record;
    record.round = round;
    record.full_score = evaluate(new_global, validation);
    ledger.server_validations += 1;
    record.client_sgd_steps = steps;

    const std::int64_t wire_bytes = model_wire_bytes(global.arch);
    for (std::size_t i = 0; i < count; ++i) {
        ledger.client_sgd_steps[clients[i].id] += steps[i];
        ledger.bytes_down[clients[i].id] += wire_bytes;
        ledger.bytes_up[clients[i].id] += wire_bytes;
    }

    if (opts.track_loo) {
        record.loo_scores.resize(count);
        std::vector<ModelParams> rest_models;
        std::vector<double> rest_weights;
        rest_models.reserve(count - 1);
        rest_weights.reserve(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            rest_models.clear();
            rest_weights.clear();
            for (std::size_t j = 0; j < count; ++j) {
                if (j == i) continue;
                rest_models.push_back(updated[j]);
                rest_weights.push_back(weights[j]);
            }
            const ModelParams loo_model = aggregate(rest_models, rest_weights);
            ledger.loo_aggregations += 1;
            record.loo_scores[i] = evaluate(loo_model, validation);
            ledger.loo_validations += 1;
        }
    }

    return {std::move(new_global), std::move(record)};
}

FlRun run_federated(const std::vector<FlClient>& clients, const Architecture& arch, const Hyper& h,
                    const LabeledDataset& validation, const FlOptions& opts, std::uint64_t seed) {
    h.validate();
    if (clients.empty()) throw ContractViolation("run_federated: empty participant set");
    for (const auto& client : clients) {
        if (client.data.empty()) {
            throw ContractViolation("run_federated: client " + std::to_string(client.id) +
                                    " has no data");
        }
        if (client.data.num_classes != arch.num_classes()) {
            throw ConfigError("run_federated: client " + std::to_string(client.id) + " has " +
                              std::to_string(client.data.num_classes) +
                              " classes, model expects " + std::to_string(arch.num_classes()));
        }
    }
    if (validation.num_classes != arch.num_classes()) {
        throw ConfigError("run_federated: validation set class count does not match the model");
    }

    FlRun run;
    run.history.loo_tracked = opts.track_loo;
    run.history.participants.reserve(clients.size());
    for (const auto& client : clients) run.history.participants.push_back(client.id);
    run.history.records.reserve(static_cast<std::size_t>(h.rounds));

    ModelParams global = init_model(arch, seed);
    for (int round = 1; round <= h.rounds; ++round) {
        auto [next_global, record] =
            run_round(global, clients, h, validation, opts, run.ledger, seed, round);
        global = std::move(next_global);
        run.history.records.push_back(std::move(record));
    }
    run.history.final_model = std::move(global);
    return run;
}

}  // namespace fedcontrib
