#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fedcontrib/costing.hpp"
#include "fedcontrib/dataset.hpp"
#include "fedcontrib/nn.hpp"
#include "fedcontrib/rng.hpp"
#include "fedcontrib/types.hpp"

namespace fedcontrib {

struct FlClient {
    int id = 0;
    LabeledDataset data;
};

/// Per-round validation results. loo_scores[i] is the score of the aggregate
/// built without client i; empty when tracking is off.
struct RoundRecord {
    int round = 0;  // 1-based
    PerfScore full_score;
    std::vector<PerfScore> loo_scores;
    std::vector<std::int64_t> client_sgd_steps;
};

struct TrainingHistory {
    std::vector<int> participants;  // client ids, run order
    std::vector<RoundRecord> records;
    ModelParams final_model;
    bool loo_tracked = false;
};

struct FlOptions {
    bool track_loo = false;
    bool uniform_weights = false;  // default: aggregate weights proportional to sample counts
    int jobs = 1;                  // client trainings that may run concurrently
};

// Per-client training seed for one round. Depends only on (run seed, round,
// client id), so a client trains identically whether or not its peers
// participate; leave-one-out reruns stay comparable.
inline std::uint64_t client_seed(std::uint64_t run_seed, int round, int client_id) {
    return mix_seed(mix_seed(run_seed, static_cast<std::uint64_t>(round)),
                    static_cast<std::uint64_t>(client_id));
}

// Coordinate-wise weighted average; weights are normalized to sum to one.
ModelParams aggregate(const std::vector<ModelParams>& models, const std::vector<double>& weights);

// One broadcast / local-train / aggregate / validate cycle. Updates the ledger
// with every aggregation, validation, SGD step and transferred byte.
std::pair<ModelParams, RoundRecord> run_round(const ModelParams& global,
                                              const std::vector<FlClient>& clients, const Hyper& h,
                                              const LabeledDataset& validation,
                                              const FlOptions& opts, CostLedger& ledger,
                                              std::uint64_t run_seed, int round);

struct FlRun {
    TrainingHistory history;
    CostLedger ledger;
};

// Initializes the global model from (arch, seed) and runs exactly h.rounds
// rounds over the given participants. Deterministic.
FlRun run_federated(const std::vector<FlClient>& clients, const Architecture& arch, const Hyper& h,
                    const LabeledDataset& validation, const FlOptions& opts, std::uint64_t seed);

}  // namespace fedcontrib
