#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedcontrib/contribution.hpp"
#include "fedcontrib/dataset.hpp"
#include "fedcontrib/types.hpp"

namespace fedcontrib {

struct SyntheticConfig {
    int num_classes = 10;
    int dim = 16;
    int per_class = 250;
    double spread = 0.1;
    std::uint64_t seed = 4242;
    int holdout_per_class = 50;
};

struct IdxConfig {
    std::filesystem::path train_images;
    std::filesystem::path train_labels;
    std::filesystem::path test_images;
    std::filesystem::path test_labels;
};

struct DatasetConfig {
    std::optional<SyntheticConfig> synthetic;
    std::optional<IdxConfig> idx;
};

struct ExperimentOptions {
    ScoreBasis score_basis = ScoreBasis::accuracy;
    bool allow_overlap = false;
    bool uniform_weights = false;
    int jobs = 1;
    std::vector<std::int64_t> sweep_grid = {50, 200, 350};
};

struct ExperimentConfig {
    int schema_version = 1;
    DatasetConfig dataset;
    std::vector<ClientSpec> clients;
    Hyper hyper;
    std::vector<int> hidden_layers = {32};
    std::vector<Method> methods;
    std::vector<std::uint64_t> seeds;
    ExperimentOptions options;
    std::filesystem::path output_dir;

    bool wants(Method m) const;
};

// Strict JSON schema: exact top-level keys, unknown keys rejected anywhere,
// errors name the offending JSON path.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_json(const nlohmann::json& doc);

/// Pool + validation split and the model architecture implied by the config.
struct PreparedData {
    LabeledDataset pool;
    LabeledDataset validation;
    Architecture arch;
};

PreparedData prepare_data(const ExperimentConfig& config);

/// results.json is the source of truth; every CSV is derived from it.
struct ExperimentResult {
    nlohmann::json results;
    int fl_runs = 0;
    bool reconciliation_ok = true;
};

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const PreparedData& data);

// Writes results.json, scores.csv, ledger.csv, reconciliation.json.
void write_experiment_outputs(const ExperimentResult& result,
                              const std::filesystem::path& out_dir);

struct SweepResult {
    nlohmann::json results;
    bool reconciliation_ok = true;
};

// Grid over the first two clients' sample counts; every cell runs the full
// experiment and records each method's distance from the leave-one-out
// reference (which is always computed, listed or not).
SweepResult run_sweep(const ExperimentConfig& config);

// Writes sweep_results.json and errors.csv.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& out_dir);

// CSV derivations (schemas documented in the README).
std::string scores_csv_from_results(const nlohmann::json& results);
std::string ledger_csv_from_results(const nlohmann::json& results);
std::string errors_csv_from_results(const nlohmann::json& sweep_results);

}  // namespace fedcontrib
