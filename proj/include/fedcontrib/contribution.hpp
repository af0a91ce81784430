#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedcontrib/fl.hpp"

namespace fedcontrib {

enum class Method { naive, stepwise, h1, h2 };
enum class ScoreBasis { accuracy, loss };

// Interface names used in configs and CSV output.
const char* method_name(Method m);
Method method_from_name(const std::string& name);
const char* score_basis_name(ScoreBasis b);
ScoreBasis score_basis_from_name(const std::string& name);

/// Per-client contribution scores for one method. When the gain total is
/// within kDegenerateEpsilon of zero the raw gains are kept unnormalized and
/// `degenerate` is set; otherwise scores sum to one (individual entries may be
/// negative).
struct ContributionReport {
    Method method = Method::naive;
    ScoreBasis basis = ScoreBasis::accuracy;
    std::vector<int> client_ids;
    Vector raw_gains;
    Vector scores;
    bool normalized = false;
    bool degenerate = false;
};

inline constexpr double kDegenerateEpsilon = 1e-9;

// scores = raw_gains / sum(raw_gains), or the degenerate fallback.
ContributionReport normalize_gains(Method method, ScoreBasis basis, std::vector<int> client_ids,
                                   const Vector& raw_gains);

// Performance improvement attributable to including a client: score with the
// client minus score without it (sign flipped for the loss basis so that
// higher is always better).
double performance_gain(const PerfScore& with_client, const PerfScore& without_client,
                        ScoreBasis basis);

struct NaiveResult {
    ContributionReport report;
    CostLedger ledger;  // all c+1 trainings combined
    FlRun full_run;
    std::vector<FlRun> loo_runs;  // per left-out client, spec order
};

// End-of-training leave-one-out gains: runs FL once with everyone and once per
// left-out client, all from the same init seed. When the caller already has a
// full run for this seed (e.g. the loo-tracked run used for the step-wise
// method), passing it skips the duplicate training; its core ledger is exactly
// what the untracked run would have recorded.
NaiveResult naive_scores(const std::vector<FlClient>& clients, const Architecture& arch,
                         const Hyper& h, const LabeledDataset& validation, const FlOptions& opts,
                         std::uint64_t seed, ScoreBasis basis, const FlRun* full_run = nullptr);

// Step-wise contribution: per-round full-versus-leave-one-out gains summed
// over all rounds, computed from a single tracked training.
ContributionReport stepwise_scores(const TrainingHistory& history, ScoreBasis basis);

// Data-quantity share: num_samples / total.
ContributionReport heuristic1(const std::vector<ClientSpec>& specs);

// Quantity-times-variety share: num_samples * |class_set| / total.
ContributionReport heuristic2(const std::vector<ClientSpec>& specs);

// Euclidean distance between two score vectors, on the unit score scale
// (multiply by 100 for the percent scale).
double metric_error(const ContributionReport& reference, const ContributionReport& candidate);

// Seed averaging: mean raw gains across reports, then one normalization.
ContributionReport average_reports(const std::vector<ContributionReport>& reports);

}  // namespace fedcontrib
