#include "fedcontrib/contribution.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fedcontrib/parallel.hpp"

namespace fedcontrib {

const char* method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::stepwise: return "swc";
        case Method::h1: return "h1";
        case Method::h2: return "h2";
    }
    throw ContractViolation("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "naive") return Method::naive;
    if (name == "swc") return Method::stepwise;
    if (name == "h1") return Method::h1;
    if (name == "h2") return Method::h2;
    throw ConfigError("unknown method \"" + name + "\" (expected naive, swc, h1 or h2)");
}

const char* score_basis_name(ScoreBasis b) {
    return b == ScoreBasis::accuracy ? "accuracy" : "loss";
}

ScoreBasis score_basis_from_name(const std::string& name) {
    if (name == "accuracy") return ScoreBasis::accuracy;
    if (name == "loss") return ScoreBasis::loss;
    throw ConfigError("unknown score basis \"" + name + "\" (expected accuracy or loss)");
}

ContributionReport normalize_gains(Method method, ScoreBasis basis, std::vector<int> client_ids,
                                   const Vector& raw_gains) {
    if (static_cast<Eigen::Index>(client_ids.size()) != raw_gains.size()) {
        throw ContractViolation("normalize_gains: one gain per client required");
    }
    ContributionReport report;
    report.method = method;
    report.basis = basis;
    report.client_ids = std::move(client_ids);
    report.raw_gains = raw_gains;
    const double total = raw_gains.sum();
    if (std::abs(total) < kDegenerateEpsilon) {
        report.scores = raw_gains;
        report.normalized = false;
        report.degenerate = true;
    } else {
        report.scores = raw_gains / total;
        report.normalized = true;
        report.degenerate = false;
    }
    return report;
}

double performance_gain(const PerfScore& with_client, const PerfScore& without_client,
                        ScoreBasis basis) {
    if (basis == ScoreBasis::accuracy) return with_client.accuracy - without_client.accuracy;
    return without_client.mean_loss - with_client.mean_loss;
}

NaiveResult naive_scores(const std::vector<FlClient>& clients, const Architecture& arch,
                         const Hyper& h, const LabeledDataset& validation, const FlOptions& opts,
                         std::uint64_t seed, ScoreBasis basis, const FlRun* full_run) {
    const std::size_t count = clients.size();
    if (count < 2) throw ContractViolation("naive_scores: needs at least 2 clients");

    FlOptions plain = opts;
    plain.track_loo = false;

    NaiveResult result;
    if (full_run != nullptr) {
        result.full_run = *full_run;
    } else {
        result.full_run = run_federated(clients, arch, h, validation, plain, seed);
    }

    // Leave-one-out retrainings reuse the same init seed; the per-client
    // training seeds depend only on (seed, round, client id), so remaining
    // clients behave exactly as in the full run.
    result.loo_runs.resize(count);
    FlOptions inner = plain;
    inner.jobs = 1;
    parallel_for(count, opts.jobs, [&](std::size_t i) {
        std::vector<FlClient> rest;
        rest.reserve(count - 1);
        for (std::size_t j = 0; j < count; ++j) {
            if (j != i) rest.push_back(clients[j]);
        }
        result.loo_runs[i] = run_federated(rest, arch, h, validation, inner, seed);
    });

    Vector gains(static_cast<Eigen::Index>(count));
    std::vector<int> ids;
    ids.reserve(count);
    const PerfScore& full_final = result.full_run.history.records.back().full_score;
    for (std::size_t i = 0; i < count; ++i) {
        const PerfScore& loo_final = result.loo_runs[i].history.records.back().full_score;
        gains[static_cast<Eigen::Index>(i)] = performance_gain(full_final, loo_final, basis);
        ids.push_back(clients[i].id);
    }
    result.report = normalize_gains(Method::naive, basis, std::move(ids), gains);

    // Ledger over all c+1 trainings. The full run may have been executed with
    // loo tracking for the step-wise method; its core counters are identical
    // to the untracked run's.
    result.ledger = result.full_run.ledger.core_only();
    for (const auto& loo : result.loo_runs) result.ledger.merge(loo.ledger);
    return result;
}

ContributionReport stepwise_scores(const TrainingHistory& history, ScoreBasis basis) {
    const std::size_t count = history.participants.size();
    if (!history.loo_tracked || history.records.empty()) {
        throw ContractViolation("stepwise_scores: history lacks leave-one-out tracking");
    }
    for (const auto& record : history.records) {
        if (record.loo_scores.size() != count) {
            throw ContractViolation("stepwise_scores: round " + std::to_string(record.round) +
                                    " is missing leave-one-out scores");
        }
    }
    Vector gains = Vector::Zero(static_cast<Eigen::Index>(count));
    for (const auto& record : history.records) {
        for (std::size_t i = 0; i < count; ++i) {
            gains[static_cast<Eigen::Index>(i)] +=
                performance_gain(record.full_score, record.loo_scores[i], basis);
        }
    }
    return normalize_gains(Method::stepwise, basis, history.participants, gains);
}

ContributionReport heuristic1(const std::vector<ClientSpec>& specs) {
    Vector gains(static_cast<Eigen::Index>(specs.size()));
    std::vector<int> ids;
    ids.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        gains[static_cast<Eigen::Index>(i)] = static_cast<double>(specs[i].num_samples);
        ids.push_back(specs[i].id);
    }
    return normalize_gains(Method::h1, ScoreBasis::accuracy, std::move(ids), gains);
}

ContributionReport heuristic2(const std::vector<ClientSpec>& specs) {
    Vector gains(static_cast<Eigen::Index>(specs.size()));
    std::vector<int> ids;
    ids.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        gains[static_cast<Eigen::Index>(i)] =
            static_cast<double>(specs[i].num_samples) * specs[i].variety();
        ids.push_back(specs[i].id);
    }
    return normalize_gains(Method::h2, ScoreBasis::accuracy, std::move(ids), gains);
}

double metric_error(const ContributionReport& reference, const ContributionReport& candidate) {
    if (reference.scores.size() != candidate.scores.size()) {
        throw ContractViolation("metric_error: reports score different client counts");
    }
    if (reference.normalized != candidate.normalized) {
        throw ContractViolation("metric_error: one report is normalized, the other is not");
    }
    return (reference.scores - candidate.scores).norm();
}

ContributionReport average_reports(const std::vector<ContributionReport>& reports) {
    if (reports.empty()) throw ContractViolation("average_reports: no reports");
    const auto& first = reports.front();
    Vector mean = Vector::Zero(first.raw_gains.size());
    for (const auto& report : reports) {
        if (report.method != first.method || report.basis != first.basis ||
            report.client_ids != first.client_ids) {
            throw ContractViolation("average_reports: reports must share method, basis and clients");
        }
        mean += report.raw_gains;
    }
    mean /= static_cast<double>(reports.size());
    return normalize_gains(first.method, first.basis, first.client_ids, mean);
}

}  // namespace fedcontrib
