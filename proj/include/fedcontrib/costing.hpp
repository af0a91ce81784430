#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fedcontrib/dataset.hpp"
#include "fedcontrib/types.hpp"

namespace fedcontrib {

/// Exact event counters for one run (or a merge of runs). Server work is split
/// into core FedAvg events and the extra leave-one-out tracking events so that
/// overheads can be read off the counters directly.
struct CostLedger {
    std::map<int, std::int64_t> client_sgd_steps;
    std::int64_t server_aggregations = 0;  // core aggregate, one per round
    std::int64_t server_validations = 0;   // core validation, one per round
    std::int64_t loo_aggregations = 0;     // leave-one-out tracking extras
    std::int64_t loo_validations = 0;
    std::map<int, std::int64_t> bytes_down;
    std::map<int, std::int64_t> bytes_up;

    std::int64_t total_aggregations() const { return server_aggregations + loo_aggregations; }
    std::int64_t total_validations() const { return server_validations + loo_validations; }
    std::int64_t total_sgd_steps() const;
    std::int64_t total_bytes() const;

    // Associative and commutative; merging run ledgers sums every counter.
    void merge(const CostLedger& other);

    // The ledger with the loo tracking counters dropped: exactly what the same
    // run records with tracking disabled (tracking never changes training).
    CostLedger core_only() const;
};

/// Analytic overhead in the unit system below.
struct OverheadPrediction {
    double comp_units = 0.0;
    std::int64_t traffic_bytes = 0;
};

/// Unit choices: client update cost in minibatch SGD steps, server cost in
/// (aggregate + validate) event pairs (plain FedAvg performs one pair per
/// round, so server_cost = 1), model traffic in bytes at 4 bytes/parameter
/// (32-bit wire encoding).
struct CostUnits {
    std::vector<std::int64_t> client_update_cost;  // per client, spec order
    double server_cost = 1.0;
    std::int64_t model_bytes = 0;
};

std::int64_t sgd_steps_per_round(std::int64_t num_samples, int batch_size, int local_epochs);
std::int64_t model_wire_bytes(const Architecture& arch);
CostUnits cost_units(const std::vector<ClientSpec>& specs, const Hyper& h,
                     const Architecture& arch);

// Overhead of estimating contributions with per-client leave-one-out retraining:
// one extra full FL run per client.
OverheadPrediction predict_naive_overhead(int num_clients, int rounds, double server_cost,
                                          const std::vector<std::int64_t>& client_update_cost,
                                          const std::vector<std::int64_t>& model_bytes);

// Overhead of step-wise tracking: num_clients extra server pairs per round,
// no traffic.
OverheadPrediction predict_swc_overhead(int num_clients, int rounds, double server_cost);

// Step-wise overhead as a fraction of the per-client-retraining overhead,
// always in (0, 1].
double overhead_reduction(int num_clients, double server_cost,
                          const std::vector<std::int64_t>& client_update_cost);

struct ReconcileCheck {
    std::string field;
    double measured = 0.0;
    double predicted = 0.0;
    bool ok = false;
};

/// Measured-versus-predicted overhead comparison, zero tolerance.
struct ReconciliationReport {
    std::int64_t extra_aggregations = 0;
    std::int64_t extra_validations = 0;
    std::int64_t extra_pairs = 0;  // aggregate+validate pairs beyond the baseline
    std::map<int, std::int64_t> extra_sgd_steps;
    std::int64_t extra_sgd_total = 0;
    std::int64_t extra_traffic_bytes = 0;
    double measured_comp_units = 0.0;
    std::string pair_accounting;
    std::vector<ReconcileCheck> checks;
    std::vector<std::string> mismatches;
    bool pass = false;
};

// Measured overhead = method ledger minus baseline plain-FL ledger, compared
// field by field against the prediction. Any mismatch fails the report.
ReconciliationReport reconcile(const CostLedger& method_ledger,
                               const OverheadPrediction& predicted, const CostLedger& baseline,
                               double server_cost);

}  // namespace fedcontrib
