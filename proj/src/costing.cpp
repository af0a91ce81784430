#include "fedcontrib/costing.hpp"

#include <cmath>
#include <set>
#include <string>

namespace fedcontrib {

namespace {

std::int64_t map_total(const std::map<int, std::int64_t>& counters) {
    std::int64_t total = 0;
    for (const auto& [id, value] : counters) total += value;
    return total;
}

void merge_into(std::map<int, std::int64_t>& into, const std::map<int, std::int64_t>& from) {
    for (const auto& [id, value] : from) into[id] += value;
}

}  // namespace

std::int64_t CostLedger::total_sgd_steps() const { return map_total(client_sgd_steps); }

std::int64_t CostLedger::total_bytes() const { return map_total(bytes_down) + map_total(bytes_up); }

void CostLedger::merge(const CostLedger& other) {
    merge_into(client_sgd_steps, other.client_sgd_steps);
    server_aggregations += other.server_aggregations;
    server_validations += other.server_validations;
    loo_aggregations += other.loo_aggregations;
    loo_validations += other.loo_validations;
    merge_into(bytes_down, other.bytes_down);
    merge_into(bytes_up, other.bytes_up);
}

CostLedger CostLedger::core_only() const {
    CostLedger out = *this;
    out.loo_aggregations = 0;
    out.loo_validations = 0;
    return out;
}

std::int64_t sgd_steps_per_round(std::int64_t num_samples, int batch_size, int local_epochs) {
    if (batch_size < 1) throw ContractViolation("sgd_steps_per_round: batch_size must be >= 1");
    if (local_epochs < 0) throw ContractViolation("sgd_steps_per_round: negative epoch count");
    if (num_samples < 0) throw ContractViolation("sgd_steps_per_round: negative sample count");
    if (num_samples == 0) return 0;
    const std::int64_t batches = (num_samples + batch_size - 1) / batch_size;
    return static_cast<std::int64_t>(local_epochs) * batches;
}

std::int64_t model_wire_bytes(const Architecture& arch) {
    return static_cast<std::int64_t>(arch.param_count()) * 4;  // 32-bit wire encoding
}

CostUnits cost_units(const std::vector<ClientSpec>& specs, const Hyper& h,
                     const Architecture& arch) {
    h.validate();
    arch.validate();
    CostUnits units;
    units.client_update_cost.reserve(specs.size());
    for (const auto& spec : specs) {
        units.client_update_cost.push_back(
            sgd_steps_per_round(spec.num_samples, h.batch_size, h.local_epochs));
    }
    units.server_cost = 1.0;  // one (aggregate + validate) pair per round
    units.model_bytes = model_wire_bytes(arch);
    return units;
}

OverheadPrediction predict_naive_overhead(int num_clients, int rounds, double server_cost,
                                          const std::vector<std::int64_t>& client_update_cost,
                                          const std::vector<std::int64_t>& model_bytes) {
    if (num_clients < 2) throw ContractViolation("predict_naive_overhead: needs >= 2 clients");
    if (static_cast<int>(client_update_cost.size()) != num_clients ||
        static_cast<int>(model_bytes.size()) != num_clients) {
        throw ContractViolation("predict_naive_overhead: per-client lists must have one entry per client");
    }
    if (rounds < 0) throw ContractViolation("predict_naive_overhead: negative round count");

    OverheadPrediction out;
    for (int i = 0; i < num_clients; ++i) {
        double comp_inner = server_cost;
        std::int64_t traffic_inner = 0;
        for (int j = 0; j < num_clients; ++j) {
            if (j == i) continue;
            comp_inner += static_cast<double>(client_update_cost[j]);
            traffic_inner += 2 * model_bytes[j];
        }
        out.comp_units += rounds * comp_inner;
        out.traffic_bytes += rounds * traffic_inner;
    }
    return out;
}

OverheadPrediction predict_swc_overhead(int num_clients, int rounds, double server_cost) {
    if (num_clients < 2) throw ContractViolation("predict_swc_overhead: needs >= 2 clients");
    if (rounds < 0) throw ContractViolation("predict_swc_overhead: negative round count");
    OverheadPrediction out;
    out.comp_units = static_cast<double>(rounds) * num_clients * server_cost;
    out.traffic_bytes = 0;
    return out;
}

double overhead_reduction(int num_clients, double server_cost,
                          const std::vector<std::int64_t>& client_update_cost) {
    if (num_clients < 2) throw ContractViolation("overhead_reduction: needs >= 2 clients");
    if (static_cast<int>(client_update_cost.size()) != num_clients) {
        throw ContractViolation("overhead_reduction: one update cost per client required");
    }
    const double numerator = num_clients * server_cost;
    double denominator = numerator;
    for (int i = 0; i < num_clients; ++i) {
        for (int j = 0; j < num_clients; ++j) {
            if (j != i) denominator += static_cast<double>(client_update_cost[j]);
        }
    }
    if (!(denominator > 0.0)) throw ContractViolation("overhead_reduction: zero denominator");
    return numerator / denominator;
}

ReconciliationReport reconcile(const CostLedger& method_ledger,
                               const OverheadPrediction& predicted, const CostLedger& baseline,
                               double server_cost) {
    ReconciliationReport report;
    report.extra_aggregations = method_ledger.total_aggregations() - baseline.total_aggregations();
    report.extra_validations = method_ledger.total_validations() - baseline.total_validations();
    report.extra_pairs = report.extra_aggregations;

    std::set<int> client_ids;
    for (const auto& [id, v] : method_ledger.client_sgd_steps) client_ids.insert(id);
    for (const auto& [id, v] : baseline.client_sgd_steps) client_ids.insert(id);
    for (int id : client_ids) {
        const auto find = [](const std::map<int, std::int64_t>& m, int key) {
            const auto it = m.find(key);
            return it == m.end() ? std::int64_t{0} : it->second;
        };
        const std::int64_t delta =
            find(method_ledger.client_sgd_steps, id) - find(baseline.client_sgd_steps, id);
        report.extra_sgd_steps[id] = delta;
        report.extra_sgd_total += delta;
    }
    report.extra_traffic_bytes = method_ledger.total_bytes() - baseline.total_bytes();
    report.measured_comp_units =
        static_cast<double>(report.extra_pairs) * server_cost +
        static_cast<double>(report.extra_sgd_total);
    report.pair_accounting =
        "extra aggregations = " + std::to_string(report.extra_aggregations) +
        ", extra validations = " + std::to_string(report.extra_validations) +
        " -> " + std::to_string(report.extra_pairs) + " (aggregate+validate) pairs";

    report.checks = {
        {"aggregate_validate_pairs", static_cast<double>(report.extra_aggregations),
         static_cast<double>(report.extra_validations),
         report.extra_aggregations == report.extra_validations},
        {"comp_units", report.measured_comp_units, predicted.comp_units,
         report.measured_comp_units == predicted.comp_units},
        {"traffic_bytes", static_cast<double>(report.extra_traffic_bytes),
         static_cast<double>(predicted.traffic_bytes),
         report.extra_traffic_bytes == predicted.traffic_bytes},
    };
    report.pass = true;
    for (const auto& check : report.checks) {
        if (!check.ok) {
            report.pass = false;
            report.mismatches.push_back(check.field);
        }
    }
    return report;
}

}  // namespace fedcontrib
