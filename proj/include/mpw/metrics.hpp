#pragma once

#include "mpw/judge.hpp"
#include "mpw/orchestrator.hpp"
#include "mpw/scenario.hpp"
#include "mpw/serp.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mpw {

struct SampleMetrics {
    std::string scenario_id;
    Tier tier = Tier::Easy;
    int pass1 = 0;             // 0/1 from the judgment
    double fcr = 0.0;          // |unique matched keys| / |facts|
    int tool_calls = 0;        // T
    int hits = 0;              // H, raw hit count
    std::size_t fact_count = 0;
    std::vector<HitLog> hit_sequence;  // call order
};

// Derives per-sample metrics from a terminal state. A matched key absent
// from the scenario's facts is an engine bug and raises IntegrityError.
SampleMetrics compute_sample_metrics(const SampleState& state, const Scenario& scenario,
                                     const Judgment& judgment);

// Count of first-time fact coverage contributed by each call, index k-1.
std::vector<int> newly_covered_at_call(const SampleMetrics& sample);

struct AggregateRow {
    std::string label;  // "Easy" | "Mid" | "Hard" | "Overall"
    int samples = 0;
    double pass1_pct = 0.0;
    double fcr_pct = 0.0;
    double hitrate_pooled_pct = 0.0;  // 100 * sum(H) / sum(T), primary
    double hitrate_mean_pct = 0.0;    // mean of per-sample H/T over T>0 samples
    double mean_tool_calls = 0.0;
};

struct AggregateTable {
    std::vector<AggregateRow> rows;
    std::vector<std::string> warnings;
};

AggregateTable aggregate(const std::vector<SampleMetrics>& samples);

struct ProcessCurves {
    int k_cohort = 0;
    int k_trunc = 0;
    int cohort_size_delta = 0;           // |{T >= k_cohort}|
    int cohort_size_trunc = 0;           // |{T >= k_trunc}|
    std::vector<double> delta_facts;     // k = 1..k_cohort
    std::vector<int> n_of_k;             // k = 1..max T over all samples
    std::vector<bool> low_support;       // n(k) < 50, parallel to n_of_k
    std::vector<double> fcr_of_k;        // k = 1..k_trunc, fixed cohort
    std::vector<double> hitprec_of_k;    // k = 1..k_trunc, fixed cohort
    std::vector<std::string> warnings;
};

ProcessCurves process_curves(const std::vector<SampleMetrics>& samples, int k_cohort,
                             int k_trunc);

struct FcrBin {
    double mean_fcr = 0.0;
    double mean_pass1 = 0.0;
    int count = 0;
};

struct BinnedCurve {
    std::vector<FcrBin> bins;
};

// Equal-frequency bins over samples sorted by (fcr, scenario_id); sizes
// differ by at most one, larger bins first. num_bins must be in
// [1, samples.size()].
BinnedCurve quantile_bins(const std::vector<SampleMetrics>& samples, int num_bins);

// Plot-ready tabular emitters.
std::string aggregate_to_tsv(const AggregateTable& table);
std::string delta_facts_to_tsv(const ProcessCurves& curves);
std::string cumulative_curves_to_tsv(const ProcessCurves& curves);
std::string bins_to_tsv(const BinnedCurve& curve);
nlohmann::ordered_json metrics_summary_json(const AggregateTable& table,
                                            const ProcessCurves& curves,
                                            const BinnedCurve& bins);

}  // namespace mpw
