#include "mpw/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace mpw {

SampleMetrics compute_sample_metrics(const SampleState& state, const Scenario& scenario,
                                     const Judgment& judgment) {
    SampleMetrics m;
    m.scenario_id = state.scenario_id;
    m.tier = scenario.tier;
    m.pass1 = judgment.pass1() ? 1 : 0;
    m.fact_count = scenario.facts.size();
    m.hit_sequence = state.trajectory_log;
    m.tool_calls = static_cast<int>(state.trajectory_log.size());

    std::unordered_set<std::string> unique_keys;
    for (const auto& log : state.trajectory_log) {
        if (!log.hit) continue;
        // Compound-query hits are impossible by engine invariant.
        if (log.is_compound_query) {
            throw IntegrityError("sample " + state.scenario_id +
                                 ": hit recorded on a compound query");
        }
        if (log.matched_fact_keys.size() != 1) {
            throw IntegrityError("sample " + state.scenario_id +
                                 ": hit without exactly one matched key");
        }
        const std::string& key = log.matched_fact_keys[0];
        if (!scenario.has_fact(key)) {
            throw IntegrityError("sample " + state.scenario_id + ": matched key '" + key +
                                 "' is not a fact of scenario " + scenario.id);
        }
        ++m.hits;
        unique_keys.insert(key);
    }
    m.fcr = static_cast<double>(unique_keys.size()) / static_cast<double>(m.fact_count);
    return m;
}

std::vector<int> newly_covered_at_call(const SampleMetrics& sample) {
    std::vector<int> newly;
    newly.reserve(sample.hit_sequence.size());
    std::unordered_set<std::string> seen;
    for (const auto& log : sample.hit_sequence) {
        int fresh = 0;
        if (log.hit && !log.matched_fact_keys.empty() &&
            seen.insert(log.matched_fact_keys[0]).second) {
            fresh = 1;
        }
        newly.push_back(fresh);
    }
    return newly;
}

namespace {

AggregateRow make_row(const std::string& label, const std::vector<const SampleMetrics*>& group,
                      std::vector<std::string>& warnings) {
    AggregateRow row;
    row.label = label;
    row.samples = static_cast<int>(group.size());

    double pass1_sum = 0.0, fcr_sum = 0.0, calls_sum = 0.0, ratio_sum = 0.0;
    long long hits = 0, calls = 0;
    int with_calls = 0;
    for (const auto* s : group) {
        pass1_sum += s->pass1;
        fcr_sum += s->fcr;
        calls_sum += s->tool_calls;
        hits += s->hits;
        calls += s->tool_calls;
        if (s->tool_calls > 0) {
            ratio_sum += static_cast<double>(s->hits) / static_cast<double>(s->tool_calls);
            ++with_calls;
        }
    }
    const double n = static_cast<double>(group.size());
    row.pass1_pct = 100.0 * pass1_sum / n;
    row.fcr_pct = 100.0 * fcr_sum / n;
    row.mean_tool_calls = calls_sum / n;
    if (calls > 0) {
        row.hitrate_pooled_pct = 100.0 * static_cast<double>(hits) / static_cast<double>(calls);
    } else {
        warnings.push_back(label + ": no tool calls; pooled HitRate reported as 0");
    }
    if (with_calls > 0) row.hitrate_mean_pct = 100.0 * ratio_sum / with_calls;
    return row;
}

}  // namespace

AggregateTable aggregate(const std::vector<SampleMetrics>& samples) {
    AggregateTable table;
    if (samples.empty()) {
        table.warnings.push_back("no samples to aggregate");
        return table;
    }

    for (Tier tier : {Tier::Easy, Tier::Mid, Tier::Hard}) {
        std::vector<const SampleMetrics*> group;
        for (const auto& s : samples) {
            if (s.tier == tier) group.push_back(&s);
        }
        if (group.empty()) {
            table.warnings.push_back("tier " + to_string(tier) + " has no samples; row omitted");
            continue;
        }
        table.rows.push_back(make_row(to_string(tier), group, table.warnings));
    }
    std::vector<const SampleMetrics*> all;
    for (const auto& s : samples) all.push_back(&s);
    table.rows.push_back(make_row("Overall", all, table.warnings));
    return table;
}

ProcessCurves process_curves(const std::vector<SampleMetrics>& samples, int k_cohort,
                             int k_trunc) {
    if (k_cohort < 1 || k_trunc < 1) throw ConfigError("k_cohort and k_trunc must be >= 1");

    ProcessCurves curves;
    curves.k_cohort = k_cohort;
    curves.k_trunc = k_trunc;

    int max_calls = 0;
    for (const auto& s : samples) max_calls = std::max(max_calls, s.tool_calls);
    curves.n_of_k.resize(static_cast<size_t>(max_calls), 0);
    for (const auto& s : samples) {
        for (int k = 1; k <= s.tool_calls; ++k) ++curves.n_of_k[static_cast<size_t>(k - 1)];
    }
    for (int n : curves.n_of_k) curves.low_support.push_back(n < 50);

    std::vector<const SampleMetrics*> delta_cohort;
    for (const auto& s : samples) {
        if (s.tool_calls >= k_cohort) delta_cohort.push_back(&s);
    }
    curves.cohort_size_delta = static_cast<int>(delta_cohort.size());
    if (delta_cohort.empty()) {
        curves.warnings.push_back("empty cohort for k_cohort=" + std::to_string(k_cohort));
    } else {
        curves.delta_facts.assign(static_cast<size_t>(k_cohort), 0.0);
        for (const auto* s : delta_cohort) {
            const auto newly = newly_covered_at_call(*s);
            for (int k = 1; k <= k_cohort; ++k) {
                curves.delta_facts[static_cast<size_t>(k - 1)] +=
                    newly[static_cast<size_t>(k - 1)];
            }
        }
        for (auto& v : curves.delta_facts) v /= static_cast<double>(delta_cohort.size());
    }

    std::vector<const SampleMetrics*> trunc_cohort;
    for (const auto& s : samples) {
        if (s.tool_calls >= k_trunc) trunc_cohort.push_back(&s);
    }
    curves.cohort_size_trunc = static_cast<int>(trunc_cohort.size());
    if (trunc_cohort.empty()) {
        curves.warnings.push_back("empty cohort for k_trunc=" + std::to_string(k_trunc));
    } else {
        curves.fcr_of_k.assign(static_cast<size_t>(k_trunc), 0.0);
        curves.hitprec_of_k.assign(static_cast<size_t>(k_trunc), 0.0);
        for (const auto* s : trunc_cohort) {
            const auto newly = newly_covered_at_call(*s);
            int unique_so_far = 0;
            int hits_so_far = 0;
            for (int k = 1; k <= k_trunc; ++k) {
                unique_so_far += newly[static_cast<size_t>(k - 1)];
                if (s->hit_sequence[static_cast<size_t>(k - 1)].hit) ++hits_so_far;
                curves.fcr_of_k[static_cast<size_t>(k - 1)] +=
                    static_cast<double>(unique_so_far) / static_cast<double>(s->fact_count);
                curves.hitprec_of_k[static_cast<size_t>(k - 1)] +=
                    static_cast<double>(hits_so_far) / static_cast<double>(k);
            }
        }
        for (auto& v : curves.fcr_of_k) v /= static_cast<double>(trunc_cohort.size());
        for (auto& v : curves.hitprec_of_k) v /= static_cast<double>(trunc_cohort.size());
    }
    return curves;
}

BinnedCurve quantile_bins(const std::vector<SampleMetrics>& samples, int num_bins) {
    if (num_bins < 1) throw ConfigError("num_bins must be >= 1");
    if (static_cast<size_t>(num_bins) > samples.size()) {
        throw ConfigError("num_bins exceeds sample count");
    }

    std::vector<const SampleMetrics*> sorted;
    sorted.reserve(samples.size());
    for (const auto& s : samples) sorted.push_back(&s);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SampleMetrics* a, const SampleMetrics* b) {
                         if (a->fcr != b->fcr) return a->fcr < b->fcr;
                         return a->scenario_id < b->scenario_id;
                     });

    const size_t n = sorted.size();
    const size_t base = n / static_cast<size_t>(num_bins);
    const size_t extra = n % static_cast<size_t>(num_bins);  // first bins take one more

    BinnedCurve curve;
    size_t pos = 0;
    for (int b = 0; b < num_bins; ++b) {
        const size_t size = base + (static_cast<size_t>(b) < extra ? 1 : 0);
        FcrBin bin;
        bin.count = static_cast<int>(size);
        for (size_t i = 0; i < size; ++i, ++pos) {
            bin.mean_fcr += sorted[pos]->fcr;
            bin.mean_pass1 += sorted[pos]->pass1;
        }
        bin.mean_fcr /= static_cast<double>(size);
        bin.mean_pass1 /= static_cast<double>(size);
        curve.bins.push_back(bin);
    }
    return curve;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string aggregate_to_tsv(const AggregateTable& table) {
    std::string out = "tier\tsamples\tpass1_pct\tfcr_pct\thitrate_pooled_pct\t"
                      "hitrate_mean_pct\tmean_tool_calls\n";
    for (const auto& row : table.rows) {
        out += row.label + "\t" + std::to_string(row.samples) + "\t" + fmt2(row.pass1_pct) +
               "\t" + fmt2(row.fcr_pct) + "\t" + fmt2(row.hitrate_pooled_pct) + "\t" +
               fmt2(row.hitrate_mean_pct) + "\t" + fmt2(row.mean_tool_calls) + "\n";
    }
    return out;
}

std::string delta_facts_to_tsv(const ProcessCurves& curves) {
    std::string out = "k\tdelta_facts\tn_of_k\tlow_support\n";
    for (size_t i = 0; i < curves.delta_facts.size(); ++i) {
        const int n = i < curves.n_of_k.size() ? curves.n_of_k[i] : 0;
        out += std::to_string(i + 1) + "\t" + fmt(curves.delta_facts[i]) + "\t" +
               std::to_string(n) + "\t" + (n < 50 ? "1" : "0") + "\n";
    }
    return out;
}

std::string cumulative_curves_to_tsv(const ProcessCurves& curves) {
    std::string out = "k\tfcr_of_k\thitprec_of_k\tcohort_size\n";
    for (size_t i = 0; i < curves.fcr_of_k.size(); ++i) {
        out += std::to_string(i + 1) + "\t" + fmt(curves.fcr_of_k[i]) + "\t" +
               fmt(curves.hitprec_of_k[i]) + "\t" + std::to_string(curves.cohort_size_trunc) +
               "\n";
    }
    return out;
}

std::string bins_to_tsv(const BinnedCurve& curve) {
    std::string out = "bin\tmean_fcr\tmean_pass1\tcount\n";
    for (size_t i = 0; i < curve.bins.size(); ++i) {
        out += std::to_string(i + 1) + "\t" + fmt(curve.bins[i].mean_fcr) + "\t" +
               fmt(curve.bins[i].mean_pass1) + "\t" + std::to_string(curve.bins[i].count) + "\n";
    }
    return out;
}

nlohmann::ordered_json metrics_summary_json(const AggregateTable& table,
                                            const ProcessCurves& curves,
                                            const BinnedCurve& bins) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        rows.push_back({
            {"tier", row.label},
            {"samples", row.samples},
            {"pass1_pct", row.pass1_pct},
            {"fcr_pct", row.fcr_pct},
            {"hitrate_pooled_pct", row.hitrate_pooled_pct},
            {"hitrate_mean_pct", row.hitrate_mean_pct},
            {"mean_tool_calls", row.mean_tool_calls},
        });
    }
    nlohmann::ordered_json bin_rows = nlohmann::ordered_json::array();
    for (const auto& b : bins.bins) {
        bin_rows.push_back(
            {{"mean_fcr", b.mean_fcr}, {"mean_pass1", b.mean_pass1}, {"count", b.count}});
    }
    std::vector<std::string> warnings = table.warnings;
    warnings.insert(warnings.end(), curves.warnings.begin(), curves.warnings.end());
    return nlohmann::ordered_json{
        {"aggregate", std::move(rows)},
        {"process", nlohmann::ordered_json{{"k_cohort", curves.k_cohort},
                                           {"k_trunc", curves.k_trunc},
                                           {"cohort_size_delta", curves.cohort_size_delta},
                                           {"cohort_size_trunc", curves.cohort_size_trunc},
                                           {"delta_facts", curves.delta_facts},
                                           {"n_of_k", curves.n_of_k},
                                           {"fcr_of_k", curves.fcr_of_k},
                                           {"hitprec_of_k", curves.hitprec_of_k}}},
        {"fcr_bins", std::move(bin_rows)},
        {"warnings", warnings},
    };
}

}  // namespace mpw
