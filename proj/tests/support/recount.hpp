#pragma once

// Brute-force recounts of every process metric straight from raw hit logs.
// Deliberately naive (fresh O(k) scans per prefix, no incremental state) so
// the production metrics module is checked against an independent path.

#include "mpw/metrics.hpp"
#include "mpw/serp.hpp"

#include <string>
#include <vector>

namespace mpw::test {

inline std::vector<std::string> keys_in_first_k(const std::vector<HitLog>& logs, int k) {
    std::vector<std::string> keys;
    for (int i = 0; i < k && i < static_cast<int>(logs.size()); ++i) {
        if (!logs[static_cast<size_t>(i)].hit) continue;
        const std::string& key = logs[static_cast<size_t>(i)].matched_fact_keys.at(0);
        bool seen = false;
        for (const auto& existing : keys) seen = seen || existing == key;
        if (!seen) keys.push_back(key);
    }
    return keys;
}

inline int recount_hits_in_first_k(const std::vector<HitLog>& logs, int k) {
    int hits = 0;
    for (int i = 0; i < k && i < static_cast<int>(logs.size()); ++i) {
        if (logs[static_cast<size_t>(i)].hit) ++hits;
    }
    return hits;
}

inline double recount_fcr(const SampleMetrics& sample) {
    return static_cast<double>(
               keys_in_first_k(sample.hit_sequence, static_cast<int>(sample.hit_sequence.size()))
                   .size()) /
           static_cast<double>(sample.fact_count);
}

inline int recount_new_facts_at_call(const SampleMetrics& sample, int k) {
    return static_cast<int>(keys_in_first_k(sample.hit_sequence, k).size()) -
           static_cast<int>(keys_in_first_k(sample.hit_sequence, k - 1).size());
}

// Mean new facts at call k over the {T >= k_cohort} cohort, summed in input
// order so equality with the production path is exact.
inline std::vector<double> recount_delta_facts(const std::vector<SampleMetrics>& samples,
                                               int k_cohort) {
    std::vector<const SampleMetrics*> cohort;
    for (const auto& s : samples) {
        if (s.tool_calls >= k_cohort) cohort.push_back(&s);
    }
    std::vector<double> curve;
    if (cohort.empty()) return curve;
    for (int k = 1; k <= k_cohort; ++k) {
        double sum = 0.0;
        for (const auto* s : cohort) sum += recount_new_facts_at_call(*s, k);
        curve.push_back(sum / static_cast<double>(cohort.size()));
    }
    return curve;
}

inline std::vector<double> recount_fcr_of_k(const std::vector<SampleMetrics>& samples,
                                            int k_trunc) {
    std::vector<const SampleMetrics*> cohort;
    for (const auto& s : samples) {
        if (s.tool_calls >= k_trunc) cohort.push_back(&s);
    }
    std::vector<double> curve;
    if (cohort.empty()) return curve;
    for (int k = 1; k <= k_trunc; ++k) {
        double sum = 0.0;
        for (const auto* s : cohort) {
            sum += static_cast<double>(keys_in_first_k(s->hit_sequence, k).size()) /
                   static_cast<double>(s->fact_count);
        }
        curve.push_back(sum / static_cast<double>(cohort.size()));
    }
    return curve;
}

inline std::vector<double> recount_hitprec_of_k(const std::vector<SampleMetrics>& samples,
                                                int k_trunc) {
    std::vector<const SampleMetrics*> cohort;
    for (const auto& s : samples) {
        if (s.tool_calls >= k_trunc) cohort.push_back(&s);
    }
    std::vector<double> curve;
    if (cohort.empty()) return curve;
    for (int k = 1; k <= k_trunc; ++k) {
        double sum = 0.0;
        for (const auto* s : cohort) {
            sum += static_cast<double>(recount_hits_in_first_k(s->hit_sequence, k)) /
                   static_cast<double>(k);
        }
        curve.push_back(sum / static_cast<double>(cohort.size()));
    }
    return curve;
}

}  // namespace mpw::test
