#pragma once

#include "mpw/metrics.hpp"
#include "mpw/orchestrator.hpp"
#include "mpw/pipeline.hpp"
#include "mpw/scenario.hpp"

#include <random>
#include <string>
#include <vector>

namespace mpw::test {

// Tests run with the repo root as working directory (see tests/CMakeLists.txt).
inline const char* kAppendixSamplePath = "data/appendix_sample.jsonl";
inline const char* kCaseFixturePath = "data/case_fixture.jsonl";
inline const char* kGoodTranscriptPath = "data/transcripts/good_case.jsonl";
inline const char* kBadTranscriptPath = "data/transcripts/bad_case.jsonl";
inline const char* kEntityPoolPath = "data/entity_pool.json";

inline Scenario appendix_scenario() { return load_scenarios(kAppendixSamplePath).at(0); }
inline Scenario case_scenario() { return load_scenarios(kCaseFixturePath).at(0); }

inline Scenario tiny_scenario(std::string id, std::vector<AtomicFact> facts,
                              std::string ground_truth = "Alpha Prime") {
    nlohmann::ordered_json record = {
        {"id", id},
        {"domain", "Football Team"},
        {"entity_pair", {"Alpha Prime", "Beta Ridge"}},
        {"question", "In 2027, which of Alpha Prime and Beta Ridge ranks higher overall?"},
        {"atomic_facts", nlohmann::ordered_json::array()},
        {"ground_truth", ground_truth},
    };
    for (const auto& f : facts) {
        record["atomic_facts"].push_back(
            {{"key", f.key}, {"value", f.value}, {"kind", to_string(f.kind)}});
    }
    return scenario_from_json(record);
}

// Random trajectories through the production compute_sample_metrics path.
// Hits always name real keys of the backing synthetic scenario.
inline std::vector<SampleMetrics> random_trajectories(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SampleMetrics> samples;
    for (int i = 0; i < count; ++i) {
        const int fact_count = 1 + static_cast<int>(rng() % 15);
        std::vector<AtomicFact> facts;
        for (int f = 0; f < fact_count; ++f) {
            facts.push_back({"fact-" + std::to_string(f), "value-" + std::to_string(f),
                             FactKind::Measurement});
        }
        Scenario scenario = tiny_scenario("traj-" + std::to_string(i), facts);

        SampleState state;
        state.scenario_id = scenario.id;
        state.status = SampleStatus::Finished;
        state.final_answer = "done";
        const int calls = static_cast<int>(rng() % 41);  // 0..40
        for (int k = 1; k <= calls; ++k) {
            HitLog log;
            log.query = "q" + std::to_string(k);
            log.call_index = k;
            const int roll = static_cast<int>(rng() % 10);
            if (roll < 3) {
                log.is_compound_query = true;  // gated, never hits
            } else if (roll < 7) {
                log.hit = true;
                log.matched_fact_keys = {
                    "fact-" + std::to_string(rng() % static_cast<unsigned>(fact_count))};
            }
            state.trajectory_log.push_back(std::move(log));
        }

        Judgment judgment;
        judgment.verdict = rng() % 2 == 0 ? Verdict::Correct : Verdict::Incorrect;
        samples.push_back(compute_sample_metrics(state, scenario, judgment));
    }
    return samples;
}

}  // namespace mpw::test
