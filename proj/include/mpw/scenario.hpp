#pragma once

#include "mpw/jsonl.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mpw {

enum class FactKind { Measurement, RuleConvention };

enum class Tier { Easy, Mid, Hard };

// One minimal information unit of a scenario's world: a natural-language
// description (key) mapped to its unique instantiation (value).
struct AtomicFact {
    std::string key;
    std::string value;
    FactKind kind = FactKind::Measurement;

    bool operator==(const AtomicFact&) const = default;
};

// A question with the fact set that governs it and the unique answer those
// facts determine. Immutable after load; safe to share across threads.
struct Scenario {
    std::string id;
    std::string domain;
    std::array<std::string, 2> entity_pair;
    std::string question;
    std::vector<AtomicFact> facts;  // authoring order preserved
    std::string ground_truth;
    Tier tier = Tier::Easy;  // derived from facts.size(), never authoritative

    const AtomicFact* find_fact(std::string_view key) const;
    bool has_fact(std::string_view key) const;

    bool operator==(const Scenario&) const = default;
};

// Easy 1-5, Mid 6-10, Hard >= 11. fact_count == 0 is an invalid scenario.
Tier tier_of(std::size_t fact_count);

std::string to_string(Tier tier);
std::string to_string(FactKind kind);

// Record schema: {id, domain, entity_pair:[2], question,
// atomic_facts:[{key,value,kind}], ground_truth}; kind in {"measurement","rule"}.
Scenario scenario_from_json(const nlohmann::json& record);
nlohmann::ordered_json scenario_to_json(const Scenario& s);

std::vector<Scenario> load_scenarios(const std::string& path);
void save_scenarios(const std::string& path, const std::vector<Scenario>& scenarios);

// Advisory checks: weak multi-fact dependency (|facts| < 2) and verbatim
// ground-truth leakage into the question. Entity-pair names are exempt from
// the leak check since the answer is often one of the paired entities.
std::vector<std::string> validate_question_principles(const Scenario& s);

// The 19 category labels used by the bundled entity pool and reports.
const std::vector<std::string>& known_domains();

}  // namespace mpw
