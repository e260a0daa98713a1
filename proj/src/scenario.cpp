#include "mpw/scenario.hpp"

#include "mpw/text_util.hpp"

#include <algorithm>
#include <unordered_set>

namespace mpw {

const AtomicFact* Scenario::find_fact(std::string_view key) const {
    for (const auto& f : facts) {
        if (f.key == key) return &f;
    }
    return nullptr;
}

bool Scenario::has_fact(std::string_view key) const { return find_fact(key) != nullptr; }

Tier tier_of(std::size_t fact_count) {
    if (fact_count == 0) throw ValidationError("invalid scenario: fact count is 0");
    if (fact_count <= 5) return Tier::Easy;
    if (fact_count <= 10) return Tier::Mid;
    return Tier::Hard;
}

std::string to_string(Tier tier) {
    switch (tier) {
        case Tier::Easy: return "Easy";
        case Tier::Mid: return "Mid";
        case Tier::Hard: return "Hard";
    }
    return "Easy";
}

std::string to_string(FactKind kind) {
    return kind == FactKind::RuleConvention ? "rule" : "measurement";
}

namespace {

FactKind fact_kind_from_string(const std::string& s, const std::string& scenario_id) {
    if (s == "measurement") return FactKind::Measurement;
    if (s == "rule") return FactKind::RuleConvention;
    throw ValidationError("scenario " + scenario_id + ": unknown fact kind '" + s + "'");
}

std::string require_string(const nlohmann::json& record, const char* field,
                           const std::string& context) {
    if (!record.contains(field) || !record[field].is_string()) {
        throw ValidationError(context + ": missing or non-string field '" + field + "'");
    }
    return record[field].get<std::string>();
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& record) {
    if (!record.is_object()) throw ValidationError("scenario record is not an object");

    Scenario s;
    s.id = require_string(record, "id", "scenario record");
    const std::string ctx = "scenario " + s.id;

    s.domain = require_string(record, "domain", ctx);
    if (s.domain.empty()) throw ValidationError(ctx + ": empty domain");

    if (!record.contains("entity_pair") || !record["entity_pair"].is_array() ||
        record["entity_pair"].size() != 2) {
        throw ValidationError(ctx + ": entity_pair must be an array of 2 strings");
    }
    for (size_t i = 0; i < 2; ++i) {
        if (!record["entity_pair"][i].is_string()) {
            throw ValidationError(ctx + ": entity_pair must be an array of 2 strings");
        }
        s.entity_pair[i] = record["entity_pair"][i].get<std::string>();
    }

    s.question = require_string(record, "question", ctx);
    if (trim(s.question).empty()) throw ValidationError(ctx + ": empty question");

    s.ground_truth = require_string(record, "ground_truth", ctx);
    if (trim(s.ground_truth).empty()) throw ValidationError(ctx + ": empty ground_truth");

    if (!record.contains("atomic_facts") || !record["atomic_facts"].is_array()) {
        throw ValidationError(ctx + ": missing atomic_facts array");
    }
    std::unordered_set<std::string> seen;
    for (const auto& f : record["atomic_facts"]) {
        AtomicFact fact;
        fact.key = trim(require_string(f, "key", ctx));
        fact.value = require_string(f, "value", ctx);
        fact.kind = f.contains("kind")
                        ? fact_kind_from_string(require_string(f, "kind", ctx), s.id)
                        : FactKind::Measurement;
        if (fact.key.empty()) throw ValidationError(ctx + ": empty fact key");
        if (fact.value.empty()) throw ValidationError(ctx + ": empty value for fact '" + fact.key + "'");
        if (!seen.insert(fact.key).second) {
            throw ValidationError(ctx + ": duplicate fact key '" + fact.key + "'");
        }
        s.facts.push_back(std::move(fact));
    }
    if (s.facts.empty()) throw ValidationError(ctx + ": invalid scenario: no atomic facts");

    s.tier = tier_of(s.facts.size());
    return s;
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json facts = nlohmann::ordered_json::array();
    for (const auto& f : s.facts) {
        facts.push_back({{"key", f.key}, {"value", f.value}, {"kind", to_string(f.kind)}});
    }
    return nlohmann::ordered_json{
        {"id", s.id},
        {"domain", s.domain},
        {"entity_pair", {s.entity_pair[0], s.entity_pair[1]}},
        {"question", s.question},
        {"atomic_facts", std::move(facts)},
        {"ground_truth", s.ground_truth},
    };
}

std::vector<Scenario> load_scenarios(const std::string& path) {
    std::vector<Scenario> scenarios;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json& record) {
        try {
            scenarios.push_back(scenario_from_json(record));
        } catch (const ValidationError& e) {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    });
    return scenarios;
}

void save_scenarios(const std::string& path, const std::vector<Scenario>& scenarios) {
    std::vector<std::string> lines;
    lines.reserve(scenarios.size());
    for (const auto& s : scenarios) lines.push_back(scenario_to_json(s).dump());
    write_jsonl(path, lines);
}

std::vector<std::string> validate_question_principles(const Scenario& s) {
    std::vector<std::string> warnings;
    if (s.facts.size() < 2) {
        warnings.push_back("scenario " + s.id +
                           ": only " + std::to_string(s.facts.size()) +
                           " atomic fact(s); weak multi-fact dependency");
    }
    const std::string gt = trim(s.ground_truth);
    const bool is_entity_name = gt == s.entity_pair[0] || gt == s.entity_pair[1];
    if (!gt.empty() && !is_entity_name && contains(s.question, gt)) {
        warnings.push_back("scenario " + s.id +
                           ": ground truth appears verbatim in question (leakage)");
    }
    return warnings;
}

const std::vector<std::string>& known_domains() {
    static const std::vector<std::string> domains = {
        "LaLiga Player",  "Serie Player",   "Bundesliga Player", "Ligue1 Player",
        "Premier Player", "Football Team",  "F1 Player",         "NBA Player",
        "Singer",         "Actor",          "Game Company",      "LOL Player",
        "Camera Brand",   "Computer Brand", "Phone Brand",       "Fashion Brand",
        "Beauty Brand",   "Car Brand",      "Tech Company",
    };
    return domains;
}

}  // namespace mpw
