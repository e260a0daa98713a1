#include "mpw/engine.hpp"

#include "mpw/text_util.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mpw {

std::string to_string(QueryClass c) {
    switch (c) {
        case QueryClass::Atomic: return "atomic";
        case QueryClass::Compound: return "compound";
        case QueryClass::LowQuality: return "low_quality";
    }
    return "atomic";
}

namespace {

// Tokens unique to each fact key within the scenario. Shared context tokens
// (entity names, seasons, competitions) carry no signal about which fact a
// query bundles, so compound detection scores coverage of these only.
std::vector<std::unordered_set<std::string>> distinctive_key_tokens(const Scenario& scenario) {
    std::vector<std::unordered_set<std::string>> key_tokens;
    key_tokens.reserve(scenario.facts.size());
    std::unordered_map<std::string, int> counts;
    for (const auto& fact : scenario.facts) {
        key_tokens.push_back(token_set(fact.key));
        for (const auto& t : key_tokens.back()) ++counts[t];
    }
    std::vector<std::unordered_set<std::string>> distinctive(key_tokens.size());
    for (size_t i = 0; i < key_tokens.size(); ++i) {
        for (const auto& t : key_tokens[i]) {
            if (counts[t] == 1) distinctive[i].insert(t);
        }
    }
    return distinctive;
}

}  // namespace

QueryClass ScriptedEngine::classify_query(const std::string& query,
                                          const Scenario& scenario) const {
    const std::string trimmed = trim(query);
    if (trimmed.empty() || trimmed.size() > config_.low_quality_max_chars) {
        return QueryClass::LowQuality;
    }

    const std::string normalized = " " + collapse_whitespace(to_lower_ascii(trimmed)) + " ";
    const auto query_tokens = token_set(query);
    for (const auto& term : config_.compound_lexicon) {
        if (term.find(' ') != std::string::npos) {
            if (normalized.find(term) != std::string::npos) return QueryClass::Compound;
        } else if (query_tokens.count(term)) {
            return QueryClass::Compound;
        }
    }

    const auto distinctive = distinctive_key_tokens(scenario);
    int covered = 0;
    for (const auto& tokens : distinctive) {
        if (tokens.empty()) continue;
        size_t overlap = 0;
        for (const auto& t : tokens) {
            if (query_tokens.count(t)) ++overlap;
        }
        const double coverage = static_cast<double>(overlap) / static_cast<double>(tokens.size());
        if (coverage >= config_.compound_coverage_threshold) ++covered;
    }
    if (covered >= 2) return QueryClass::Compound;

    return QueryClass::Atomic;
}

std::optional<std::string> ScriptedEngine::match_fact(const std::string& query,
                                                      const Scenario& scenario) const {
    const auto query_tokens = token_set(query);
    double best = 0.0;
    double runner_up = 0.0;
    const AtomicFact* best_fact = nullptr;
    for (const auto& fact : scenario.facts) {
        const double score = jaccard(query_tokens, token_set(fact.key));
        if (score > best) {
            runner_up = best;
            best = score;
            best_fact = &fact;
        } else if (score > runner_up) {
            runner_up = score;
        }
    }
    if (!best_fact || best < config_.match_threshold) return std::nullopt;
    if (best <= runner_up) return std::nullopt;  // ties are ambiguous
    return best_fact->key;
}

Serp ScriptedEngine::truth_serp(const std::string& query, const Scenario& scenario,
                                const AtomicFact& fact) const {
    Serp serp;
    serp.search_query = query;
    serp.entries.push_back({1,
                            scenario.domain + " data report — " + fact.key,
                            "Verified records confirm " + fact.key + ": " + fact.value + ".",
                            config_.base_date.plus_days(1)});
    serp.entries.push_back({2, scenario.domain + " season briefing",
                            "Correspondents covering the " + scenario.domain +
                                " beat describe a settled picture, with the figures above "
                                "consistent across official channels.",
                            config_.base_date.plus_days(2)});
    serp.entries.push_back({3, scenario.domain + " press digest",
                            "A weekly digest rounds up commentary from the " + scenario.domain +
                                " press without adding further data points.",
                            config_.base_date.plus_days(3)});
    serp.entries.push_back({4, scenario.domain + " fan forum highlights",
                            "Forum threads debate what the latest reports mean, citing the "
                                "same primary source.",
                            config_.base_date.plus_days(4)});
    return serp;
}

Serp ScriptedEngine::background_serp(const std::string& query, const Scenario& scenario) const {
    Serp serp;
    serp.search_query = query;
    serp.entries.push_back({1, scenario.domain + " coverage overview",
                            "Outlets covering the " + scenario.domain +
                                " scene ran general coverage this week; no specific figures "
                                "were disclosed for the requested topic.",
                            config_.base_date.plus_days(1)});
    serp.entries.push_back({2, scenario.domain + " background briefing",
                            "A background briefing recaps the season so far in broad strokes "
                                "and points readers to official releases for detail.",
                            config_.base_date.plus_days(2)});
    serp.entries.push_back({3, "Analysts await fresh " + scenario.domain + " numbers",
                            "Analysts say the requested breakdown has not been published and "
                                "expect clarity after the next reporting cycle.",
                            config_.base_date.plus_days(3)});
    serp.entries.push_back({4, scenario.domain + " weekly notebook",
                            "The weekly notebook column collects minor storylines; nothing "
                                "matching the query has been confirmed.",
                            config_.base_date.plus_days(4)});
    return serp;
}

Serp ScriptedEngine::noise_serp(const std::string& query, const Scenario& scenario) const {
    Serp serp;
    serp.search_query = query;
    serp.entries.push_back({1, "Opinion: the " + scenario.domain + " debate nobody can settle",
                            "A columnist argues the question everyone keeps asking is framed "
                                "too broadly for any single source to answer.",
                            config_.base_date.plus_days(1)});
    serp.entries.push_back({2, scenario.domain + " rumor roundup",
                            "Speculation and hot takes dominate this roundup; insiders caution "
                                "that none of it is verified.",
                            config_.base_date.plus_days(2)});
    serp.entries.push_back({3, "Podcast panel spars over " + scenario.domain + " storylines",
                            "A panel discussion meanders across the topic without landing on "
                                "concrete figures or outcomes.",
                            config_.base_date.plus_days(3)});
    serp.entries.push_back({4, "Reader mailbag: " + scenario.domain + " edition",
                            "Readers trade theories in the mailbag; the editors note that "
                                "detailed breakdowns require narrower questions.",
                            config_.base_date.plus_days(4)});
    return serp;
}

EngineResult ScriptedEngine::generate(const std::string& query, const Scenario& scenario) {
    EngineResult result;
    result.log.query = query;

    const QueryClass cls = classify_query(query, scenario);
    result.log.is_compound_query = cls != QueryClass::Atomic;

    if (cls != QueryClass::Atomic) {
        result.serp = noise_serp(query, scenario);
        return result;
    }

    if (auto key = match_fact(query, scenario)) {
        result.log.hit = true;
        result.log.matched_fact_keys = {*key};
        result.serp = truth_serp(query, scenario, *scenario.find_fact(*key));
    } else {
        result.serp = background_serp(query, scenario);
    }
    return result;
}

std::vector<LeakViolation> leak_check(const Serp& serp, const HitLog& log,
                                      const Scenario& scenario) {
    std::vector<LeakViolation> violations;

    const std::string matched_value =
        log.hit && !log.matched_fact_keys.empty() && scenario.find_fact(log.matched_fact_keys[0])
            ? scenario.find_fact(log.matched_fact_keys[0])->value
            : std::string{};

    struct Forbidden {
        std::string text;
        std::string fact_key;  // empty => ground truth
    };
    std::vector<Forbidden> forbidden;
    for (const auto& fact : scenario.facts) {
        const std::string value = trim(fact.value);
        if (value.empty()) continue;
        if (log.hit && value == trim(matched_value)) continue;  // the truth entry is permitted
        forbidden.push_back({value, fact.key});
    }
    if (!log.hit) {
        const std::string gt = trim(scenario.ground_truth);
        if (!gt.empty()) forbidden.push_back({gt, {}});
    }

    for (const auto& entry : serp.entries) {
        for (const auto& f : forbidden) {
            if (contains(entry.title, f.text) || contains(entry.content, f.text)) {
                LeakViolation v;
                v.entry_id = entry.id;
                v.fact_key = f.fact_key;
                v.description = f.fact_key.empty()
                                    ? "entry " + std::to_string(entry.id) +
                                          " leaks the ground truth"
                                    : "entry " + std::to_string(entry.id) +
                                          " leaks the value of fact '" + f.fact_key + "'";
                violations.push_back(std::move(v));
            }
        }
    }
    return violations;
}

std::vector<LeakViolation> audit_serp(const Serp& serp, const HitLog& log,
                                      const Scenario& scenario) {
    std::vector<LeakViolation> violations = leak_check(serp, log, scenario);

    if (serp.entries.size() != kSerpEntryCount) {
        violations.push_back({0, {}, "serp has " + std::to_string(serp.entries.size()) +
                                         " entries, expected " +
                                         std::to_string(kSerpEntryCount)});
    }
    if (log.is_compound_query && (log.hit || !log.matched_fact_keys.empty())) {
        violations.push_back({0, {}, "compound query reported a hit"});
    }
    if (log.matched_fact_keys.size() > 1) {
        violations.push_back({0, {}, "more than one matched fact key"});
    }
    if (log.hit) {
        if (log.matched_fact_keys.size() != 1) {
            violations.push_back({0, {}, "hit without exactly one matched fact key"});
        } else if (const auto* fact = scenario.find_fact(log.matched_fact_keys[0])) {
            bool present = false;
            for (const auto& entry : serp.entries) {
                if (contains(entry.content, fact->value) || contains(entry.title, fact->value)) {
                    present = true;
                    break;
                }
            }
            if (!present) {
                violations.push_back({0, fact->key, "truth entry missing the matched value"});
            }
        } else {
            violations.push_back(
                {0, log.matched_fact_keys[0], "matched key is not a fact of the scenario"});
        }
    }
    return violations;
}

namespace {

const char* kEngineSystemPrompt = R"(You simulate a news search engine for a closed fictional world. The world is fully described by a list of atomic facts (key: value pairs). You receive the scenario question, the atomic facts, and one search query issued by an agent.

Classify the query first:
- "atomic": it targets one entity and one attribute (classification must ignore whether any fact matches).
- "compound": it bundles several entities or attributes, or expresses comparison/aggregation/filtering intent.
- treat empty or extremely long queries as compound for gating purposes.

Then decide the match: an atomic query that clearly corresponds to exactly one fact key yields hit=true with that key in matched_fact_keys (at most one element). Compound queries always yield hit=false and no keys.

Produce exactly 4 search results:
- hit=true: at least one entry must contain the matched fact's value verbatim; the other entries give background that contradicts nothing.
- atomic miss: four topical background entries that reveal no fact values.
- compound: four noisy entries of commentary or speculation that reveal no fact values and never reveal the answer to the scenario question.

Respond with one JSON object and nothing else:
{"search_query": "...", "search_result": [{"id": 1, "title": "...", "content": "...", "date": "YYYY-MM-DD"}, ...], "hit": false, "matched_fact_keys": [], "is_compound_query": false})";

}  // namespace

EngineResult LlmEngine::parse_response(const std::string& content, const std::string& query,
                                       const Scenario& scenario) const {
    EngineResult result;
    result.log.query = query;

    std::string payload = trim(content);
    // Some endpoints wrap JSON in a fenced block.
    if (payload.starts_with("```")) {
        size_t start = payload.find('\n');
        size_t end = payload.rfind("```");
        if (start != std::string::npos && end != std::string::npos && end > start) {
            payload = trim(payload.substr(start + 1, end - start - 1));
        }
    }

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(payload);
    } catch (const nlohmann::json::exception&) {
        result.ok = false;
        result.error = "engine model returned unparseable JSON";
        return result;
    }
    if (!parsed.is_object() || !parsed.contains("search_result") ||
        !parsed["search_result"].is_array()) {
        result.ok = false;
        result.error = "engine model response missing search_result";
        return result;
    }

    result.serp.search_query = parsed.value("search_query", query);
    for (const auto& e : parsed["search_result"]) {
        SerpEntry entry;
        entry.id = e.value("id", 0);
        entry.title = e.value("title", std::string{});
        entry.content = e.value("content", std::string{});
        if (auto date = CalendarDate::parse(e.value("date", std::string{}))) entry.date = *date;
        result.serp.entries.push_back(std::move(entry));
    }

    result.log.is_compound_query = parsed.value("is_compound_query", false);
    result.log.hit = parsed.value("hit", false);
    if (parsed.contains("matched_fact_keys") && parsed["matched_fact_keys"].is_array()) {
        for (const auto& k : parsed["matched_fact_keys"]) {
            if (k.is_string()) result.log.matched_fact_keys.push_back(k.get<std::string>());
        }
    }
    // Hard invariants, enforced regardless of what the model claimed.
    if (result.log.is_compound_query) {
        result.log.hit = false;
        result.log.matched_fact_keys.clear();
    }
    if (result.log.hit &&
        (result.log.matched_fact_keys.size() != 1 ||
         !scenario.has_fact(result.log.matched_fact_keys[0]))) {
        result.log.hit = false;
        result.log.matched_fact_keys.clear();
    }
    if (!result.log.hit) result.log.matched_fact_keys.clear();
    return result;
}

EngineResult LlmEngine::generate(const std::string& query, const Scenario& scenario) {
    CompletionRequest request;
    request.scenario_id = scenario.id;
    std::string user = "Scenario question:\n" + scenario.question + "\n\nAtomic facts:\n";
    for (const auto& fact : scenario.facts) {
        user += "- " + fact.key + ": " + fact.value + "\n";
    }
    user += "\nAgent query:\n" + query;
    request.messages = {{"system", kEngineSystemPrompt}, {"user", user}};

    EngineResult last;
    for (int attempt = 0; attempt < 2; ++attempt) {
        CompletionResult completion = client_.complete(request);
        if (!completion.ok) {
            EngineResult err;
            err.ok = false;
            err.error = "engine endpoint failure: " + completion.error;
            err.log.query = query;
            return err;  // retryable at the orchestrator
        }
        last = parse_response(completion.content, query, scenario);
        if (last.ok && audit_serp(last.serp, last.log, scenario).empty()) return last;
    }

    // Audited output still unusable: degrade to the deterministic templates,
    // keeping the model's gating decision when it was parseable.
    EngineResult degraded;
    degraded.log.query = query;
    degraded.log.is_compound_query = last.ok ? last.log.is_compound_query : true;
    degraded.serp = degraded.log.is_compound_query ? fallback_.noise_serp(query, scenario)
                                                   : fallback_.background_serp(query, scenario);
    return degraded;
}

}  // namespace mpw
