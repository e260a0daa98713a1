#pragma once

#include "mpw/chat_client.hpp"
#include "mpw/scenario.hpp"
#include "mpw/serp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mpw {

enum class QueryClass { Atomic, Compound, LowQuality };

std::string to_string(QueryClass c);

struct EngineConfig {
    // Minimum Jaccard similarity between query tokens and a fact key's
    // tokens for a match; the winner must also strictly beat the runner-up.
    double match_threshold = 0.6;
    // A query is compound when it covers the distinctive tokens of at least
    // two fact keys at this ratio, or contains a lexicon term.
    double compound_coverage_threshold = 0.4;
    std::size_t low_quality_max_chars = 512;
    // Single words match as query tokens; entries with spaces match as
    // substrings of the normalized query.
    std::vector<std::string> compound_lexicon = {
        "compare", "compared", "comparison", "difference", "differences",
        "versus",  "vs",       "most",       "least",      "higher",
        "highest", "lower",    "lowest",     "total",      "combined",
        "aggregate",
    };
    CalendarDate base_date{2027, 6, 1};
};

struct EngineResult {
    bool ok = true;
    std::string error;  // retryable transport error when !ok
    Serp serp;
    HitLog log;  // call_index left 0; the orchestrator assigns it
};

class SearchEngine {
public:
    virtual ~SearchEngine() = default;
    virtual EngineResult generate(const std::string& query, const Scenario& scenario) = 0;
};

// Deterministic rule-based backend: token-overlap classification and
// matching, templated SERPs. generate() is a pure function of
// (query, scenario) and never fails.
class ScriptedEngine final : public SearchEngine {
public:
    ScriptedEngine() = default;
    explicit ScriptedEngine(EngineConfig config) : config_(std::move(config)) {}

    QueryClass classify_query(const std::string& query, const Scenario& scenario) const;
    std::optional<std::string> match_fact(const std::string& query,
                                          const Scenario& scenario) const;
    EngineResult generate(const std::string& query, const Scenario& scenario) override;

    // Regime templates, shared with the LLM backend's degraded path.
    Serp background_serp(const std::string& query, const Scenario& scenario) const;  // regime 2
    Serp noise_serp(const std::string& query, const Scenario& scenario) const;       // regime 3

    const EngineConfig& config() const { return config_; }

private:
    Serp truth_serp(const std::string& query, const Scenario& scenario,
                    const AtomicFact& fact) const;  // regime 1

    EngineConfig config_;
};

struct LeakViolation {
    int entry_id = 0;
    std::string fact_key;  // empty when the leaked string is the ground truth
    std::string description;
};

// Scans entry titles and contents for strings the SERP's regime forbids:
// with hit=true every fact value except the matched one; with hit=false all
// fact values plus the ground truth. The echoed search_query field is the
// agent's own text and is not scanned.
std::vector<LeakViolation> leak_check(const Serp& serp, const HitLog& log,
                                      const Scenario& scenario);

// Full audit used to gate LLM-backend output: leak_check plus structural
// checks (entry count, matched key exists, truth entry present on a hit).
std::vector<LeakViolation> audit_serp(const Serp& serp, const HitLog& log,
                                      const Scenario& scenario);

// LLM-backed engine speaking an OpenAI-compatible endpoint. Outputs failing
// the audit are regenerated once, then degraded to the scripted regime-2/3
// templates. Transport failures surface as retryable EngineResult errors.
class LlmEngine final : public SearchEngine {
public:
    LlmEngine(ChatClient& client, EngineConfig config = {})
        : client_(client), fallback_(config) {}

    EngineResult generate(const std::string& query, const Scenario& scenario) override;

private:
    EngineResult parse_response(const std::string& content, const std::string& query,
                                const Scenario& scenario) const;

    ChatClient& client_;
    ScriptedEngine fallback_;
};

}  // namespace mpw
