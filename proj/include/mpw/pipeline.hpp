#pragma once

#include "mpw/chat_client.hpp"
#include "mpw/judge.hpp"
#include "mpw/scenario.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpw {

// Domain label -> entity names; order preserved for deterministic sampling.
struct EntityPool {
    std::vector<std::pair<std::string, std::vector<std::string>>> domains;

    const std::vector<std::string>* find(const std::string& domain) const;
};

EntityPool load_entity_pool(const std::string& path);  // JSON object {domain: [names]}

struct EntityPair {
    std::string domain;
    std::string a;
    std::string b;
};

// Quota-balanced in-domain pair sampling: every domain gets an equal share
// of `total` (within one), pairs are distinct and drawn uniformly within the
// domain, and domains short on distinct pairs are compensated round-robin
// from the domains with the most remaining capacity. Seeded, deterministic.
std::vector<EntityPair> sample_pairs(const EntityPool& pool, int total, std::uint64_t seed);

struct RankedQuestion {
    int rank = 0;  // 1..4, increasing structural complexity
    std::string question;
};

class WorldModel {
public:
    virtual ~WorldModel() = default;
    // Four questions of increasing complexity, ranks 1..4 exactly once each.
    // nullopt after one failed regeneration (skip-with-log).
    virtual std::optional<std::vector<RankedQuestion>> generate_questions(
        const EntityPair& pair) = 0;
};

struct LawSet {
    std::vector<AtomicFact> facts;
    std::string ground_truth;
};

class LawModel {
public:
    virtual ~LawModel() = default;
    // Facts plus the model's own derivation of the answer; a failed
    // self-check is regenerated once, then the question is rejected.
    virtual std::optional<LawSet> generate_laws(const std::string& question,
                                                const EntityPair& pair) = 0;
};

struct AuditResult {
    bool stage1_pass = false;            // non-contradiction + plausibility
    std::array<bool, 3> stage2_votes{};  // answer-from-facts vs ground truth
    bool accepted = false;
    bool indeterminate = false;  // endpoint failure; scenario held out
    std::string notes;
};

class Auditor {
public:
    virtual ~Auditor() = default;
    virtual AuditResult audit(const Scenario& scenario) = 0;
};

// Deterministic answer recount used by the mock law model and mock auditor:
// measurement facts mentioning exactly one of the paired entities contribute
// their integer values to that entity's sum; the larger sum wins, ties going
// to the first-listed entity. nullopt when neither entity accumulates value.
std::optional<std::string> solve_by_entity_totals(const Scenario& scenario);

// Deterministic mock backends used for offline generation and testing.
class MockWorldModel final : public WorldModel {
public:
    explicit MockWorldModel(std::uint64_t seed) : seed_(seed) {}
    std::optional<std::vector<RankedQuestion>> generate_questions(const EntityPair& pair) override;

private:
    std::uint64_t seed_;
};

class MockLawModel final : public LawModel {
public:
    explicit MockLawModel(std::uint64_t seed) : seed_(seed) {}
    std::optional<LawSet> generate_laws(const std::string& question,
                                        const EntityPair& pair) override;

private:
    std::uint64_t seed_;
};

class MockAuditor final : public Auditor {
public:
    AuditResult audit(const Scenario& scenario) override;
};

// LLM-backed variants; prompts live in pipeline.cpp.
class LlmWorldModel final : public WorldModel {
public:
    explicit LlmWorldModel(ChatClient& client) : client_(client) {}
    std::optional<std::vector<RankedQuestion>> generate_questions(const EntityPair& pair) override;

private:
    ChatClient& client_;
};

class LlmLawModel final : public LawModel {
public:
    explicit LlmLawModel(ChatClient& client) : client_(client) {}
    std::optional<LawSet> generate_laws(const std::string& question,
                                        const EntityPair& pair) override;

private:
    ChatClient& client_;
};

class LlmAuditor final : public Auditor {
public:
    LlmAuditor(ChatClient& auditor_client, ChatClient& judge_client)
        : auditor_(auditor_client), judge_(judge_client) {}
    AuditResult audit(const Scenario& scenario) override;

private:
    ChatClient& auditor_;
    ChatClient& judge_;
};

struct GenerationOutcome {
    std::vector<Scenario> scenarios;
    std::vector<std::string> skipped;  // one note per dropped pair/question
};

// Pairs -> four questions each -> laws -> validated scenarios, stopping at
// `count`. Scenario ids are sequential and deterministic under a fixed seed.
GenerationOutcome generate_scenarios(const EntityPool& pool, int count, std::uint64_t seed,
                                     WorldModel& world, LawModel& law);

// Mock-backed end-to-end corpus synthesis.
std::vector<Scenario> synthesize_corpus(const EntityPool& pool, int count, std::uint64_t seed);

// A small built-in pool for tests and offline smoke runs.
EntityPool builtin_entity_pool();

struct AuditAccounting {
    int generated = 0;
    int accepted = 0;
    int rejected = 0;
    int indeterminate = 0;
};

// Audits every scenario; the accounting always satisfies
// accepted + rejected + indeterminate == generated.
AuditAccounting audit_corpus(const std::vector<Scenario>& scenarios, Auditor& auditor,
                             std::vector<Scenario>& accepted_out,
                             std::vector<AuditResult>& results_out);

}  // namespace mpw
