#pragma once

#include "mpw/chat_client.hpp"
#include "mpw/scenario.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace mpw {

// Id -> scenario lookup shared by the scripted agents. The referenced
// scenarios must outlive the index.
class ScenarioIndex {
public:
    explicit ScenarioIndex(const std::vector<Scenario>& scenarios);
    const Scenario* find(const std::string& id) const;
    const Scenario& require(const std::string& id) const;

private:
    std::unordered_map<std::string, const Scenario*> by_id_;
};

// Reference agent: queries every fact key verbatim, one per turn, then
// answers the ground truth. Stateless; turn position is recovered from the
// number of assistant messages in the request window.
class OracleFactAgent final : public ChatClient {
public:
    explicit OracleFactAgent(const ScenarioIndex& index) : index_(index) {}
    CompletionResult complete(const CompletionRequest& request) override;

private:
    const ScenarioIndex& index_;
};

// Anti-shortcut probe: issues the scenario's full question text as a single
// query, then gives up with a non-answer.
class QuestionOnlyAgent final : public ChatClient {
public:
    explicit QuestionOnlyAgent(const ScenarioIndex& index) : index_(index) {}
    CompletionResult complete(const CompletionRequest& request) override;

private:
    const ScenarioIndex& index_;
};

// Adversarial agent that never answers; exercises the turn budget.
class AlwaysToolAgent final : public ChatClient {
public:
    CompletionResult complete(const CompletionRequest& request) override;
};

// Answers immediately with the ground truth (or a fixed text when
// constructed with one); used for Setting A style runs and smoke tests.
class ImmediateAnswerAgent final : public ChatClient {
public:
    explicit ImmediateAnswerAgent(const ScenarioIndex& index) : index_(&index) {}
    explicit ImmediateAnswerAgent(std::string fixed_answer)
        : fixed_answer_(std::move(fixed_answer)) {}
    CompletionResult complete(const CompletionRequest& request) override;

private:
    const ScenarioIndex* index_ = nullptr;
    std::string fixed_answer_;
};

}  // namespace mpw
