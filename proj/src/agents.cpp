#include "mpw/agents.hpp"

#include "mpw/jsonl.hpp"

#include <nlohmann/json.hpp>

namespace mpw {

ScenarioIndex::ScenarioIndex(const std::vector<Scenario>& scenarios) {
    for (const auto& s : scenarios) by_id_[s.id] = &s;
}

const Scenario* ScenarioIndex::find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
}

const Scenario& ScenarioIndex::require(const std::string& id) const {
    const Scenario* s = find(id);
    if (!s) throw IntegrityError("scripted agent: unknown scenario id '" + id + "'");
    return *s;
}

namespace {

size_t assistant_turns_so_far(const CompletionRequest& request) {
    size_t n = 0;
    for (const auto& m : request.messages) {
        if (m.role == "assistant") ++n;
    }
    return n;
}

std::string tool_call_message(const std::string& think, const std::string& query) {
    nlohmann::ordered_json call = {
        {"name", "web_search"},
        {"arguments", {{"query", query}}},
    };
    return "<think>\n" + think + "\n</think>\n<tool_call>\n" + call.dump(2) + "\n</tool_call>";
}

std::string answer_message(const std::string& think, const std::string& answer) {
    return "<think>\n" + think + "\n</think>\n<answer>\n" + answer + "\n</answer>";
}

}  // namespace

CompletionResult OracleFactAgent::complete(const CompletionRequest& request) {
    const Scenario& scenario = index_.require(request.scenario_id);
    const size_t turn = assistant_turns_so_far(request);
    if (turn < scenario.facts.size()) {
        return CompletionResult::success(tool_call_message(
            "Collecting fact " + std::to_string(turn + 1) + " of " +
                std::to_string(scenario.facts.size()) + ".",
            scenario.facts[turn].key));
    }
    return CompletionResult::success(
        answer_message("All facts collected; answering.", scenario.ground_truth));
}

CompletionResult QuestionOnlyAgent::complete(const CompletionRequest& request) {
    const Scenario& scenario = index_.require(request.scenario_id);
    if (assistant_turns_so_far(request) == 0) {
        return CompletionResult::success(
            tool_call_message("Searching the question as-is.", scenario.question));
    }
    return CompletionResult::success(
        answer_message("The search gave nothing actionable.", "No verifiable answer found."));
}

CompletionResult AlwaysToolAgent::complete(const CompletionRequest& request) {
    const size_t turn = assistant_turns_so_far(request);
    return CompletionResult::success(tool_call_message(
        "Still looking.", "latest update number " + std::to_string(turn + 1)));
}

CompletionResult ImmediateAnswerAgent::complete(const CompletionRequest& request) {
    std::string answer = fixed_answer_;
    if (index_) answer = index_->require(request.scenario_id).ground_truth;
    return CompletionResult::success(answer_message("Answering directly.", answer));
}

}  // namespace mpw
