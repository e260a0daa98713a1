#include "mpw/judge.hpp"

#include "mpw/prompts.hpp"
#include "mpw/protocol.hpp"
#include "mpw/text_util.hpp"

namespace mpw {

std::string to_string(Verdict v) { return v == Verdict::Correct ? "Correct" : "Incorrect"; }

std::string to_string(JudgeMode m) {
    return m == JudgeMode::LlmJudge ? "llm_judge" : "exact_match";
}

nlohmann::ordered_json judgment_to_json(const Judgment& j) {
    return nlohmann::ordered_json{
        {"verdict", to_string(j.verdict)},
        {"mode", to_string(j.mode)},
        {"rationale", j.rationale},
        {"malformed", j.malformed},
        {"transport_failed", j.transport_failed},
    };
}

Judgment judgment_from_json(const nlohmann::json& j) {
    Judgment out;
    out.verdict = j.value("verdict", std::string{}) == "Correct" ? Verdict::Correct
                                                                 : Verdict::Incorrect;
    out.mode = j.value("mode", std::string{}) == "llm_judge" ? JudgeMode::LlmJudge
                                                             : JudgeMode::ExactMatch;
    out.rationale = j.value("rationale", std::string{});
    out.malformed = j.value("malformed", false);
    out.transport_failed = j.value("transport_failed", false);
    return out;
}

Judgment exact_match(const std::string& ground_truth, const std::string& prediction) {
    Judgment j;
    j.mode = JudgeMode::ExactMatch;
    const std::string a = collapse_whitespace(to_lower_ascii(ground_truth));
    const std::string b = collapse_whitespace(to_lower_ascii(prediction));
    j.verdict = a == b ? Verdict::Correct : Verdict::Incorrect;
    return j;
}

namespace {

// A valid judge reply carries <answer>Correct</answer> or
// <answer>Incorrect</answer>, nothing else in the tag.
std::optional<Verdict> extract_verdict(const std::string& content, std::string& rationale) {
    AgentAction action = parse_action(content);
    if (action.think_text) rationale = *action.think_text;
    if (action.kind != AgentAction::Kind::Answer) return std::nullopt;
    const std::string body = trim(action.answer);
    if (body == "Correct") return Verdict::Correct;
    if (body == "Incorrect") return Verdict::Incorrect;
    return std::nullopt;
}

}  // namespace

Judgment judge(const std::string& question, const std::string& ground_truth,
               const std::string& prediction, ChatClient& client, JudgeOptions options) {
    Judgment j;
    j.mode = JudgeMode::LlmJudge;

    if (trim(prediction).empty()) {
        j.rationale = "empty prediction";
        return j;
    }

    CompletionRequest request;
    request.messages = {
        {"system", prompts::kJudgeSystem},
        {"user", prompts::judge_user_prompt(question, ground_truth, prediction)},
    };

    for (int verdict_attempt = 0; verdict_attempt < 2; ++verdict_attempt) {
        CompletionResult result;
        for (int attempt = 0; attempt <= options.retry_limit; ++attempt) {
            result = client.complete(request);
            if (result.ok) break;
        }
        if (!result.ok) {
            j.transport_failed = true;
            j.rationale = "judge endpoint failure: " + result.error;
            return j;
        }
        std::string rationale;
        if (auto verdict = extract_verdict(result.content, rationale)) {
            j.verdict = *verdict;
            j.rationale = rationale;
            return j;
        }
    }
    j.malformed = true;
    j.rationale = "judge verdict malformed after retry";
    return j;
}

}  // namespace mpw
