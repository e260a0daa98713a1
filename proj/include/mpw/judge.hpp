#pragma once

#include "mpw/chat_client.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace mpw {

enum class Verdict { Correct, Incorrect };
enum class JudgeMode { LlmJudge, ExactMatch };

struct Judgment {
    Verdict verdict = Verdict::Incorrect;
    std::string rationale;
    JudgeMode mode = JudgeMode::ExactMatch;
    bool malformed = false;         // judge output never produced a valid verdict
    bool transport_failed = false;  // endpoint unreachable; verdict defaulted

    bool pass1() const { return verdict == Verdict::Correct; }
};

std::string to_string(Verdict v);
std::string to_string(JudgeMode m);

nlohmann::ordered_json judgment_to_json(const Judgment& j);
Judgment judgment_from_json(const nlohmann::json& j);

// Correct iff the two strings are equal after ASCII casefolding and
// whitespace collapsing. Deterministic fallback for offline runs; stricter
// than the judge on multi-part answers by design.
Judgment exact_match(const std::string& ground_truth, const std::string& prediction);

struct JudgeOptions {
    int retry_limit = 3;  // transport retries; malformed verdicts get one retry
};

// LLM-as-judge pass over one prediction. Empty predictions are Incorrect
// without a call; a malformed verdict is retried once and then defaults to
// Incorrect with the malformed flag set.
Judgment judge(const std::string& question, const std::string& ground_truth,
               const std::string& prediction, ChatClient& client, JudgeOptions options = {});

}  // namespace mpw
