#include "mpw/judge.hpp"

#include "support/mock_clients.hpp"

#include <doctest.h>

#include <random>

using namespace mpw;

TEST_CASE("exact_match normalizes case and whitespace") {
    CHECK(exact_match("Rúben Dias", " rúben  dias ").verdict == Verdict::Correct);
    CHECK(exact_match("44.4%", "44.4").verdict == Verdict::Incorrect);
    CHECK(exact_match("", "").verdict == Verdict::Correct);
    CHECK(exact_match("-19.9 percentage points",
                      "approximately 15-20 percentage points")
              .verdict == Verdict::Incorrect);
}

TEST_CASE("exact_match is symmetric and reflexive under normalization") {
    std::mt19937_64 rng(3);
    const std::string alphabet = "aA zZ09.%-";
    for (int i = 0; i < 300; ++i) {
        std::string a, b;
        for (size_t c = 0; c < rng() % 12; ++c) a.push_back(alphabet[rng() % alphabet.size()]);
        for (size_t c = 0; c < rng() % 12; ++c) b.push_back(alphabet[rng() % alphabet.size()]);
        CHECK(exact_match(a, a).verdict == Verdict::Correct);
        CHECK(exact_match(a, b).verdict == exact_match(b, a).verdict);
    }
}

TEST_CASE("empty predictions are judged Incorrect without a call") {
    test::FailingClient client;  // would fail loudly if contacted
    Judgment j = judge("q", "X", "", client);
    CHECK(j.verdict == Verdict::Incorrect);
    CHECK(j.mode == JudgeMode::LlmJudge);
    CHECK(client.calls() == 0);

    j = judge("q", "X", "   \n ", client);
    CHECK(j.verdict == Verdict::Incorrect);
    CHECK(client.calls() == 0);
}

TEST_CASE("well-formed verdicts are extracted with their rationale") {
    test::ScriptQueueClient client(
        {"<think>\nnames agree\n</think>\n<answer>\nCorrect\n</answer>"});
    Judgment j = judge("q", "Rúben Dias", "Rúben Dias", client);
    CHECK(j.verdict == Verdict::Correct);
    CHECK(j.rationale == "names agree");
    CHECK_FALSE(j.malformed);
    CHECK(client.calls() == 1);
}

TEST_CASE("a malformed verdict gets exactly one retry") {
    test::ScriptQueueClient client({"<answer>probably correct</answer>",
                                    "<answer>Incorrect</answer>"});
    Judgment j = judge("q", "X", "Y", client);
    CHECK(j.verdict == Verdict::Incorrect);
    CHECK_FALSE(j.malformed);
    CHECK(client.calls() == 2);
}

TEST_CASE("persistently malformed verdicts default to Incorrect with a flag") {
    test::ScriptQueueClient client({"no tags at all", "<answer>Correct.</answer>"});
    Judgment j = judge("q", "X", "X", client);
    CHECK(j.verdict == Verdict::Incorrect);
    CHECK(j.malformed);
    CHECK(client.calls() == 2);
}

TEST_CASE("transport failure after retries is recorded and defaults to Incorrect") {
    test::FailingClient client;
    JudgeOptions options;
    options.retry_limit = 2;
    Judgment j = judge("q", "X", "X", client, options);
    CHECK(j.verdict == Verdict::Incorrect);
    CHECK(j.transport_failed);
    CHECK(client.calls() == 3);
}

TEST_CASE("judgment serialization round-trips") {
    Judgment j;
    j.verdict = Verdict::Correct;
    j.mode = JudgeMode::LlmJudge;
    j.rationale = "semantics match";
    Judgment back = judgment_from_json(judgment_to_json(j));
    CHECK(back.verdict == j.verdict);
    CHECK(back.mode == j.mode);
    CHECK(back.rationale == j.rationale);
    CHECK_FALSE(back.malformed);
}
