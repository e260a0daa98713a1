#include "mpw/orchestrator.hpp"

#include "mpw/agents.hpp"
#include "support/fixtures.hpp"
#include "support/mock_clients.hpp"

#include <doctest.h>

using namespace mpw;

namespace {

std::vector<Scenario> small_corpus(int count, std::uint64_t seed = 99) {
    return synthesize_corpus(builtin_entity_pool(), count, seed);
}

RunConfig scripted_config(Setting setting = Setting::C) {
    RunConfig config;
    config.setting = setting;
    return config;
}

}  // namespace

TEST_CASE("truncate_context keeps the system message plus the longest fitting suffix") {
    std::vector<ChatMessage> messages = {{"system", std::string(10, 's')}};
    for (int i = 0; i < 9; ++i) messages.push_back({"user", std::string(10, 'a' + i)});

    SUBCASE("identity when everything fits") {
        auto window = truncate_context(messages, 1000);
        CHECK(window == messages);
    }
    SUBCASE("system plus last three") {
        auto window = truncate_context(messages, 40);
        REQUIRE(window.size() == 4);
        CHECK(window[0].role == "system");
        CHECK(window[1] == messages[7]);
        CHECK(window[3] == messages[9]);
    }
    SUBCASE("messages are never split") {
        auto window = truncate_context(messages, 45);  // room for system + 3.5 messages
        CHECK(window.size() == 4);
    }
    SUBCASE("oversized system message is a configuration error") {
        CHECK_THROWS_AS(truncate_context(messages, 5), ConfigError);
    }
    SUBCASE("context must start with a system message") {
        std::vector<ChatMessage> no_system = {{"user", "hi"}};
        CHECK_THROWS_AS(truncate_context(no_system, 100), ConfigError);
    }
}

TEST_CASE("immediate answer finishes in one turn with no tool calls") {
    const auto corpus = small_corpus(1);
    const ScenarioIndex index(corpus);
    ImmediateAnswerAgent agent(index);
    ScriptedEngine engine;
    SampleState state = run_sample(corpus[0], agent, &engine, scripted_config());
    CHECK(state.status == SampleStatus::Finished);
    CHECK(state.assistant_turns == 1);
    CHECK(state.trajectory_log.empty());
    REQUIRE(state.final_answer.has_value());
    CHECK(*state.final_answer == corpus[0].ground_truth);
}

TEST_CASE("adversarial agent stops at exactly the turn budget") {
    const auto corpus = small_corpus(1);
    AlwaysToolAgent agent;
    ScriptedEngine engine;
    SampleState state = run_sample(corpus[0], agent, &engine, scripted_config());
    CHECK(state.status == SampleStatus::MaxTurnsReached);
    CHECK(state.assistant_turns == 32);
    CHECK(state.trajectory_log.size() == 32);
}

TEST_CASE("empty completions exhaust retries into EmptyResponse") {
    const auto corpus = small_corpus(1);
    test::EmptyClient agent;
    ScriptedEngine engine;
    RunConfig config = scripted_config();
    config.retry_limit = 3;
    SampleState state = run_sample(corpus[0], agent, &engine, config);
    CHECK(state.status == SampleStatus::EmptyResponse);
    CHECK(agent.calls() == 4);  // retry_limit + 1 attempts
    CHECK(state.assistant_turns == 0);
}

TEST_CASE("transport failures exhaust retries into ApiError") {
    const auto corpus = small_corpus(1);
    test::FailingClient agent;
    ScriptedEngine engine;
    SampleState state = run_sample(corpus[0], agent, &engine, scripted_config());
    CHECK(state.status == SampleStatus::ApiError);
    CHECK(agent.calls() == 4);
}

TEST_CASE("untagged output draws a reminder and the run continues") {
    const auto corpus = small_corpus(1);
    test::ScriptQueueClient agent({"thinking out loud without tags",
                                   "<answer>final</answer>"});
    ScriptedEngine engine;
    RunConfig config = scripted_config();
    SampleState state = run_sample(corpus[0], agent, &engine, config);
    CHECK(state.status == SampleStatus::Finished);
    CHECK(state.assistant_turns == 2);
    bool reminder_seen = false;
    for (const auto& m : state.full_trajectory) {
        reminder_seen = reminder_seen || (m.role == "user" && m.content == config.reminder_text);
    }
    CHECK(reminder_seen);
}

TEST_CASE("oracle loop: trajectory log is reconstructible from the full trajectory") {
    const auto corpus = small_corpus(3);
    const ScenarioIndex index(corpus);
    OracleFactAgent agent(index);
    ScriptedEngine engine;
    for (const auto& scenario : corpus) {
        SampleState state = run_sample(scenario, agent, &engine, scripted_config());
        REQUIRE(state.status == SampleStatus::Finished);
        CHECK(state.full_trajectory.size() >= state.context_messages.size());

        std::vector<std::string> replayed;
        for (const auto& m : state.full_trajectory) {
            if (m.role != "assistant") continue;
            AgentAction action = parse_action(m.content);
            if (action.kind == AgentAction::Kind::ToolCall) {
                replayed.push_back(action.tool_call.arguments["query"].get<std::string>());
            }
        }
        REQUIRE(replayed.size() == state.trajectory_log.size());
        for (size_t i = 0; i < replayed.size(); ++i) {
            CHECK(replayed[i] == state.trajectory_log[i].query);
            CHECK(state.trajectory_log[i].call_index == static_cast<int>(i) + 1);
        }
    }
}

TEST_CASE("context truncation keeps runs going and never touches the full trajectory") {
    const auto corpus = small_corpus(1, 123);
    AlwaysToolAgent agent;
    ScriptedEngine engine;
    RunConfig config = scripted_config();
    config.context_char_limit = build_prompts(Setting::C, corpus[0]).system_prompt.size() + 4000;
    SampleState state = run_sample(corpus[0], agent, &engine, config);
    CHECK(state.status == SampleStatus::MaxTurnsReached);
    CHECK(state.full_trajectory.size() > state.context_messages.size());
    // 2 initial + 32 assistant + 32 tool responses
    CHECK(state.full_trajectory.size() == 66);
}

TEST_CASE("setting A runs exactly one completion and exposes no tools") {
    const auto corpus = small_corpus(2);
    const ScenarioIndex index(corpus);
    RunConfig config = scripted_config(Setting::A);

    SUBCASE("answer finishes") {
        ImmediateAnswerAgent agent(index);
        SampleState state = run_sample(corpus[0], agent, nullptr, config);
        CHECK(state.status == SampleStatus::Finished);
        CHECK(state.assistant_turns == 1);
    }
    SUBCASE("tool call is a violation and the run ends without an answer") {
        AlwaysToolAgent agent;
        SampleState state = run_sample(corpus[0], agent, nullptr, config);
        CHECK(state.status == SampleStatus::EmptyResponse);
        CHECK(state.assistant_turns == 1);
        CHECK(state.trajectory_log.empty());
        REQUIRE(state.protocol_violations.size() == 1);
        CHECK(state.protocol_violations[0].find("Setting A") != std::string::npos);
    }
    SUBCASE("settings B/C refuse to run without an engine") {
        ImmediateAnswerAgent agent(index);
        CHECK_THROWS_AS(run_sample(corpus[0], agent, nullptr, scripted_config()), ConfigError);
    }
}

TEST_CASE("engine transport failures become ApiError after retries") {
    const auto corpus = small_corpus(1);
    const ScenarioIndex index(corpus);
    OracleFactAgent agent(index);
    test::FailingClient failing;
    LlmEngine engine(failing);
    SampleState state = run_sample(corpus[0], agent, &engine, scripted_config());
    CHECK(state.status == SampleStatus::ApiError);
}

TEST_CASE("run_benchmark: concurrency levels agree with serial execution") {
    const auto corpus = small_corpus(20, 7);
    const ScenarioIndex index(corpus);
    OracleFactAgent agent(index);
    ScriptedEngine engine;

    RunConfig serial = scripted_config();
    serial.max_concurrent_turns = 1;
    RunConfig concurrent = scripted_config();
    concurrent.max_concurrent_turns = 8;

    BenchmarkResult a = run_benchmark(corpus, agent, &engine, serial);
    BenchmarkResult b = run_benchmark(corpus, agent, &engine, concurrent);
    CHECK(a.max_in_flight_turns <= 1);
    CHECK(b.max_in_flight_turns <= 8);
    REQUIRE(a.states.size() == corpus.size());
    REQUIRE(b.states.size() == corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(sample_record_to_json(a.states[i]).dump() ==
              sample_record_to_json(b.states[i]).dump());
        CHECK(a.states[i].status == SampleStatus::Finished);
    }
}

TEST_CASE("run_benchmark: one failing sample does not poison the batch") {
    const auto corpus = small_corpus(10, 31);
    const ScenarioIndex index(corpus);
    OracleFactAgent oracle(index);
    test::SelectiveFailClient agent(oracle, corpus[4].id);
    ScriptedEngine engine;
    BenchmarkResult result = run_benchmark(corpus, agent, &engine, scripted_config());
    int finished = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        if (i == 4) {
            CHECK(result.states[i].status == SampleStatus::ApiError);
        } else {
            CHECK(result.states[i].status == SampleStatus::Finished);
            ++finished;
        }
    }
    CHECK(finished == 9);
}

TEST_CASE("run_benchmark on an empty corpus") {
    ScriptedEngine engine;
    test::EmptyClient agent;
    BenchmarkResult result = run_benchmark({}, agent, &engine, scripted_config());
    CHECK(result.states.empty());
}

TEST_CASE("sample records round-trip through the wire format") {
    const auto corpus = small_corpus(2, 55);
    const ScenarioIndex index(corpus);
    OracleFactAgent agent(index);
    ScriptedEngine engine;
    SampleState state = run_sample(corpus[0], agent, &engine, scripted_config());
    SampleState reloaded = sample_record_from_json(sample_record_to_json(state));
    CHECK(reloaded.scenario_id == state.scenario_id);
    CHECK(reloaded.status == state.status);
    CHECK(reloaded.final_answer == state.final_answer);
    CHECK(reloaded.assistant_turns == state.assistant_turns);
    CHECK(reloaded.trajectory_log == state.trajectory_log);
    CHECK(reloaded.full_trajectory == state.full_trajectory);
}
