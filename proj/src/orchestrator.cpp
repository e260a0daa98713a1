#include "mpw/orchestrator.hpp"

#include "mpw/jsonl.hpp"
#include "mpw/text_util.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace mpw {

std::string to_string(SampleStatus status) {
    switch (status) {
        case SampleStatus::Running: return "running";
        case SampleStatus::Finished: return "finished";
        case SampleStatus::MaxTurnsReached: return "max_turns_reached";
        case SampleStatus::ApiError: return "api_error";
        case SampleStatus::EmptyResponse: return "empty_response";
    }
    return "running";
}

std::optional<SampleStatus> sample_status_from_string(std::string_view s) {
    if (s == "running") return SampleStatus::Running;
    if (s == "finished") return SampleStatus::Finished;
    if (s == "max_turns_reached") return SampleStatus::MaxTurnsReached;
    if (s == "api_error") return SampleStatus::ApiError;
    if (s == "empty_response") return SampleStatus::EmptyResponse;
    return std::nullopt;
}

std::vector<ChatMessage> truncate_context(const std::vector<ChatMessage>& messages,
                                          std::size_t limit) {
    if (messages.empty() || messages.front().role != "system") {
        throw ConfigError("context must begin with a system message");
    }
    const std::size_t system_size = messages.front().content.size();
    if (system_size > limit) {
        throw ConfigError("system message alone exceeds the context limit");
    }
    std::size_t budget = limit - system_size;
    size_t start = messages.size();
    std::size_t used = 0;
    while (start > 1) {
        const std::size_t size = messages[start - 1].content.size();
        if (used + size > budget) break;
        used += size;
        --start;
    }
    std::vector<ChatMessage> window;
    window.push_back(messages.front());
    window.insert(window.end(), messages.begin() + static_cast<long>(start), messages.end());
    return window;
}

namespace {

struct TurnContext {
    ChatClient& agent;
    SearchEngine* engine;
    const RunConfig& config;
};

void append_message(SampleState& state, std::string role, std::string content,
                    std::size_t limit) {
    state.full_trajectory.push_back({role, content});
    state.context_messages.push_back({std::move(role), std::move(content)});
    std::size_t total = 0;
    for (const auto& m : state.context_messages) total += m.content.size();
    if (total > limit) {
        state.context_messages = truncate_context(state.context_messages, limit);
    }
}

enum class AttemptKind { Got, Empty, Transport };

// retry_limit + 1 attempts; the terminal status after exhaustion depends on
// the kind of the last failure (transport -> ApiError, blank -> EmptyResponse).
AttemptKind request_completion(SampleState& state, TurnContext& ctx, std::string& content) {
    AttemptKind last = AttemptKind::Empty;
    for (int attempt = 0; attempt <= ctx.config.retry_limit; ++attempt) {
        CompletionRequest request{state.context_messages, state.scenario_id};
        CompletionResult result = ctx.agent.complete(request);
        if (!result.ok) {
            last = AttemptKind::Transport;
            continue;
        }
        if (trim(result.content).empty()) {
            last = AttemptKind::Empty;
            continue;
        }
        content = std::move(result.content);
        return AttemptKind::Got;
    }
    return last;
}

void handle_tool_call(SampleState& state, TurnContext& ctx, const Scenario& scenario,
                      const ToolCallRequest& call) {
    if (call.name != "web_search") {
        state.protocol_violations.push_back("unsupported tool '" + call.name + "'");
        append_message(state, "user", ctx.config.reminder_text, ctx.config.context_char_limit);
        return;
    }
    if (!call.arguments.contains("query") || !call.arguments["query"].is_string()) {
        state.protocol_violations.push_back("web_search call without a string 'query' argument");
        append_message(state, "user", ctx.config.reminder_text, ctx.config.context_char_limit);
        return;
    }
    const std::string query = call.arguments["query"].get<std::string>();

    EngineResult result;
    for (int attempt = 0; attempt <= ctx.config.retry_limit; ++attempt) {
        result = ctx.engine->generate(query, scenario);
        if (result.ok) break;
    }
    if (!result.ok) {
        state.status = SampleStatus::ApiError;
        return;
    }
    result.log.call_index = static_cast<int>(state.trajectory_log.size()) + 1;
    state.trajectory_log.push_back(result.log);
    append_message(state, "user", render_tool_response(result.serp),
                   ctx.config.context_char_limit);
}

// One scheduling unit: an agent completion plus any resulting tool execution.
void step_turn(SampleState& state, TurnContext& ctx, const Scenario& scenario) {
    std::string content;
    switch (request_completion(state, ctx, content)) {
        case AttemptKind::Transport:
            state.status = SampleStatus::ApiError;
            return;
        case AttemptKind::Empty:
            state.status = SampleStatus::EmptyResponse;
            return;
        case AttemptKind::Got:
            break;
    }

    append_message(state, "assistant", content, ctx.config.context_char_limit);
    state.assistant_turns += 1;

    AgentAction action = parse_action(content);
    for (auto& v : action.violations) state.protocol_violations.push_back(std::move(v));

    if (ctx.config.setting == Setting::A) {
        // Single completion, no tool loop: tool use here is a violation.
        if (action.kind == AgentAction::Kind::ToolCall) {
            state.protocol_violations.push_back("tool call emitted in Setting A");
        }
        if (action.kind == AgentAction::Kind::Answer) {
            state.final_answer = action.answer;
            state.status = SampleStatus::Finished;
        } else {
            state.status = SampleStatus::EmptyResponse;
        }
        return;
    }

    switch (action.kind) {
        case AgentAction::Kind::Answer:
            state.final_answer = action.answer;
            state.status = SampleStatus::Finished;
            break;
        case AgentAction::Kind::ToolCall:
            handle_tool_call(state, ctx, scenario, action.tool_call);
            break;
        case AgentAction::Kind::NoAction:
            if (action.parse_failure) {
                state.protocol_violations.push_back("tool_call present but unparseable");
            }
            append_message(state, "user", ctx.config.reminder_text,
                           ctx.config.context_char_limit);
            break;
    }

    if (state.status == SampleStatus::Running && state.assistant_turns >= ctx.config.max_turns) {
        state.status = SampleStatus::MaxTurnsReached;
    }
}

SampleState init_sample(const Scenario& scenario, const RunConfig& config) {
    PromptBundle prompts = build_prompts(config.setting, scenario);
    SampleState state;
    state.scenario_id = scenario.id;
    append_message(state, "system", prompts.system_prompt, config.context_char_limit);
    append_message(state, "user", prompts.user_prompt, config.context_char_limit);
    return state;
}

void validate_run_inputs(const RunConfig& config, SearchEngine* engine) {
    if (config.max_turns < 1) throw ConfigError("max_turns must be >= 1");
    if (config.max_concurrent_turns < 1) throw ConfigError("max_concurrent_turns must be >= 1");
    if (config.retry_limit < 0) throw ConfigError("retry_limit must be >= 0");
    if (config.setting != Setting::A && engine == nullptr) {
        throw ConfigError("settings B/C require a search engine");
    }
}

}  // namespace

SampleState run_sample(const Scenario& scenario, ChatClient& agent, SearchEngine* engine,
                       const RunConfig& config) {
    validate_run_inputs(config, engine);
    TurnContext ctx{agent, engine, config};
    SampleState state = init_sample(scenario, config);
    while (state.status == SampleStatus::Running) {
        step_turn(state, ctx, scenario);
    }
    return state;
}

BenchmarkResult run_benchmark(const std::vector<Scenario>& scenarios, ChatClient& agent,
                              SearchEngine* engine, const RunConfig& config) {
    validate_run_inputs(config, engine);

    BenchmarkResult result;
    result.states.reserve(scenarios.size());
    for (const auto& scenario : scenarios) {
        result.states.push_back(init_sample(scenario, config));
    }
    if (scenarios.empty()) return result;

    std::mutex mu;
    std::condition_variable cv;
    std::deque<size_t> ready;
    for (size_t i = 0; i < scenarios.size(); ++i) ready.push_back(i);
    size_t pending = scenarios.size();  // samples not yet terminal
    int in_flight = 0;
    int max_in_flight = 0;

    TurnContext ctx{agent, engine, config};

    auto worker = [&] {
        std::unique_lock<std::mutex> lock(mu);
        for (;;) {
            cv.wait(lock, [&] { return !ready.empty() || pending == 0; });
            if (ready.empty()) return;  // pending == 0: all samples terminal
            size_t index = ready.front();
            ready.pop_front();
            ++in_flight;
            max_in_flight = std::max(max_in_flight, in_flight);
            lock.unlock();

            try {
                step_turn(result.states[index], ctx, scenarios[index]);
            } catch (const std::exception& e) {
                // A failed sample must not take the batch down with it.
                result.states[index].status = SampleStatus::ApiError;
                result.states[index].protocol_violations.push_back(
                    std::string("turn aborted: ") + e.what());
            }

            lock.lock();
            --in_flight;
            if (result.states[index].status == SampleStatus::Running) {
                ready.push_back(index);
            } else {
                --pending;
            }
            cv.notify_all();
        }
    };

    const size_t worker_count =
        std::min<size_t>(static_cast<size_t>(config.max_concurrent_turns), scenarios.size());
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (size_t i = 0; i < worker_count; ++i) workers.emplace_back(worker);
    for (auto& t : workers) t.join();

    result.max_in_flight_turns = max_in_flight;
    return result;
}

nlohmann::ordered_json sample_record_to_json(const SampleState& state) {
    nlohmann::ordered_json tool_calls = nlohmann::ordered_json::array();
    for (const auto& log : state.trajectory_log) tool_calls.push_back(hitlog_to_json(log));
    nlohmann::ordered_json trajectory = nlohmann::ordered_json::array();
    for (const auto& m : state.full_trajectory) {
        trajectory.push_back({{"role", m.role}, {"content", m.content}});
    }
    return nlohmann::ordered_json{
        {"scenario_id", state.scenario_id},
        {"status", to_string(state.status)},
        {"final_answer", state.final_answer ? nlohmann::ordered_json(*state.final_answer)
                                            : nlohmann::ordered_json(nullptr)},
        {"assistant_turns", state.assistant_turns},
        {"tool_calls", std::move(tool_calls)},
        {"full_trajectory", std::move(trajectory)},
    };
}

SampleState sample_record_from_json(const nlohmann::json& record) {
    SampleState state;
    if (!record.is_object() || !record.contains("scenario_id") ||
        !record["scenario_id"].is_string()) {
        throw ValidationError("sample record missing scenario_id");
    }
    state.scenario_id = record["scenario_id"].get<std::string>();
    auto status = sample_status_from_string(record.value("status", std::string{}));
    if (!status || *status == SampleStatus::Running) {
        throw ValidationError("sample record " + state.scenario_id +
                              " has no terminal status");
    }
    state.status = *status;
    if (record.contains("final_answer") && record["final_answer"].is_string()) {
        state.final_answer = record["final_answer"].get<std::string>();
    }
    state.assistant_turns = record.value("assistant_turns", 0);
    if (record.contains("tool_calls")) {
        for (const auto& j : record["tool_calls"]) {
            state.trajectory_log.push_back(hitlog_from_json(j));
        }
    }
    if (record.contains("full_trajectory")) {
        for (const auto& j : record["full_trajectory"]) {
            state.full_trajectory.push_back(
                {j.value("role", std::string{}), j.value("content", std::string{})});
        }
    }
    return state;
}

std::vector<SampleState> load_sample_records(const std::string& path) {
    std::vector<SampleState> records;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json& record) {
        try {
            records.push_back(sample_record_from_json(record));
        } catch (const ValidationError& e) {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    });
    return records;
}

}  // namespace mpw
