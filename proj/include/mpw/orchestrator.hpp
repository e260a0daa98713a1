#pragma once

#include "mpw/chat_client.hpp"
#include "mpw/engine.hpp"
#include "mpw/protocol.hpp"
#include "mpw/scenario.hpp"
#include "mpw/serp.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mpw {

enum class SampleStatus { Running, Finished, MaxTurnsReached, ApiError, EmptyResponse };

std::string to_string(SampleStatus status);
std::optional<SampleStatus> sample_status_from_string(std::string_view s);

struct RunConfig {
    Setting setting = Setting::C;
    int max_turns = 32;
    int max_concurrent_turns = 8;
    std::size_t context_char_limit = 400000;
    int retry_limit = 3;  // retries, so retry_limit + 1 attempts in total
    std::string reminder_text =
        "Please continue. Either call a tool with <tool_call> or give your final answer "
        "with <answer>.";
};

// Dual-track per-sample state: context_messages is the truncatable inference
// window, full_trajectory the append-only audit record.
struct SampleState {
    std::string scenario_id;
    SampleStatus status = SampleStatus::Running;
    std::vector<ChatMessage> context_messages;
    std::vector<ChatMessage> full_trajectory;
    std::vector<HitLog> trajectory_log;
    int assistant_turns = 0;
    std::optional<std::string> final_answer;
    std::vector<std::string> protocol_violations;
};

// System message plus the longest suffix of later messages whose contents
// fit in `limit` characters; messages are never split. Throws ConfigError
// when the system message alone exceeds the limit.
std::vector<ChatMessage> truncate_context(const std::vector<ChatMessage>& messages,
                                          std::size_t limit);

// Runs one sample to a terminal status. External failures become statuses;
// the engine may be null only for Setting A.
SampleState run_sample(const Scenario& scenario, ChatClient& agent, SearchEngine* engine,
                       const RunConfig& config);

struct BenchmarkResult {
    std::vector<SampleState> states;  // input order
    int max_in_flight_turns = 0;      // instrumented high-water mark
};

// Turn-level scheduler: the concurrency bound applies to in-flight turns,
// not samples. Per-sample outputs match serial execution whenever the
// backends are deterministic.
BenchmarkResult run_benchmark(const std::vector<Scenario>& scenarios, ChatClient& agent,
                              SearchEngine* engine, const RunConfig& config);

// Wire record: {scenario_id, status, final_answer, assistant_turns,
// tool_calls:[HitLog...], full_trajectory:[{role, content}...]}.
nlohmann::ordered_json sample_record_to_json(const SampleState& state);
SampleState sample_record_from_json(const nlohmann::json& record);

std::vector<SampleState> load_sample_records(const std::string& path);

}  // namespace mpw
