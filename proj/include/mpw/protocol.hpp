#pragma once

#include "mpw/scenario.hpp"
#include "mpw/serp.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpw {

enum class Setting { A, BGuidance, BFewshot, C };

std::optional<Setting> setting_from_string(std::string_view s);
std::string to_string(Setting setting);

struct ToolCallRequest {
    std::string name;
    nlohmann::json arguments;  // object

    bool operator==(const ToolCallRequest&) const = default;
};

// Result of parsing one assistant message. An <answer> tag is terminal and
// wins over any tool call in the same message; only the first well-formed
// <tool_call> is actionable, further blocks are recorded as violations.
struct AgentAction {
    enum class Kind { Answer, ToolCall, NoAction };

    Kind kind = Kind::NoAction;
    std::string answer;         // Kind::Answer
    ToolCallRequest tool_call;  // Kind::ToolCall
    std::optional<std::string> think_text;
    bool parse_failure = false;  // <tool_call> present but no block parsed
    std::vector<std::string> violations;
};

// Total over arbitrary input; never throws. Tag matching is case-sensitive
// and requires a matching close tag; unclosed tags yield NoAction.
AgentAction parse_action(std::string_view assistant_text);

// Wraps the SERP wire object in a <tool_response> block. Entries are
// renumbered 1..4; anything but exactly 4 entries is an internal error.
std::string render_tool_response(const Serp& serp);

struct PromptBundle {
    Setting setting = Setting::C;
    std::string system_prompt;
    std::string user_prompt;
};

// Setting A: question plus the full fact list in the user prompt, tool-free
// system prompt. B/C: question only, setting-specific system prompt.
PromptBundle build_prompts(Setting setting, const Scenario& scenario);

}  // namespace mpw
