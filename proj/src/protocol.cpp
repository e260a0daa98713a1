#include "mpw/protocol.hpp"

#include "mpw/prompts.hpp"
#include "mpw/text_util.hpp"

#include <stdexcept>

namespace mpw {

std::optional<Setting> setting_from_string(std::string_view s) {
    if (s == "A") return Setting::A;
    if (s == "B-guidance") return Setting::BGuidance;
    if (s == "B-fewshot") return Setting::BFewshot;
    if (s == "C") return Setting::C;
    return std::nullopt;
}

std::string to_string(Setting setting) {
    switch (setting) {
        case Setting::A: return "A";
        case Setting::BGuidance: return "B-guidance";
        case Setting::BFewshot: return "B-fewshot";
        case Setting::C: return "C";
    }
    return "C";
}

namespace {

struct TagBlock {
    size_t open_pos;
    std::string body;
};

// First well-nested <tag>...</tag> at or after `from`. The close tag is the
// first one following the open tag; same-name nesting is not supported.
std::optional<TagBlock> find_tag(std::string_view text, std::string_view tag, size_t from = 0) {
    const std::string open = "<" + std::string(tag) + ">";
    const std::string close = "</" + std::string(tag) + ">";
    size_t o = text.find(open, from);
    if (o == std::string_view::npos) return std::nullopt;
    size_t body_start = o + open.size();
    size_t c = text.find(close, body_start);
    if (c == std::string_view::npos) return std::nullopt;
    return TagBlock{o, std::string(text.substr(body_start, c - body_start))};
}

std::vector<TagBlock> find_all_tags(std::string_view text, std::string_view tag) {
    std::vector<TagBlock> blocks;
    size_t from = 0;
    while (auto block = find_tag(text, tag, from)) {
        const std::string close = "</" + std::string(tag) + ">";
        from = block->open_pos + tag.size() + 2 + block->body.size() + close.size();
        blocks.push_back(std::move(*block));
    }
    return blocks;
}

std::optional<ToolCallRequest> parse_tool_call_body(const std::string& body) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    if (!parsed.is_object()) return std::nullopt;
    if (!parsed.contains("name") || !parsed["name"].is_string()) return std::nullopt;
    if (!parsed.contains("arguments") || !parsed["arguments"].is_object()) return std::nullopt;
    ToolCallRequest call;
    call.name = parsed["name"].get<std::string>();
    if (call.name.empty()) return std::nullopt;
    call.arguments = parsed["arguments"];
    return call;
}

}  // namespace

AgentAction parse_action(std::string_view assistant_text) {
    AgentAction action;

    if (auto think = find_tag(assistant_text, "think")) {
        action.think_text = trim(think->body);
    }

    auto tool_blocks = find_all_tags(assistant_text, "tool_call");

    if (auto answer = find_tag(assistant_text, "answer")) {
        action.kind = AgentAction::Kind::Answer;
        action.answer = trim(answer->body);
        if (!tool_blocks.empty()) {
            action.violations.push_back("tool_call ignored: answer tag takes terminal precedence");
        }
        return action;
    }

    if (tool_blocks.empty()) return action;

    bool chosen = false;
    for (const auto& block : tool_blocks) {
        auto call = parse_tool_call_body(block.body);
        if (!call) {
            action.violations.push_back("tool_call body is not a valid {name, arguments} object");
            continue;
        }
        if (chosen) {
            action.violations.push_back("extra tool_call block ignored: one tool call per turn");
            continue;
        }
        action.kind = AgentAction::Kind::ToolCall;
        action.tool_call = std::move(*call);
        chosen = true;
    }
    if (!chosen) action.parse_failure = true;
    return action;
}

std::string render_tool_response(const Serp& serp) {
    if (serp.entries.size() != kSerpEntryCount) {
        throw std::logic_error("serp must have exactly " + std::to_string(kSerpEntryCount) +
                               " entries, got " + std::to_string(serp.entries.size()));
    }
    Serp renumbered = serp;
    for (size_t i = 0; i < renumbered.entries.size(); ++i) {
        renumbered.entries[i].id = static_cast<int>(i + 1);
    }
    return "<tool_response>\n" + serp_to_json(renumbered).dump(2) + "\n</tool_response>";
}

PromptBundle build_prompts(Setting setting, const Scenario& scenario) {
    PromptBundle bundle;
    bundle.setting = setting;
    switch (setting) {
        case Setting::A: {
            bundle.system_prompt = prompts::kSettingASystem;
            std::string user = scenario.question + "\n\nAtomic Facts:\n";
            for (size_t i = 0; i < scenario.facts.size(); ++i) {
                user += std::to_string(i + 1) + ". " + scenario.facts[i].key + ": " +
                        scenario.facts[i].value + "\n";
            }
            bundle.user_prompt = std::move(user);
            break;
        }
        case Setting::BGuidance:
            bundle.system_prompt = prompts::kSettingBGuidanceSystem;
            bundle.user_prompt = scenario.question;
            break;
        case Setting::BFewshot:
            bundle.system_prompt = prompts::kSettingBFewshotSystem;
            bundle.user_prompt = scenario.question;
            break;
        case Setting::C:
            bundle.system_prompt = prompts::kSettingCSystem;
            bundle.user_prompt = scenario.question;
            break;
    }
    return bundle;
}

}  // namespace mpw
