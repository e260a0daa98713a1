#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mpw {

struct ChatMessage {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

struct CompletionRequest {
    std::vector<ChatMessage> messages;
    // Orchestrator metadata, never sent over the wire. Scripted agents use
    // it to look up the scenario they are being evaluated on.
    std::string scenario_id;
};

struct CompletionResult {
    bool ok = false;
    bool transport_error = false;
    std::string content;
    std::string error;

    static CompletionResult success(std::string text) {
        return {true, false, std::move(text), {}};
    }
    static CompletionResult transport(std::string message) {
        return {false, true, {}, std::move(message)};
    }
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

struct EndpointConfig {
    std::string base_url;  // e.g. "http://localhost:8000/v1"
    std::string model;
    std::string api_key;
    std::string api_key_env;  // environment variable holding the key
    double temperature = 0.0;
    int max_tokens = 0;  // 0 = endpoint default
    int timeout_seconds = 300;
};

// OpenAI-compatible chat-completions client. One request per complete();
// retry policy lives with the caller.
class HttpChatClient final : public ChatClient {
public:
    explicit HttpChatClient(EndpointConfig config);
    ~HttpChatClient() override;

    CompletionResult complete(const CompletionRequest& request) override;

private:
    EndpointConfig config_;
    std::string origin_;       // scheme://host[:port]
    std::string path_prefix_;  // e.g. "/v1"
};

}  // namespace mpw
