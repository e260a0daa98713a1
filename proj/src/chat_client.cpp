#include "mpw/chat_client.hpp"

#ifdef MPW_HAS_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <nlohmann/json.hpp>

#include <cstdlib>

namespace mpw {

namespace {

// Splits "http://host:port/v1" into origin and path prefix.
void split_base_url(const std::string& base_url, std::string& origin, std::string& path_prefix) {
    size_t scheme_end = base_url.find("://");
    size_t path_start = scheme_end == std::string::npos
                            ? base_url.find('/')
                            : base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        origin = base_url;
        path_prefix.clear();
        return;
    }
    origin = base_url.substr(0, path_start);
    path_prefix = base_url.substr(path_start);
    while (!path_prefix.empty() && path_prefix.back() == '/') path_prefix.pop_back();
}

}  // namespace

HttpChatClient::HttpChatClient(EndpointConfig config) : config_(std::move(config)) {
    if (config_.api_key.empty() && !config_.api_key_env.empty()) {
        if (const char* key = std::getenv(config_.api_key_env.c_str())) config_.api_key = key;
    }
    split_base_url(config_.base_url, origin_, path_prefix_);
}

HttpChatClient::~HttpChatClient() = default;

CompletionResult HttpChatClient::complete(const CompletionRequest& request) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : request.messages) {
        messages.push_back({{"role", m.role}, {"content", m.content}});
    }
    nlohmann::json body = {
        {"model", config_.model},
        {"messages", std::move(messages)},
        {"temperature", config_.temperature},
    };
    if (config_.max_tokens > 0) body["max_tokens"] = config_.max_tokens;

    httplib::Client client(origin_);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);
    client.set_write_timeout(config_.timeout_seconds);

    httplib::Headers headers;
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }

    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                           "application/json");
    if (!res) {
        return CompletionResult::transport("connection failure: " +
                                           httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        return CompletionResult::transport("http status " + std::to_string(res->status) + ": " +
                                           res->body.substr(0, 200));
    }

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
        return CompletionResult::transport(std::string("unparseable response body: ") + e.what());
    }
    if (!parsed.contains("choices") || !parsed["choices"].is_array() ||
        parsed["choices"].empty()) {
        return CompletionResult::transport("response has no choices");
    }
    const auto& message = parsed["choices"][0].value("message", nlohmann::json::object());
    std::string content;
    if (message.contains("content") && message["content"].is_string()) {
        content = message["content"].get<std::string>();
    }
    return CompletionResult::success(std::move(content));
}

}  // namespace mpw
