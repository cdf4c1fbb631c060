#pragma once

// OpenAI-style chat-completions client over cpp-httplib.  Transient failures
// (connection errors, timeouts, 429, 5xx) are retried with exponential
// backoff up to endpoint.max_retries.

#include <cstdlib>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "cryptic/gateway.hpp"

namespace cryptic {

class HttpBackend final : public ChatBackend {
public:
    explicit HttpBackend(ModelEndpoint endpoint) : endpoint_(std::move(endpoint)) {
        if (endpoint_.temperature < 0)
            throw ConfigError("endpoint temperature must be >= 0");
        if (endpoint_.max_retries < 0)
            throw ConfigError("endpoint max_retries must be >= 0");
        split_base_url(endpoint_.base_url, host_, path_prefix_);
    }

    std::string chat(const std::vector<ChatMessage>& messages,
                     const CallOptions& options = {}) override {
        const std::string fp = fingerprint(messages);

        nlohmann::json body;
        body["model"] = endpoint_.model_name;
        body["temperature"] = options.temperature.value_or(endpoint_.temperature);
        body["max_tokens"] = endpoint_.max_tokens;
        body["messages"] = nlohmann::json::array();
        for (const auto& m : messages)
            body["messages"].push_back({{"role", m.role}, {"content", m.content}});
        const std::string payload = body.dump();

        httplib::Headers headers;
        if (!endpoint_.api_key_env.empty()) {
            if (const char* key = std::getenv(endpoint_.api_key_env.c_str()))
                headers.emplace("Authorization", std::string("Bearer ") + key);
        }

        int last_status = 0;
        bool saw_rate_limit = false;
        for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(100LL << (attempt - 1)));

            httplib::Client client(host_);
            client.set_connection_timeout(endpoint_.request_timeout_seconds, 0);
            client.set_read_timeout(endpoint_.request_timeout_seconds, 0);
            client.set_write_timeout(endpoint_.request_timeout_seconds, 0);

            auto res = client.Post(path_prefix_ + "/chat/completions", headers, payload,
                                   "application/json");
            if (!res) continue;  // connection failure or timeout: retry

            last_status = res->status;
            if (res->status == 200) {
                nlohmann::json doc;
                try {
                    doc = nlohmann::json::parse(res->body);
                    return doc.at("choices").at(0).at("message").at("content")
                        .get<std::string>();
                } catch (const std::exception& e) {
                    throw MalformedResponseError(
                        std::string("cannot parse completion response: ") + e.what(), fp);
                }
            }
            if (res->status == 429) { saw_rate_limit = true; continue; }
            if (res->status >= 500) continue;
            throw HttpStatusError(res->status, fp);  // 4xx other than 429: no retry
        }
        if (saw_rate_limit) throw RateLimitedError("rate limited by endpoint", fp);
        if (last_status >= 500) throw HttpStatusError(last_status, fp);
        throw TimeoutError("endpoint unreachable or timed out", fp);
    }

private:
    // "http://host:port/v1" -> ("http://host:port", "/v1")
    static void split_base_url(const std::string& url, std::string& host,
                               std::string& prefix) {
        auto scheme_end = url.find("://");
        size_t path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
        if (path_start == std::string::npos) {
            host = url;
            prefix.clear();
        } else {
            host = url.substr(0, path_start);
            prefix = url.substr(path_start);
            while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
        }
    }

    ModelEndpoint endpoint_;
    std::string host_;
    std::string path_prefix_;
};

}  // namespace cryptic
