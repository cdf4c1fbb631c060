#pragma once

// Chat-completion gateway with two interchangeable backends: a remote
// OpenAI-style HTTP endpoint and a deterministic scripted replay used for
// tests and offline runs.  The API key is read from the environment variable
// named in the endpoint config and is never logged or echoed.

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cryptic/knowledge.hpp"
#include "cryptic/prompts.hpp"
#include "cryptic/strings.hpp"
#include "cryptic/types.hpp"

namespace cryptic {

struct ModelEndpoint {
    std::string base_url = "http://localhost:8080/v1";
    std::string model_name = "local-model";
    std::string api_key_env;  // name of the env var holding the key
    double temperature = 1.0;
    int max_tokens = 512;
    int request_timeout_seconds = 30;
    int max_retries = 2;
};

struct CallOptions {
    std::optional<double> temperature;
};

class GatewayError : public std::runtime_error {
public:
    GatewayError(const std::string& message, std::string fingerprint)
        : std::runtime_error(message + " [request " + fingerprint + "]"),
          fingerprint_(std::move(fingerprint)) {}
    const std::string& request_fingerprint() const { return fingerprint_; }

private:
    std::string fingerprint_;
};

class TimeoutError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
class RateLimitedError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
class FixtureMissError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
class MalformedResponseError : public GatewayError {
public:
    using GatewayError::GatewayError;
};
class HttpStatusError : public GatewayError {
public:
    HttpStatusError(int status, const std::string& fingerprint)
        : GatewayError("HTTP status " + std::to_string(status), fingerprint),
          status_(status) {}
    int status() const { return status_; }

private:
    int status_ = 0;
};

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    // Returns the first completion's text for the given conversation.
    virtual std::string chat(const std::vector<ChatMessage>& messages,
                             const CallOptions& options = {}) = 0;
};

// -- scripted replay ----------------------------------------------------------

struct ScriptedFixture {
    enum class Mode { ByHash, BySequence };

    struct Entry {
        std::string match;  // fingerprint hex (ByHash) or decimal index (BySequence)
        std::string response;
    };

    Mode mode = Mode::ByHash;
    std::vector<Entry> entries;

    static ScriptedFixture load_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open fixture file: " + path.string());
        nlohmann::json doc = nlohmann::json::parse(in);
        if (!doc.is_array()) throw ConfigError("fixture file must be a JSON array");

        ScriptedFixture fixture;
        bool any_number = false, any_string = false;
        for (const auto& item : doc) {
            Entry e;
            const auto& match = item.at("match");
            if (match.is_number_integer()) {
                any_number = true;
                e.match = std::to_string(match.get<long>());
            } else if (match.is_string()) {
                any_string = true;
                e.match = match.get<std::string>();
            } else {
                throw ConfigError("fixture match must be a hash string or an index");
            }
            e.response = item.at("response").get<std::string>();
            fixture.entries.push_back(std::move(e));
        }
        if (any_number && any_string)
            throw ConfigError("fixture file mixes hash and index matches");
        fixture.mode = any_number ? Mode::BySequence : Mode::ByHash;
        if (fixture.mode == Mode::BySequence) {
            std::sort(fixture.entries.begin(), fixture.entries.end(),
                      [](const Entry& a, const Entry& b) {
                          return std::stol(a.match) < std::stol(b.match);
                      });
        }
        return fixture;
    }

    void save_file(const std::filesystem::path& path) const {
        nlohmann::json doc = nlohmann::json::array();
        for (size_t i = 0; i < entries.size(); ++i) {
            nlohmann::json item;
            if (mode == Mode::BySequence)
                item["match"] = static_cast<long>(i);
            else
                item["match"] = entries[i].match;
            item["response"] = entries[i].response;
            doc.push_back(std::move(item));
        }
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write fixture file: " + path.string());
        out << doc.dump(2) << "\n";
    }
};

class ScriptedBackend final : public ChatBackend {
public:
    explicit ScriptedBackend(ScriptedFixture fixture) : mode_(fixture.mode) {
        if (mode_ == ScriptedFixture::Mode::ByHash) {
            for (auto& e : fixture.entries) queues_[e.match].push_back(std::move(e.response));
        } else {
            for (auto& e : fixture.entries) sequence_.push_back(std::move(e.response));
        }
    }

    std::string chat(const std::vector<ChatMessage>& messages,
                     const CallOptions& = {}) override {
        std::string fp = fingerprint(messages);
        std::lock_guard<std::mutex> lock(mutex_);
        if (mode_ == ScriptedFixture::Mode::ByHash) {
            auto it = queues_.find(fp);
            if (it == queues_.end() || it->second.empty())
                throw FixtureMissError("no scripted response for request", fp);
            std::string response = std::move(it->second.front());
            it->second.pop_front();
            return response;
        }
        if (next_ >= sequence_.size())
            throw FixtureMissError("scripted fixture exhausted", fp);
        return sequence_[next_++];
    }

    size_t remaining() const {
        std::lock_guard<std::mutex> lock(mutex_);
        if (mode_ == ScriptedFixture::Mode::BySequence) return sequence_.size() - next_;
        size_t n = 0;
        for (const auto& [_, q] : queues_) n += q.size();
        return n;
    }

private:
    ScriptedFixture::Mode mode_;
    std::unordered_map<std::string, std::deque<std::string>> queues_;
    std::vector<std::string> sequence_;
    size_t next_ = 0;
    mutable std::mutex mutex_;
};

// Yes/no oracle over a chat backend, used as the last stage of the synonym
// and homophone checks.  Gateway failures surface as Unavailable, never as
// exceptions; answers that are not a clear YES count as NO.
class ChatOracle final : public LlmOracle {
public:
    explicit ChatOracle(std::shared_ptr<ChatBackend> backend)
        : backend_(std::move(backend)) {}

    Reply yes_no(const std::string& question) override {
        try {
            std::string text = backend_->chat({{"user", question}}, CallOptions{0.0});
            std::string up = to_upper(trim(text));
            return up.rfind("YES", 0) == 0 ? Reply::Yes : Reply::No;
        } catch (const GatewayError&) {
            return Reply::Unavailable;
        }
    }

private:
    std::shared_ptr<ChatBackend> backend_;
};

// -- generation operations ----------------------------------------------------

// Issues n independent single completions and returns the raw candidates,
// uppercased.  Filtering against pattern and dictionary happens downstream.
inline std::vector<std::string> generate_answers(std::string_view clue,
                                                 std::string_view pattern, Orientation ad,
                                                 int n, ChatBackend& backend,
                                                 double temperature = 1.0) {
    if (n < 1) throw std::invalid_argument("generate_answers requires n >= 1");
    auto messages = build_answer_prompt(clue, pattern, ad);
    CallOptions options{temperature};
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::string text = backend.chat(messages, options);
        std::string candidate;
        for (const auto& raw : split_on(text, "\n")) {
            std::string line = trim(raw);
            if (line.empty()) continue;
            if (to_lower(line).rfind("answer:", 0) == 0) line = trim(line.substr(7));
            if (auto tilde = line.find(" ~ "); tilde != std::string::npos)
                line = trim(line.substr(0, tilde));
            candidate = line;
            break;
        }
        out.push_back(normalise_answer(candidate));
    }
    return out;
}

// Samples until k well-formed definition/wordplay pairs are collected.
// Malformed completions are dropped and re-sampled within a bounded budget;
// exhausting the budget raises MalformedResponseError.
inline std::vector<WordplaySuggestion> generate_wordplays(std::string_view clue,
                                                          std::string_view answer, int k,
                                                          ChatBackend& backend,
                                                          double temperature = 1.0) {
    if (k < 1) throw std::invalid_argument("generate_wordplays requires k >= 1");
    auto messages = build_wordplay_prompt(clue, answer);
    CallOptions options{temperature};
    const int budget = 3 * k;
    std::vector<WordplaySuggestion> out;
    for (int attempts = 0; static_cast<int>(out.size()) < k && attempts < budget; ++attempts) {
        std::string text = backend.chat(messages, options);
        if (auto parsed = parse_wordplay_response(text)) out.push_back(std::move(*parsed));
    }
    if (static_cast<int>(out.size()) < k)
        throw MalformedResponseError(
            "wordplay generation produced " + std::to_string(out.size()) + " of " +
                std::to_string(k) + " well-formed responses within the retry budget",
            fingerprint(messages));
    return out;
}

// Returns raw completion text; the proof parser tolerates fences and the
// trailing invocation, so no cleanup happens here.
inline std::string formalise(std::string_view clue, std::string_view pattern,
                             std::string_view answer, std::string_view definition,
                             std::string_view wordplay, const PromptBundle& bundle,
                             ChatBackend& backend, double temperature = 0.2) {
    auto messages = build_formalise_prompt(clue, pattern, answer, definition, wordplay, bundle);
    return backend.chat(messages, CallOptions{temperature});
}

inline std::string rewrite(std::string_view previous_source, std::string_view feedback,
                           const PromptBundle& bundle, ChatBackend& backend,
                           double temperature = 0.2) {
    auto messages = build_rewrite_prompt(previous_source, feedback, bundle);
    return backend.chat(messages, CallOptions{temperature});
}

}  // namespace cryptic
