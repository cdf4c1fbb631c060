#pragma once

// key=value configuration file: endpoint settings, pipeline numbers and
// resource locations.  Lines starting with '#' are comments.

#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "cryptic/gateway.hpp"
#include "cryptic/pipeline.hpp"

namespace cryptic {

struct AppConfig {
    ModelEndpoint endpoint;
    PipelineConfig pipeline;
    std::string kb_dir = "resources/kb";
    std::string prompts_dir = "resources/prompts";
    std::string embeddings_path;
    bool fuzzy_indicators = false;
    bool use_synonym_oracle = false;

    static AppConfig load_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path.string());

        std::map<std::string, std::string> kv;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected key=value");
            kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
        }

        AppConfig cfg;
        auto str = [&](const char* key, std::string& out) {
            if (auto it = kv.find(key); it != kv.end()) out = it->second;
        };
        auto num = [&](const char* key, auto& out) {
            if (auto it = kv.find(key); it != kv.end()) {
                try {
                    if constexpr (std::is_floating_point_v<std::decay_t<decltype(out)>>)
                        out = std::stod(it->second);
                    else
                        out = std::stoi(it->second);
                } catch (...) {
                    throw ConfigError("invalid number for " + std::string(key) + ": '" +
                                      it->second + "'");
                }
            }
        };

        str("endpoint.base_url", cfg.endpoint.base_url);
        str("endpoint.model", cfg.endpoint.model_name);
        str("endpoint.api_key_env", cfg.endpoint.api_key_env);
        num("endpoint.temperature", cfg.endpoint.temperature);
        num("endpoint.max_tokens", cfg.endpoint.max_tokens);
        num("endpoint.timeout_seconds", cfg.endpoint.request_timeout_seconds);
        num("endpoint.max_retries", cfg.endpoint.max_retries);

        num("pipeline.num_answer_candidates", cfg.pipeline.num_answer_candidates);
        num("pipeline.wordplays_per_candidate", cfg.pipeline.wordplays_per_candidate);
        num("pipeline.max_rewrites", cfg.pipeline.max_rewrites);
        num("pipeline.answer_temperature", cfg.pipeline.answer_temperature);
        num("pipeline.regeneration_budget", cfg.pipeline.regeneration_budget);

        str("resources.kb_dir", cfg.kb_dir);
        str("resources.prompts_dir", cfg.prompts_dir);
        str("resources.embeddings", cfg.embeddings_path);

        auto flag = [&](const char* key, bool& out) {
            if (auto it = kv.find(key); it != kv.end()) {
                std::string v = to_lower(it->second);
                if (v == "true" || v == "1" || v == "yes") out = true;
                else if (v == "false" || v == "0" || v == "no") out = false;
                else throw ConfigError("invalid boolean for " + std::string(key));
            }
        };
        flag("kb.fuzzy_indicators", cfg.fuzzy_indicators);
        flag("kb.synonym_oracle", cfg.use_synonym_oracle);

        cfg.pipeline.validate();
        return cfg;
    }
};

}  // namespace cryptic
