#pragma once

// Prompt bundle loading and deterministic prompt assembly for the four
// generation tasks: answer candidates, wordplay suggestions, formalisation
// and rewrite.  Identical inputs always produce byte-identical prompts.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cryptic/strings.hpp"
#include "cryptic/types.hpp"

namespace cryptic {

struct ChatMessage {
    std::string role;
    std::string content;
};

inline std::string fingerprint(const std::vector<ChatMessage>& messages) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& m : messages) {
        h = fnv1a64(m.role, h);
        h = fnv1a64("\x1e", h);
        h = fnv1a64(m.content, h);
        h = fnv1a64("\x1f", h);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PromptBundle {
    std::string rubric;              // task overview and wordplay conventions
    std::vector<std::string> wordplay_shots;
    std::string dsl_rubric;          // external function declarations
    std::vector<std::string> formalisation_shots;
    std::string instruction;         // final problem-statement lead-in
    std::string rewrite_instruction; // appended after verifier feedback

    bool complete() const {
        return !rubric.empty() && !wordplay_shots.empty() && !dsl_rubric.empty() &&
               !formalisation_shots.empty() && !instruction.empty() &&
               !rewrite_instruction.empty();
    }

    size_t wordplay_shot_count() const { return wordplay_shots.size(); }
    size_t formalisation_shot_count() const { return formalisation_shots.size(); }

    static PromptBundle load_dir(const std::filesystem::path& dir);
};

namespace detail {

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open prompt file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

inline std::vector<std::string> read_shot_files(const std::filesystem::path& dir,
                                                std::string_view prefix) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            const auto name = entry.path().filename().string();
            if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ".txt")
                files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<std::string> shots;
    for (const auto& f : files) shots.push_back(read_text_file(f));
    return shots;
}

}  // namespace detail

inline PromptBundle PromptBundle::load_dir(const std::filesystem::path& dir) {
    PromptBundle bundle;
    bundle.rubric = detail::read_text_file(dir / "rubric.txt");
    bundle.dsl_rubric = detail::read_text_file(dir / "dsl_rubric.txt");
    bundle.instruction = detail::read_text_file(dir / "instruction.txt");
    bundle.rewrite_instruction = detail::read_text_file(dir / "rewrite.txt");
    bundle.wordplay_shots = detail::read_shot_files(dir / "shots", "wordplay_");
    bundle.formalisation_shots = detail::read_shot_files(dir / "shots", "proof_");
    if (!bundle.complete())
        throw ConfigError("prompt bundle at " + dir.string() +
                          " is incomplete (missing sections or shots)");
    return bundle;
}

// -- prompt builders ---------------------------------------------------------

inline std::vector<ChatMessage> build_answer_prompt(std::string_view clue,
                                                    std::string_view pattern,
                                                    Orientation ad) {
    std::string user = "clue: \"";
    user += trim(clue);
    user += "\"\npattern: ";
    user += trim(pattern);
    user += "\nad: ";
    user += to_string(ad);
    return {
        {"system",
         "Cryptic clue answer generation : Given the clue, pattern and orientation, "
         "return the single best answer"},
        {"user", std::move(user)},
    };
}

inline std::vector<ChatMessage> build_wordplay_prompt(std::string_view clue,
                                                      std::string_view answer) {
    std::string upper = normalise_answer(answer);
    std::string user = "clue: \"";
    user += trim(clue);
    user += "\"\nanswer: ";
    user += upper;
    user += " ~ ";
    user += to_lower(upper);
    return {
        {"system",
         "Cryptic clue wordplay generation : Given the clue and the answer, return "
         "expert definition and wordplay annotations"},
        {"user", std::move(user)},
    };
}

inline std::vector<ChatMessage> build_formalise_prompt(std::string_view clue,
                                                       std::string_view pattern,
                                                       std::string_view answer,
                                                       std::string_view definition,
                                                       std::string_view wordplay,
                                                       const PromptBundle& bundle) {
    if (!bundle.complete())
        throw ConfigError("prompt bundle is incomplete");
    if (trim(wordplay).empty())
        throw std::invalid_argument("wordplay must not be empty");

    std::string upper = normalise_answer(answer);
    std::string text = bundle.rubric;
    text += "\n\nFor example:\n---\n";
    for (const auto& shot : bundle.wordplay_shots) {
        text += shot;
        text += "\n---\n";
    }
    text += "\n";
    text += bundle.dsl_rubric;
    text += "\n\nThe following are examples of simple functions that prove that "
            "each puzzle solution is correct:\n\n";
    for (const auto& shot : bundle.formalisation_shots) {
        text += "```python\n";
        text += shot;
        if (text.back() != '\n') text += "\n";
        text += "```\n\n";
    }
    text += bundle.instruction;
    text += "\n\nclue: \"";
    text += trim(clue);
    text += "\"\ndefinition: ";
    text += trim(definition);
    text += "\nanswer: ";
    text += upper;
    text += "\nwordplay: ";
    text += trim(wordplay);
    text += "\n\n```python\ndef proof(answer=\"";
    text += upper;
    text += "\", clue=\"";
    text += trim(clue);
    text += "\", pattern='";
    text += trim(pattern);
    text += "'):\n";
    return {{"user", std::move(text)}};
}

inline std::vector<ChatMessage> build_rewrite_prompt(std::string_view previous_source,
                                                     std::string_view feedback,
                                                     const PromptBundle& bundle) {
    if (bundle.rewrite_instruction.empty())
        throw ConfigError("prompt bundle lacks the rewrite instruction");
    if (trim(feedback).empty())
        throw std::invalid_argument("feedback must not be empty");
    std::string text(previous_source);
    text += "\n\n";
    text += feedback;
    return {{"user", std::move(text)}};
}

// Two-line completion format produced by the wordplay generator.
struct WordplaySuggestion {
    std::string definition;
    std::string wordplay;
};

inline std::optional<WordplaySuggestion> parse_wordplay_response(std::string_view text) {
    WordplaySuggestion out;
    for (const auto& raw : split_on(text, "\n")) {
        std::string line = trim(raw);
        if (out.definition.empty() && line.rfind("definition:", 0) == 0)
            out.definition = trim(line.substr(11));
        else if (out.wordplay.empty() && line.rfind("wordplay:", 0) == 0)
            out.wordplay = trim(line.substr(9));
    }
    if (out.wordplay.empty() || out.definition.empty()) return std::nullopt;
    return out;
}

}  // namespace cryptic
