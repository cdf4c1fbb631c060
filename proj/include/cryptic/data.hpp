#pragma once

// Dataset ingestion: Cryptonite clue records (JSON lines) and Wordplay
// annotation documents (a narrow YAML subset: scalar header keys plus a
// `clues:` list of flat mappings).  Invalid rows are counted and reported,
// never fatal.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cryptic/knowledge.hpp"
#include "cryptic/strings.hpp"
#include "cryptic/types.hpp"

namespace cryptic {

struct SchemaError {
    size_t line = 0;
    std::string message;
};

struct ClueRecord {
    std::string id;
    std::string clue;
    std::string answer;      // normalised uppercase
    std::string raw_answer;  // as it appeared in the file
    std::string enumeration; // without surrounding parentheses
    Orientation orientation = Orientation::Across;
    bool quick = false;
    std::string publisher;
    std::optional<std::string> date;
};

inline void to_json(nlohmann::json& j, const ClueRecord& r) {
    j = nlohmann::json{{"id", r.id},
                       {"clue", r.clue},
                       {"answer", r.answer},
                       {"raw_answer", r.raw_answer},
                       {"enumeration", r.enumeration},
                       {"orientation", to_string(r.orientation)},
                       {"quick", r.quick},
                       {"publisher", r.publisher},
                       {"date", r.date ? nlohmann::json(*r.date) : nlohmann::json(nullptr)}};
}

inline void from_json(const nlohmann::json& j, ClueRecord& r) {
    r.id = j.at("id").get<std::string>();
    r.clue = j.at("clue").get<std::string>();
    r.answer = j.at("answer").get<std::string>();
    r.raw_answer = j.at("raw_answer").get<std::string>();
    r.enumeration = j.at("enumeration").get<std::string>();
    r.orientation = parse_orientation(j.at("orientation").get<std::string>())
                        .value_or(Orientation::Across);
    r.quick = j.at("quick").get<bool>();
    r.publisher = j.at("publisher").get<std::string>();
    r.date = j.at("date").is_null() ? std::nullopt
                                    : std::optional<std::string>(j.at("date").get<std::string>());
}

enum class Split { Train, Val, Test };

inline std::string_view split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "";
}

inline std::optional<Split> parse_split(std::string_view s) {
    std::string v = to_lower(trim(s));
    if (v == "train") return Split::Train;
    if (v == "val" || v == "validation") return Split::Val;
    if (v == "test") return Split::Test;
    return std::nullopt;
}

// Key names vary across dataset mirrors; defaults cover the common one.
struct CryptoniteKeyMap {
    std::string clue = "clue";
    std::string answer = "answer";
    std::string enumeration = "enumeration";
    std::string quick = "quick";
    std::string publisher = "publisher";
    std::string date = "date";
    std::string orientation = "orientation";
    std::string id = "id";
};

struct CryptoniteLoadResult {
    std::vector<ClueRecord> records;
    std::vector<SchemaError> errors;
};

namespace detail {

inline std::optional<bool> coerce_quick(const nlohmann::json& v) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) {
        long n = v.get<long>();
        if (n == 0 || n == 1) return n == 1;
        return std::nullopt;
    }
    if (v.is_string()) {
        std::string s = to_lower(trim(v.get<std::string>()));
        if (s == "true" || s == "1" || s == "yes" || s == "quick") return true;
        if (s == "false" || s == "0" || s == "no" || s == "") return false;
    }
    return std::nullopt;
}

inline std::string strip_enumeration(std::string_view raw) {
    std::string e = trim(raw);
    if (e.size() >= 2 && e.front() == '(' && e.back() == ')')
        e = trim(e.substr(1, e.size() - 2));
    return e;
}

inline std::filesystem::path resolve_split_file(const std::filesystem::path& path,
                                                Split split) {
    if (!std::filesystem::is_directory(path)) return path;
    const std::string name(split_name(split));
    for (const auto& candidate :
         {path / (name + ".jsonl"), path / ("cryptonite." + name + ".jsonl"),
          path / (name + ".json")}) {
        if (std::filesystem::exists(candidate)) return candidate;
    }
    throw std::runtime_error("no " + name + " split file found under " + path.string());
}

}  // namespace detail

inline CryptoniteLoadResult load_cryptonite(const std::filesystem::path& path, Split split,
                                            const CryptoniteKeyMap& keys = {}) {
    const auto file = detail::resolve_split_file(path, split);
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open dataset file: " + file.string());

    CryptoniteLoadResult result;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;

        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            result.errors.push_back({lineno, std::string("invalid JSON: ") + e.what()});
            continue;
        }

        ClueRecord rec;
        rec.id = row.contains(keys.id) && row[keys.id].is_string()
                     ? row[keys.id].get<std::string>()
                     : "line-" + std::to_string(lineno);
        if (!row.contains(keys.clue) || !row[keys.clue].is_string() ||
            trim(row[keys.clue].get<std::string>()).empty()) {
            result.errors.push_back({lineno, "missing or empty clue"});
            continue;
        }
        rec.clue = trim(row[keys.clue].get<std::string>());
        if (!row.contains(keys.answer) || !row[keys.answer].is_string()) {
            result.errors.push_back({lineno, "missing answer"});
            continue;
        }
        rec.raw_answer = row[keys.answer].get<std::string>();
        rec.answer = normalise_answer(rec.raw_answer);
        if (!row.contains(keys.enumeration) || !row[keys.enumeration].is_string()) {
            result.errors.push_back({lineno, "missing enumeration"});
            continue;
        }
        rec.enumeration = detail::strip_enumeration(row[keys.enumeration].get<std::string>());

        auto m = matches_pattern(rec.answer, rec.enumeration);
        if (!m.has_value()) {
            result.errors.push_back({lineno, "malformed enumeration '" + rec.enumeration + "'"});
            continue;
        }
        if (!*m) {
            result.errors.push_back(
                {lineno, "answer '" + rec.answer + "' violates enumeration '" +
                             rec.enumeration + "'"});
            continue;
        }

        if (row.contains(keys.quick)) {
            auto q = detail::coerce_quick(row[keys.quick]);
            if (!q.has_value()) {
                result.errors.push_back({lineno, "unrecognised quick flag encoding"});
            } else {
                rec.quick = *q;
            }
        }
        if (row.contains(keys.orientation) && row[keys.orientation].is_string()) {
            if (auto o = parse_orientation(row[keys.orientation].get<std::string>()))
                rec.orientation = *o;
        }
        if (row.contains(keys.publisher) && row[keys.publisher].is_string())
            rec.publisher = row[keys.publisher].get<std::string>();
        if (row.contains(keys.date) && row[keys.date].is_string())
            rec.date = row[keys.date].get<std::string>();

        result.records.push_back(std::move(rec));
    }
    return result;
}

// -- definition markup --------------------------------------------------------

struct StrippedClue {
    std::string clue;
    std::vector<std::pair<size_t, size_t>> spans;  // half-open offsets into clue
};

// Removes the curly braces highlighting definition spans.  Offsets reference
// the stripped text; throws on unbalanced or nested braces.
inline StrippedClue strip_markup(std::string_view markup) {
    StrippedClue out;
    bool open = false;
    size_t open_at = 0;
    for (char c : markup) {
        if (c == '{') {
            if (open) throw std::invalid_argument("nested '{' in clue markup");
            open = true;
            open_at = out.clue.size();
        } else if (c == '}') {
            if (!open) throw std::invalid_argument("unmatched '}' in clue markup");
            out.spans.emplace_back(open_at, out.clue.size());
            open = false;
        } else {
            out.clue.push_back(c);
        }
    }
    if (open) throw std::invalid_argument("unclosed '{' in clue markup");
    return out;
}

// -- wordplay annotation documents ---------------------------------------------

struct WordplayRecord {
    std::string publication;
    std::string setter;
    std::string author;
    int num = 0;
    Orientation ad = Orientation::Across;
    std::string pattern;
    std::string clue_markup;  // curly braces delimit the definition span
    std::string wordplay;
    std::string answer;  // normalised uppercase
};

struct WordplayLoadResult {
    std::vector<WordplayRecord> records;
    std::vector<SchemaError> errors;
};

namespace detail {

// Unquotes a YAML scalar: single quotes with '' escapes, double quotes with
// backslash escapes, or the plain value trimmed.
inline std::string yaml_scalar(std::string_view raw) {
    std::string v = trim(raw);
    if (v.size() >= 2 && v.front() == '\'' && v.back() == '\'') {
        std::string out;
        for (size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] == '\'' && i + 2 < v.size() && v[i + 1] == '\'') {
                out.push_back('\'');
                ++i;
            } else {
                out.push_back(v[i]);
            }
        }
        return out;
    }
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
        std::string out;
        for (size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] == '\\' && i + 2 < v.size()) {
                ++i;
                switch (v[i]) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    default: out.push_back(v[i]); break;
                }
            } else {
                out.push_back(v[i]);
            }
        }
        return out;
    }
    return v;
}

inline std::optional<std::pair<std::string, std::string>> yaml_key_value(
    std::string_view line) {
    auto colon = line.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string key = trim(line.substr(0, colon));
    if (key.empty()) return std::nullopt;
    for (char c : key)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return std::nullopt;
    return std::make_pair(key, yaml_scalar(line.substr(colon + 1)));
}

struct WordplayDoc {
    std::map<std::string, std::string> header;
    std::vector<std::pair<size_t, std::map<std::string, std::string>>> clues;
};

}  // namespace detail

inline WordplayLoadResult load_wordplay(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open wordplay file: " + path.string());

    WordplayLoadResult result;

    std::vector<detail::WordplayDoc> docs(1);
    bool in_clues = false;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "---") {
            if (!docs.back().header.empty() || !docs.back().clues.empty())
                docs.emplace_back();
            in_clues = false;
            continue;
        }
        if (!in_clues && t == "clues:") {
            in_clues = true;
            continue;
        }
        if (in_clues && t.rfind("- ", 0) == 0) {
            docs.back().clues.emplace_back(lineno, std::map<std::string, std::string>{});
            if (auto kv = detail::yaml_key_value(t.substr(2)))
                docs.back().clues.back().second[kv->first] = kv->second;
            else
                result.errors.push_back({lineno, "cannot parse clue list entry"});
            continue;
        }
        if (in_clues && !docs.back().clues.empty()) {
            if (auto kv = detail::yaml_key_value(t)) {
                docs.back().clues.back().second[kv->first] = kv->second;
                continue;
            }
            result.errors.push_back({lineno, "cannot parse clue field"});
            continue;
        }
        if (auto kv = detail::yaml_key_value(t)) {
            docs.back().header[kv->first] = kv->second;
            continue;
        }
        result.errors.push_back({lineno, "cannot parse line"});
    }

    for (const auto& doc : docs) {
        std::string publication, setter;
        if (auto it = doc.header.find("publication"); it != doc.header.end())
            publication = it->second;
        if (auto it = doc.header.find("setter"); it != doc.header.end()) setter = it->second;
        if (auto it = doc.header.find("title"); it != doc.header.end()) {
            const std::string& title = it->second;
            auto by = title.rfind(" by ");
            if (by != std::string::npos) {
                if (publication.empty()) publication = trim(title.substr(0, by));
                if (setter.empty()) setter = to_lower(trim(title.substr(by + 4)));
            } else if (publication.empty()) {
                publication = title;
            }
        }
        std::string author;
        if (auto it = doc.header.find("author"); it != doc.header.end()) author = it->second;

        for (const auto& [entry_line, fields] : doc.clues) {
            auto field = [&](const char* name) -> std::optional<std::string> {
                auto it = fields.find(name);
                if (it == fields.end()) return std::nullopt;
                return it->second;
            };

            auto clue = field("clue");
            auto pattern = field("pattern");
            auto answer = field("answer");
            auto wordplay = field("wordplay");
            if (!clue || !pattern || !answer || !wordplay) {
                result.errors.push_back(
                    {entry_line, "clue entry lacks one of clue/pattern/answer/wordplay"});
                continue;
            }

            WordplayRecord rec;
            rec.publication = publication;
            rec.setter = setter;
            rec.author = author;
            rec.clue_markup = *clue;
            rec.pattern = detail::strip_enumeration(*pattern);
            rec.wordplay = *wordplay;
            rec.answer = normalise_answer(*answer);
            if (auto ad = field("ad")) {
                if (auto o = parse_orientation(*ad)) rec.ad = *o;
            }
            if (auto num = field("num")) {
                try {
                    rec.num = std::stoi(*num);
                } catch (...) {
                    result.errors.push_back({entry_line, "invalid clue number"});
                }
            }

            try {
                strip_markup(rec.clue_markup);
            } catch (const std::invalid_argument& e) {
                result.errors.push_back({entry_line, e.what()});
                continue;
            }
            auto m = matches_pattern(rec.answer, rec.pattern);
            if (!m.has_value() || !*m) {
                result.errors.push_back(
                    {entry_line, "answer '" + rec.answer + "' violates pattern '" +
                                     rec.pattern + "'"});
                continue;
            }
            result.records.push_back(std::move(rec));
        }
    }
    return result;
}

}  // namespace cryptic
