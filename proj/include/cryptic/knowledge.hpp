#pragma once

// Knowledge base backing the external check functions of the proof language.
// All lookups are read-only after loading; every check returns a CheckOutcome
// whose near-misses drive the verifier's hints.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cryptic/action.hpp"
#include "cryptic/phonetic.hpp"
#include "cryptic/strings.hpp"

namespace cryptic {

// word: enumeration pattern match ------------------------------------------

// True iff the word's segments (split on spaces and hyphens) have exactly the
// lengths given by the comma/hyphen-separated pattern, in order.  Returns
// nullopt for a malformed pattern, which is distinct from a plain mismatch.
inline std::optional<bool> matches_pattern(std::string_view word, std::string_view pattern) {
    std::string p = trim(pattern);
    if (p.size() >= 2 && p.front() == '(' && p.back() == ')')
        p = trim(p.substr(1, p.size() - 2));
    if (p.empty()) return std::nullopt;

    std::vector<size_t> lengths;
    for (const auto& part : split_on(p, ",-")) {
        std::string t = trim(part);
        if (t.empty()) return std::nullopt;
        for (char c : t)
            if (c < '0' || c > '9') return std::nullopt;
        size_t v = std::strtoul(t.c_str(), nullptr, 10);
        if (v == 0) return std::nullopt;
        lengths.push_back(v);
    }

    std::vector<std::string> segments;
    for (const auto& seg : split_on(normalise_answer(word), " -")) {
        segments.push_back(letters_only(seg));
    }
    if (segments.size() != lengths.size()) return false;
    for (size_t i = 0; i < segments.size(); ++i)
        if (segments[i].size() != lengths[i]) return false;
    return true;
}

// check outcomes ------------------------------------------------------------

enum class NearMissKind {
    AnagramLetterDiff,
    AbbreviationExpansions,
    IndicatorSubphrase,
    IndicatorOtherAction,
    PatternMismatch,
    SynonymRejected,
    OracleUnavailable,
    HomophoneEncodings,
};

struct NearMiss {
    NearMissKind kind = NearMissKind::SynonymRejected;
    std::string matched_subphrase;
    std::vector<std::string> suggestions;
};

struct CheckOutcome {
    bool ok = false;
    std::vector<NearMiss> near_misses;

    static CheckOutcome pass() { return CheckOutcome{true, {}}; }
    static CheckOutcome fail(std::vector<NearMiss> misses = {}) {
        return CheckOutcome{false, std::move(misses)};
    }
};

// Yes/no oracle used as the last stage of the synonym and homophone checks.
// Implementations must be deterministic to keep verification replayable.
class LlmOracle {
public:
    enum class Reply { Yes, No, Unavailable };
    virtual ~LlmOracle() = default;
    virtual Reply yes_no(const std::string& question) = 0;
};

inline std::string synonym_oracle_question(std::string_view phrase, std::string_view candidate) {
    std::string q = "Is '";
    q += trim(phrase);
    q += "' a reasonable crossword definition for '";
    q += normalise_answer(candidate);
    q += "'? Answer YES or NO.";
    return q;
}

inline std::string homophone_oracle_question(std::string_view phrase, std::string_view candidate) {
    std::string q = "Does '";
    q += trim(phrase);
    q += "' sound like '";
    q += normalise_answer(candidate);
    q += "' when spoken aloud? Answer YES or NO.";
    return q;
}

namespace detail {

inline std::array<int, 26> letter_counts(std::string_view letters) {
    std::array<int, 26> counts{};
    for (char c : letters) counts[c - 'A']++;
    return counts;
}

inline bool edit_distance_at_most_one(std::string_view a, std::string_view b) {
    if (a == b) return true;
    size_t la = a.size(), lb = b.size();
    if (la > lb) { std::swap(a, b); std::swap(la, lb); }
    if (lb - la > 1) return false;
    size_t i = 0, j = 0;
    bool used = false;
    while (i < la && j < lb) {
        if (a[i] == b[j]) { ++i; ++j; continue; }
        if (used) return false;
        used = true;
        if (la == lb) { ++i; ++j; } else { ++j; }
    }
    return true;
}

}  // namespace detail

// the knowledge base --------------------------------------------------------

class KnowledgeBase {
public:
    // -- construction -------------------------------------------------------

    void add_word(std::string_view word) {
        std::string w = normalise_answer(word);
        if (w.empty()) return;
        wordlist_.insert(w);
        squashed_.insert(letters_only(w));
    }

    void add_abbreviation(std::string_view phrase, std::string_view abbr) {
        std::string p = normalise_phrase(phrase);
        std::string a = to_upper(trim(abbr));
        if (p.empty() || a.empty()) return;
        abbr_forward_[p].insert(a);
        add_expansion(a, trim(phrase));
    }

    // Seeds a reverse-direction expansion only (hint data with no forward
    // lookup entry).  File loading never calls this; it exists so tests can
    // stage the documented hint scenarios.
    void add_abbreviation_expansion(std::string_view abbr, std::string_view phrase) {
        add_expansion(to_upper(trim(abbr)), trim(phrase));
    }

    void remove_abbreviation(std::string_view phrase, std::string_view abbr) {
        auto it = abbr_forward_.find(normalise_phrase(phrase));
        if (it == abbr_forward_.end()) return;
        it->second.erase(to_upper(trim(abbr)));
        if (it->second.empty()) abbr_forward_.erase(it);
    }

    void add_indicator(Action action, std::string_view phrase) {
        std::string p = normalise_phrase(phrase);
        if (!p.empty()) indicators_[static_cast<size_t>(action)].insert(p);
    }

    void add_synonym(std::string_view word, std::string_view synonym) {
        std::string w = normalise_phrase(word);
        std::string s = normalise_phrase(synonym);
        if (!w.empty() && !s.empty()) thesaurus_[w].insert(s);
    }

    void add_answer_pair(std::string_view definition, std::string_view answer) {
        std::string d = normalise_phrase(definition);
        std::string a = normalise_answer(answer);
        if (!d.empty() && !a.empty()) answer_pairs_.insert(pair_key(d, a));
    }

    void set_oracle(std::shared_ptr<LlmOracle> oracle) { oracle_ = std::move(oracle); }
    void set_fuzzy_indicators(bool enabled) { fuzzy_indicators_ = enabled; }

    // The phonetic encoder is pinned by name; only the rule-based default
    // exists, and naming it keeps the choice explicit in configs.
    void set_phonetic(std::string_view id) {
        if (id != "metaphone")
            throw std::runtime_error("unknown phonetic encoder '" + std::string(id) + "'");
        phonetic_id_ = id;
    }
    const std::string& phonetic_id() const { return phonetic_id_; }

    // -- resource files ------------------------------------------------------

    void load_wordlist(const std::filesystem::path& path) {
        for_each_line(path, [&](size_t, std::string_view line) { add_word(line); });
    }

    void load_abbreviations(const std::filesystem::path& path) {
        for_each_tsv(path, "abbreviations", [&](std::string_view a, std::string_view b) {
            add_abbreviation(a, b);
        });
    }

    void load_indicators(const std::filesystem::path& path) {
        for_each_line(path, [&](size_t n, std::string_view line) {
            auto tab = line.find('\t');
            if (tab == std::string_view::npos)
                throw std::runtime_error(path.string() + ":" + std::to_string(n) +
                                         ": expected action<TAB>phrase");
            auto action = parse_action(trim(line.substr(0, tab)));
            if (!action)
                throw std::runtime_error(path.string() + ":" + std::to_string(n) +
                                         ": unknown action name '" +
                                         trim(line.substr(0, tab)) + "'");
            add_indicator(*action, line.substr(tab + 1));
        });
    }

    void load_thesaurus(const std::filesystem::path& path) {
        for_each_tsv(path, "thesaurus", [&](std::string_view a, std::string_view b) {
            add_synonym(a, b);
        });
    }

    void load_answer_pairs(const std::filesystem::path& path) {
        for_each_tsv(path, "answer pairs", [&](std::string_view a, std::string_view b) {
            add_answer_pair(a, b);
        });
    }

    // Loads every recognised resource file present in a directory.
    static KnowledgeBase load_dir(const std::filesystem::path& dir) {
        if (!std::filesystem::is_directory(dir))
            throw std::runtime_error("knowledge base directory not found: " + dir.string());
        KnowledgeBase kb;
        if (auto p = dir / "wordlist.txt"; std::filesystem::exists(p)) kb.load_wordlist(p);
        if (auto p = dir / "abbreviations.tsv"; std::filesystem::exists(p)) kb.load_abbreviations(p);
        if (auto p = dir / "indicators.tsv"; std::filesystem::exists(p)) kb.load_indicators(p);
        if (auto p = dir / "thesaurus.tsv"; std::filesystem::exists(p)) kb.load_thesaurus(p);
        if (auto p = dir / "answer_pairs.tsv"; std::filesystem::exists(p)) kb.load_answer_pairs(p);
        return kb;
    }

    // -- checks --------------------------------------------------------------

    CheckOutcome is_anagram(std::string_view letters, std::string_view word) const {
        std::string a = letters_only(letters);
        std::string b = letters_only(word);
        if (!a.empty() && detail::letter_counts(a) == detail::letter_counts(b))
            return CheckOutcome::pass();

        auto ca = detail::letter_counts(a);
        auto cb = detail::letter_counts(b);
        std::string unused, missing;
        for (int i = 0; i < 26; ++i) {
            for (int k = cb[i]; k < ca[i]; ++k) unused.push_back(static_cast<char>('A' + i));
            for (int k = ca[i]; k < cb[i]; ++k) missing.push_back(static_cast<char>('A' + i));
        }
        std::vector<NearMiss> misses;
        if (!a.empty() && !b.empty() && unused.size() <= 2 && missing.size() <= 2) {
            NearMiss m{NearMissKind::AnagramLetterDiff, "", {}};
            if (!missing.empty()) m.suggestions.push_back("missing: " + missing);
            if (!unused.empty()) m.suggestions.push_back("unused: " + unused);
            misses.push_back(std::move(m));
        }
        return CheckOutcome::fail(std::move(misses));
    }

    CheckOutcome is_abbreviation(std::string_view phrase, std::string_view abbr) const {
        std::string a = to_upper(trim(abbr));
        for (const auto& key : phrase_keys(phrase)) {
            auto it = abbr_forward_.find(key);
            if (it != abbr_forward_.end() && it->second.count(a)) return CheckOutcome::pass();
        }
        NearMiss m{NearMissKind::AbbreviationExpansions, "", {}};
        if (auto it = abbr_reverse_.find(a); it != abbr_reverse_.end())
            m.suggestions = it->second;
        return CheckOutcome::fail({std::move(m)});
    }

    CheckOutcome action_type(std::string_view phrase, Action action) const {
        std::string p = normalise_phrase(phrase);
        const auto& set = indicators_[static_cast<size_t>(action)];
        if (set.count(p)) return CheckOutcome::pass();
        if (fuzzy_indicators_ && p.find(' ') == std::string::npos) {
            for (const auto& ind : set)
                if (ind.find(' ') == std::string::npos &&
                    detail::edit_distance_at_most_one(p, ind))
                    return CheckOutcome::pass();
        }

        std::vector<NearMiss> misses;
        // (a) contiguous sub-phrases that do indicate this action, longest first
        auto words = split_words(p);
        bool found_sub = false;
        for (size_t len = words.size() > 0 ? words.size() - 1 : 0; len >= 1 && !found_sub; --len) {
            for (size_t start = 0; start + len <= words.size(); ++start) {
                std::string sub = words[start];
                for (size_t i = 1; i < len; ++i) sub += " " + words[start + i];
                if (set.count(sub)) {
                    misses.push_back({NearMissKind::IndicatorSubphrase, sub, {}});
                    found_sub = true;
                    break;
                }
            }
            if (len == 1) break;
        }
        // (b) other actions for which the whole phrase is an indicator
        for (Action other : kAllActions) {
            if (other == action) continue;
            if (indicators_[static_cast<size_t>(other)].count(p))
                misses.push_back({NearMissKind::IndicatorOtherAction, p,
                                  {std::string(action_name(other))}});
        }
        return CheckOutcome::fail(std::move(misses));
    }

    CheckOutcome is_synonym(std::string_view phrase, std::string_view candidate,
                            std::string_view pattern = "") const {
        if (!trim(pattern).empty()) {
            auto m = matches_pattern(candidate, pattern);
            if (!m.has_value())
                return CheckOutcome::fail({{NearMissKind::PatternMismatch, "",
                                            {std::string(trim(pattern)), "malformed"}}});
            if (!*m)
                return CheckOutcome::fail({{NearMissKind::PatternMismatch, "",
                                            {std::string(trim(pattern))}}});
        }

        std::string cand_l = normalise_phrase(candidate);
        std::string cand_u = normalise_answer(candidate);
        auto keys = phrase_keys(phrase);

        for (const auto& key : keys) {
            if (auto it = thesaurus_.find(key); it != thesaurus_.end() && it->second.count(cand_l))
                return CheckOutcome::pass();
            if (auto it = thesaurus_.find(cand_l); it != thesaurus_.end() && it->second.count(key))
                return CheckOutcome::pass();
        }
        for (const auto& key : keys)
            if (answer_pairs_.count(pair_key(key, cand_u))) return CheckOutcome::pass();

        std::vector<std::string> rejected = {"thesaurus", "answer-pairs"};
        std::vector<NearMiss> misses;
        if (oracle_) {
            switch (oracle_->yes_no(synonym_oracle_question(phrase, candidate))) {
                case LlmOracle::Reply::Yes: return CheckOutcome::pass();
                case LlmOracle::Reply::No: rejected.push_back("oracle"); break;
                case LlmOracle::Reply::Unavailable:
                    misses.push_back({NearMissKind::OracleUnavailable, "", {}});
                    break;
            }
        }
        misses.insert(misses.begin(),
                      {NearMissKind::SynonymRejected, "", std::move(rejected)});
        return CheckOutcome::fail(std::move(misses));
    }

    CheckOutcome is_homophone(std::string_view phrase, std::string_view candidate) const {
        std::string e1 = phonetic_encode(phrase);
        std::string e2 = phonetic_encode(candidate);
        if (!e1.empty() && e1 == e2) return CheckOutcome::pass();

        std::vector<NearMiss> misses;
        if (oracle_) {
            switch (oracle_->yes_no(homophone_oracle_question(phrase, candidate))) {
                case LlmOracle::Reply::Yes: return CheckOutcome::pass();
                case LlmOracle::Reply::No: break;
                case LlmOracle::Reply::Unavailable:
                    misses.push_back({NearMissKind::OracleUnavailable, "", {}});
                    break;
            }
        }
        misses.insert(misses.begin(), {NearMissKind::HomophoneEncodings, "", {e1, e2}});
        return CheckOutcome::fail(std::move(misses));
    }

    bool known_word(std::string_view word) const {
        std::string w = normalise_answer(word);
        if (w.empty()) return false;
        return wordlist_.count(w) > 0 || squashed_.count(letters_only(w)) > 0;
    }

    // -- inspection (tests, diagnostics) --------------------------------------

    size_t wordlist_size() const { return wordlist_.size(); }
    const std::unordered_map<std::string, std::set<std::string>>& abbreviation_forward() const {
        return abbr_forward_;
    }
    std::vector<std::string> abbreviation_expansions(std::string_view abbr) const {
        auto it = abbr_reverse_.find(to_upper(trim(abbr)));
        return it == abbr_reverse_.end() ? std::vector<std::string>{} : it->second;
    }
    const std::set<std::string>& indicator_phrases(Action a) const {
        return indicators_[static_cast<size_t>(a)];
    }
    std::vector<std::string> wordlist_entries() const {
        return std::vector<std::string>(wordlist_.begin(), wordlist_.end());
    }

private:
    static std::string pair_key(const std::string& definition, const std::string& answer) {
        return definition + "\t" + answer;
    }

    // Lookup keys for a phrase: normalised, plus the article-stripped form.
    static std::vector<std::string> phrase_keys(std::string_view phrase) {
        std::string p = normalise_phrase(phrase);
        std::string stripped = strip_leading_article(p);
        if (stripped != p) return {p, stripped};
        return {p};
    }

    void add_expansion(const std::string& abbr, const std::string& phrase) {
        if (abbr.empty() || phrase.empty()) return;
        auto& list = abbr_reverse_[abbr];
        for (const auto& existing : list)
            if (existing == phrase) return;
        list.push_back(phrase);
    }

    template <typename Fn>
    static void for_each_line(const std::filesystem::path& path, Fn&& fn) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open resource file: " + path.string());
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            fn(lineno, std::string_view(line));
        }
    }

    template <typename Fn>
    static void for_each_tsv(const std::filesystem::path& path, std::string_view what, Fn&& fn) {
        for_each_line(path, [&](size_t n, std::string_view line) {
            auto tab = line.find('\t');
            if (tab == std::string_view::npos)
                throw std::runtime_error(path.string() + ":" + std::to_string(n) +
                                         ": expected two tab-separated fields (" +
                                         std::string(what) + ")");
            fn(line.substr(0, tab), line.substr(tab + 1));
        });
    }

    std::unordered_set<std::string> wordlist_;
    std::unordered_set<std::string> squashed_;
    std::unordered_map<std::string, std::set<std::string>> abbr_forward_;
    std::unordered_map<std::string, std::vector<std::string>> abbr_reverse_;
    std::array<std::set<std::string>, kAllActions.size()> indicators_;
    std::unordered_map<std::string, std::set<std::string>> thesaurus_;
    std::unordered_set<std::string> answer_pairs_;
    std::shared_ptr<LlmOracle> oracle_;
    bool fuzzy_indicators_ = false;
    std::string phonetic_id_ = "metaphone";
};

}  // namespace cryptic
