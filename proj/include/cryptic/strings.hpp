#pragma once

// Small string helpers shared across the library.  All case mapping is
// ASCII-only; multi-byte UTF-8 sequences pass through untouched.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cryptic {

inline char ascii_upper(char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_upper);
    return out;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Collapses runs of whitespace to single spaces and trims the ends.
inline std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // leading whitespace dropped
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            out.push_back(c);
            in_ws = false;
        }
    }
    return out;
}

// Letters only, uppercased: the view used for anagram and mask indexing.
inline std::string letters_only(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        char u = ascii_upper(c);
        if (u >= 'A' && u <= 'Z') out.push_back(u);
    }
    return out;
}

inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

// Splits on any of the given separator characters; empty segments kept.
inline std::vector<std::string> split_on(std::string_view s, std::string_view seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string_view::npos) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Drops one leading article ("a", "an", "the") from an already lowercased,
// whitespace-collapsed phrase.  Returns the phrase unchanged if no article.
inline std::string strip_leading_article(std::string_view phrase) {
    for (std::string_view art : {"a ", "an ", "the "}) {
        if (phrase.size() > art.size() && phrase.substr(0, art.size()) == art)
            return std::string(phrase.substr(art.size()));
    }
    return std::string(phrase);
}

// Lowercase + whitespace collapse: the canonical phrase key.
inline std::string normalise_phrase(std::string_view s) {
    return collapse_ws(to_lower(s));
}

// Uppercase + whitespace collapse: the canonical answer form.
inline std::string normalise_answer(std::string_view s) {
    return collapse_ws(to_upper(s));
}

// Case/space/hyphen-insensitive equality, used for answer comparison.
inline bool answers_equal(std::string_view a, std::string_view b) {
    return letters_only(a) == letters_only(b);
}

inline uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace cryptic
