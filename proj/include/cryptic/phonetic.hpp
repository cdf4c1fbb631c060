#pragma once

// Rule-based phonetic encoder in the classic Metaphone family.  Deterministic
// by construction; the homophone check compares these codes directly.

#include <string>
#include <string_view>

#include "cryptic/strings.hpp"

namespace cryptic {

namespace detail {

inline bool is_vowel(char c) {
    return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
}

inline bool one_of(char c, std::string_view set) {
    return set.find(c) != std::string_view::npos;
}

}  // namespace detail

// Encodes a single word (letters only; anything else is stripped first).
inline std::string metaphone(std::string_view word) {
    using detail::is_vowel;
    using detail::one_of;

    std::string w = letters_only(word);
    if (w.empty()) return "";

    // Initial-letter exceptions.
    if (w.size() >= 2) {
        std::string_view head2 = std::string_view(w).substr(0, 2);
        if (head2 == "AE" || head2 == "GN" || head2 == "KN" || head2 == "PN" ||
            head2 == "WR")
            w.erase(0, 1);
        else if (head2 == "WH")
            w = "W" + w.substr(2);
        else if (w[0] == 'X')
            w[0] = 'S';
    } else if (w[0] == 'X') {
        w[0] = 'S';
    }

    const size_t n = w.size();
    std::string out;
    auto at = [&](size_t i) -> char { return i < n ? w[i] : '\0'; };

    for (size_t i = 0; i < n; ++i) {
        char c = w[i];
        if (i > 0 && c == w[i - 1] && c != 'C') continue;  // collapse doubles

        switch (c) {
            case 'A': case 'E': case 'I': case 'O': case 'U':
                if (i == 0) out.push_back(c);
                break;
            case 'B':
                // silent terminal B after M ("dumb")
                if (!(i + 1 == n && i > 0 && w[i - 1] == 'M')) out.push_back('B');
                break;
            case 'C':
                if (at(i + 1) == 'I' && at(i + 2) == 'A') {
                    out.push_back('X');
                } else if (at(i + 1) == 'H') {
                    out.push_back(i > 0 && w[i - 1] == 'S' ? 'K' : 'X');
                    ++i;  // consume the H
                } else if (one_of(at(i + 1), "IEY")) {
                    out.push_back('S');
                } else {
                    out.push_back('K');
                }
                break;
            case 'D':
                if (at(i + 1) == 'G' && one_of(at(i + 2), "EIY")) {
                    out.push_back('J');
                    i += 2;
                } else {
                    out.push_back('T');
                }
                break;
            case 'F': out.push_back('F'); break;
            case 'G':
                if (at(i + 1) == 'H') {
                    // GH: silent unless followed by a vowel
                    if (is_vowel(at(i + 2))) {
                        out.push_back('K');
                    }
                    ++i;  // consume the H either way
                } else if (at(i + 1) == 'N') {
                    // GN / GNED: silent G
                } else if (one_of(at(i + 1), "IEY")) {
                    out.push_back('J');
                } else {
                    out.push_back('K');
                }
                break;
            case 'H':
                // silent after a vowel when no vowel follows
                if (i > 0 && is_vowel(w[i - 1]) && !is_vowel(at(i + 1))) break;
                if (i > 0 && one_of(w[i - 1], "CSPTG")) break;  // digraph tail
                out.push_back('H');
                break;
            case 'J': out.push_back('J'); break;
            case 'K':
                if (!(i > 0 && w[i - 1] == 'C')) out.push_back('K');
                break;
            case 'L': out.push_back('L'); break;
            case 'M': out.push_back('M'); break;
            case 'N': out.push_back('N'); break;
            case 'P':
                if (at(i + 1) == 'H') {
                    out.push_back('F');
                    ++i;
                } else {
                    out.push_back('P');
                }
                break;
            case 'Q': out.push_back('K'); break;
            case 'R': out.push_back('R'); break;
            case 'S':
                if (at(i + 1) == 'H') {
                    out.push_back('X');
                    ++i;
                } else if (at(i + 1) == 'I' && one_of(at(i + 2), "OA")) {
                    out.push_back('X');
                } else {
                    out.push_back('S');
                }
                break;
            case 'T':
                if (at(i + 1) == 'I' && one_of(at(i + 2), "OA")) {
                    out.push_back('X');
                } else if (at(i + 1) == 'H') {
                    out.push_back('0');
                    ++i;
                } else if (at(i + 1) == 'C' && at(i + 2) == 'H') {
                    // silent in -TCH-
                } else {
                    out.push_back('T');
                }
                break;
            case 'V': out.push_back('F'); break;
            case 'W':
                if (is_vowel(at(i + 1))) out.push_back('W');
                break;
            case 'X':
                out += "KS";
                break;
            case 'Y':
                if (is_vowel(at(i + 1))) out.push_back('Y');
                break;
            case 'Z': out.push_back('S'); break;
            default: break;
        }
    }
    return out;
}

// Encodes a phrase word by word; codes joined with single spaces.
inline std::string phonetic_encode(std::string_view phrase) {
    std::vector<std::string> codes;
    for (const auto& tok : split_words(phrase)) {
        std::string code = metaphone(tok);
        if (!code.empty()) codes.push_back(code);
    }
    return join(codes, " ");
}

}  // namespace cryptic
