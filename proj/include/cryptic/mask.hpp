#pragma once

// Partial-fill letter masks.  Positions index letters only: spaces and
// hyphens in multi-word answers do not count.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cryptic/strings.hpp"

namespace cryptic {

struct LetterMask {
    int length = 0;
    std::map<int, char> known;  // position -> uppercase letter
};

// Reveals round-half-up(fraction * length) distinct positions chosen
// uniformly by the seeded generator, letters taken from the gold answer.
inline LetterMask make_mask(std::string_view answer, double fraction, unsigned seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("mask fraction must be within [0, 1]");
    std::string letters = letters_only(answer);
    LetterMask mask;
    mask.length = static_cast<int>(letters.size());
    int k = static_cast<int>(std::floor(fraction * mask.length + 0.5));

    std::vector<int> positions(letters.size());
    std::iota(positions.begin(), positions.end(), 0);
    std::mt19937 rng(seed);
    std::shuffle(positions.begin(), positions.end(), rng);
    for (int i = 0; i < k; ++i) mask.known[positions[i]] = letters[positions[i]];
    return mask;
}

// True iff the word has the mask's letter count and agrees with every known
// letter at its position.
inline bool mask_accepts(const LetterMask& mask, std::string_view word) {
    std::string letters = letters_only(word);
    if (static_cast<int>(letters.size()) != mask.length) return false;
    for (const auto& [pos, ch] : mask.known) {
        if (pos < 0 || pos >= static_cast<int>(letters.size())) return false;
        if (letters[static_cast<size_t>(pos)] != ch) return false;
    }
    return true;
}

}  // namespace cryptic
