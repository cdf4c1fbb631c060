#pragma once

// Word-embedding store with character-n-gram hashing for out-of-vocabulary
// tokens, and the nearest-neighbour answer lookup over a wordlist restricted
// by pattern and letter mask.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cryptic/knowledge.hpp"
#include "cryptic/mask.hpp"
#include "cryptic/strings.hpp"

namespace cryptic {

class EmptyCandidatePoolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OovHasher {
    int min_n = 3;
    int max_n = 5;
    uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

class EmbeddingStore {
public:
    EmbeddingStore() = default;
    explicit EmbeddingStore(int dimension, OovHasher oov = {})
        : dimension_(dimension), oov_(oov) {}

    // File format: one `token<TAB or space>float...` row per line; an optional
    // leading "count dim" header row is tolerated.
    static EmbeddingStore load_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open embeddings file: " + path.string());
        EmbeddingStore store;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::istringstream row(t);
            std::string token;
            row >> token;
            std::vector<float> vec;
            float v;
            while (row >> v) vec.push_back(v);
            if (lineno == 1 && vec.size() == 1 &&
                token.find_first_not_of("0123456789") == std::string::npos)
                continue;  // fasttext-style "count dim" header
            if (vec.empty())
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": no vector components");
            for (float x : vec)
                if (!std::isfinite(x))
                    throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                             ": non-finite component");
            store.add(token, std::move(vec));
        }
        if (store.vectors_.empty())
            throw std::runtime_error("embeddings file is empty: " + path.string());
        return store;
    }

    void add(std::string_view token, std::vector<float> vec) {
        if (dimension_ == 0) dimension_ = static_cast<int>(vec.size());
        if (static_cast<int>(vec.size()) != dimension_)
            throw std::runtime_error("embedding dimension mismatch for token '" +
                                     std::string(token) + "'");
        vectors_[to_lower(token)] = std::move(vec);
    }

    int dimension() const { return dimension_; }
    bool contains(std::string_view token) const {
        return vectors_.count(to_lower(token)) > 0;
    }

    // Stored vector, or a deterministic hash of the token's character
    // n-grams when out of vocabulary.
    std::vector<float> token_vector(std::string_view token) const {
        std::string key = to_lower(token);
        if (auto it = vectors_.find(key); it != vectors_.end()) return it->second;

        std::vector<float> acc(static_cast<size_t>(dimension_), 0.0f);
        std::string bounded = "<" + key + ">";
        int grams = 0;
        for (int n = oov_.min_n; n <= oov_.max_n; ++n) {
            if (static_cast<int>(bounded.size()) < n) break;
            for (size_t i = 0; i + n <= bounded.size(); ++i) {
                uint64_t state = fnv1a64(std::string_view(bounded).substr(i, n)) ^ oov_.seed;
                for (auto& a : acc) {
                    uint64_t bits = splitmix64(state);
                    a += static_cast<float>((bits >> 11) * (1.0 / 9007199254740992.0) - 0.5);
                }
                ++grams;
            }
        }
        if (grams == 0) {
            uint64_t state = fnv1a64(bounded) ^ oov_.seed;
            for (auto& a : acc) {
                uint64_t bits = splitmix64(state);
                a += static_cast<float>((bits >> 11) * (1.0 / 9007199254740992.0) - 0.5);
            }
            grams = 1;
        }
        for (auto& a : acc) a /= static_cast<float>(grams);
        return acc;
    }

    // Mean of the token vectors of the lowercased alphabetic tokens.
    std::vector<float> embed_text(std::string_view text) const {
        std::vector<float> acc(static_cast<size_t>(dimension_), 0.0f);
        int count = 0;
        std::string token;
        auto flush = [&]() {
            if (token.empty()) return;
            auto v = token_vector(token);
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
            ++count;
            token.clear();
        };
        for (char c : text) {
            char l = ascii_lower(c);
            if (l >= 'a' && l <= 'z') token.push_back(l);
            else flush();
        }
        flush();
        if (count > 0)
            for (auto& a : acc) a /= static_cast<float>(count);
        return acc;
    }

private:
    int dimension_ = 0;
    std::unordered_map<std::string, std::vector<float>> vectors_;
    OovHasher oov_;
};

// Cosine similarity; -1 when either vector has zero magnitude.
inline double cosine(const std::vector<float>& a, const std::vector<float>& b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0 || nb == 0) return -1.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Embeds the raw clue and returns the cosine-nearest wordlist entry among
// those matching the pattern and the letter mask; ties break lexicographically.
inline std::string knn_answer(std::string_view clue, const EmbeddingStore& store,
                              const std::vector<std::string>& wordlist,
                              std::string_view pattern, const LetterMask* mask = nullptr) {
    if (wordlist.empty()) throw EmptyCandidatePoolError("empty wordlist");

    std::vector<std::string> pool;
    for (const auto& entry : wordlist) {
        auto m = matches_pattern(entry, pattern);
        if (!m.has_value() || !*m) continue;
        if (mask && !mask_accepts(*mask, entry)) continue;
        pool.push_back(normalise_answer(entry));
    }
    if (pool.empty())
        throw EmptyCandidatePoolError("no wordlist entry matches the pattern and mask");

    std::vector<float> cvec = store.embed_text(clue);
    std::string best;
    double best_cos = 0;
    bool have_best = false;
    for (const auto& entry : pool) {
        double cos = cosine(cvec, store.embed_text(entry));
        if (!have_best || cos > best_cos || (cos == best_cos && entry < best)) {
            best = entry;
            best_cos = cos;
            have_best = true;
        }
    }
    return best;
}

}  // namespace cryptic
