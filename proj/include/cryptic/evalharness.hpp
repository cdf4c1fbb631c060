#pragma once

// Accuracy evaluation over a seeded sample of clue records.  Top-1 whole
// answer: a prediction is correct iff it equals the gold answer ignoring
// case, spaces and hyphens.  Quick and hard rates cover the quick and
// non-quick subsets respectively.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cryptic/data.hpp"
#include "cryptic/strings.hpp"

namespace cryptic {

struct PerClueResult {
    std::string id;
    std::string gold;
    std::string predicted;
    bool proven = false;
    bool correct = false;
};

struct AccuracyReport {
    int samples = 0;
    std::optional<double> overall;  // empty when the denominator is zero
    std::optional<double> quick;
    std::optional<double> hard;
    int correct_total = 0;
    int quick_total = 0, quick_correct = 0;
    int hard_total = 0, hard_correct = 0;
    std::vector<PerClueResult> per_clue;  // sorted by clue id
    unsigned seed = 0;
};

inline void to_json(nlohmann::json& j, const PerClueResult& r) {
    j = nlohmann::json{{"id", r.id},
                       {"gold", r.gold},
                       {"predicted", r.predicted},
                       {"proven", r.proven},
                       {"correct", r.correct}};
}

inline void to_json(nlohmann::json& j, const AccuracyReport& r) {
    auto rate = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j = nlohmann::json{{"samples", r.samples},
                       {"overall", rate(r.overall)},
                       {"quick", rate(r.quick)},
                       {"hard", rate(r.hard)},
                       {"correct_total", r.correct_total},
                       {"quick_total", r.quick_total},
                       {"quick_correct", r.quick_correct},
                       {"hard_total", r.hard_total},
                       {"hard_correct", r.hard_correct},
                       {"seed", r.seed},
                       {"per_clue", r.per_clue}};
}

struct SolverAnswer {
    std::string answer;
    bool proven = false;
};

using ClueSolver = std::function<SolverAnswer(const ClueRecord&)>;

// Draws a seeded uniform sample without replacement, solves each clue in
// id-sorted order, and assembles the report.  Solver exceptions count as
// incorrect predictions, never abort the run.
inline AccuracyReport evaluate(const std::vector<ClueRecord>& records,
                               const ClueSolver& solver, int sample_size, unsigned seed) {
    if (sample_size < 0 || static_cast<size_t>(sample_size) > records.size())
        throw std::invalid_argument("sample_size must be within [0, records]");

    AccuracyReport report;
    report.seed = seed;
    report.samples = sample_size;
    if (sample_size == 0) return report;  // rates stay undefined

    std::vector<size_t> indices(records.size());
    std::iota(indices.begin(), indices.end(), 0);
    std::mt19937 rng(seed);
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(static_cast<size_t>(sample_size));

    std::vector<const ClueRecord*> sample;
    for (size_t i : indices) sample.push_back(&records[i]);
    std::sort(sample.begin(), sample.end(),
              [](const ClueRecord* a, const ClueRecord* b) { return a->id < b->id; });

    for (const ClueRecord* rec : sample) {
        PerClueResult row;
        row.id = rec->id;
        row.gold = rec->answer;
        try {
            SolverAnswer out = solver(*rec);
            row.predicted = normalise_answer(out.answer);
            row.proven = out.proven;
        } catch (const std::exception&) {
            row.predicted.clear();
            row.proven = false;
        }
        row.correct = !row.predicted.empty() && answers_equal(row.predicted, row.gold);

        if (row.correct) ++report.correct_total;
        if (rec->quick) {
            ++report.quick_total;
            if (row.correct) ++report.quick_correct;
        } else {
            ++report.hard_total;
            if (row.correct) ++report.hard_correct;
        }
        report.per_clue.push_back(std::move(row));
    }

    report.overall = static_cast<double>(report.correct_total) / report.samples;
    if (report.quick_total > 0)
        report.quick = static_cast<double>(report.quick_correct) / report.quick_total;
    if (report.hard_total > 0)
        report.hard = static_cast<double>(report.hard_correct) / report.hard_total;
    return report;
}

}  // namespace cryptic
