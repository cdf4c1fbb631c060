#pragma once

// Full solve orchestration: sample answer candidates, group by frequency,
// generate wordplays per candidate, formalise each into a proof, verify, and
// rewrite on failure up to the configured bound.  The first verified proof
// wins; otherwise the most frequent candidate is returned unproven.
//
// Every attempt is recorded in a machine-readable trace; with a scripted
// gateway the whole solve is deterministic and replayable.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cryptic/gateway.hpp"
#include "cryptic/knowledge.hpp"
#include "cryptic/mask.hpp"
#include "cryptic/parser.hpp"
#include "cryptic/types.hpp"
#include "cryptic/verifier.hpp"

namespace cryptic {

enum class CandidateOrder { ByFrequencyDesc };

struct PipelineConfig {
    int num_answer_candidates = 20;
    int wordplays_per_candidate = 10;
    int max_rewrites = 2;
    double answer_temperature = 1.0;
    int regeneration_budget = 0;  // 0 -> 3 * num_answer_candidates
    CandidateOrder candidate_order = CandidateOrder::ByFrequencyDesc;

    int effective_budget() const {
        return regeneration_budget > 0 ? regeneration_budget : 3 * num_answer_candidates;
    }

    void validate() const {
        if (num_answer_candidates < 1 || wordplays_per_candidate < 1)
            throw std::invalid_argument("candidate and wordplay counts must be >= 1");
        if (max_rewrites < 0)
            throw std::invalid_argument("max_rewrites must be >= 0");
        if (regeneration_budget < 0)
            throw std::invalid_argument("regeneration_budget must be >= 0");
    }
};

class EmptyCandidateSetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CandidateSet {
    std::map<std::string, int> counts;
    std::vector<std::string> order;  // frequency desc, lexicographic tie-break

    bool empty() const { return counts.empty(); }

    static CandidateSet from_samples(const std::vector<std::string>& samples) {
        CandidateSet set;
        for (const auto& s : samples) set.counts[s]++;
        for (const auto& [answer, _] : set.counts) set.order.push_back(answer);
        std::sort(set.order.begin(), set.order.end(),
                  [&](const std::string& a, const std::string& b) {
                      int ca = set.counts.at(a), cb = set.counts.at(b);
                      if (ca != cb) return ca > cb;
                      return a < b;
                  });
        return set;
    }
};

struct TraceRecord {
    std::string candidate;
    std::string wordplay;
    std::string stage;    // candidate_generation | mask_filter | wordplay_generation
                          // | formalise | verify | rewrite | fallback
    std::string verdict;  // success | failed | parse_error | gateway_error
                          // | malformed_response | fallback
    int attempt = 0;      // formalisation attempt number; 0 outside the loop
    std::vector<std::string> hints;
    std::string detail;
};

inline void to_json(nlohmann::json& j, const TraceRecord& r) {
    j = nlohmann::json{{"candidate", r.candidate}, {"wordplay", r.wordplay},
                       {"stage", r.stage},         {"verdict", r.verdict},
                       {"attempt", r.attempt},     {"hints", r.hints},
                       {"detail", r.detail}};
}

inline std::string trace_to_jsonl(const std::vector<TraceRecord>& trace) {
    std::string out;
    for (const auto& r : trace) {
        nlohmann::json j = r;
        out += j.dump();
        out += "\n";
    }
    return out;
}

struct SolveResult {
    std::string answer;
    bool proven = false;
    std::optional<ProofScript> proof;  // present iff proven
    std::string proof_source;          // verified source text, when proven
    std::vector<TraceRecord> trace;
};

inline void to_json(nlohmann::json& j, const SolveResult& r) {
    j = nlohmann::json{{"answer", r.answer},
                       {"proven", r.proven},
                       {"proof", r.proven ? nlohmann::json(r.proof_source)
                                          : nlohmann::json(nullptr)},
                       {"trace", r.trace}};
}

namespace detail {

inline std::string gateway_verdict(const GatewayError& e) {
    if (dynamic_cast<const MalformedResponseError*>(&e)) return "malformed_response";
    return "gateway_error";
}

inline std::vector<std::string> report_hints(const VerificationReport& report) {
    std::vector<std::string> hints;
    for (const auto& lint : report.lint_violations)
        hints.push_back(lint.message + " (line " + std::to_string(lint.line) + ")");
    for (const auto& o : report.outcomes) {
        if (o.status == AssertStatus::Pass) continue;
        hints.push_back("line " + std::to_string(o.line) + ": " + o.hint.value_or(""));
    }
    return hints;
}

}  // namespace detail

// Samples candidates until num_answer_candidates pattern-valid answers are
// collected or the regeneration budget runs out; pattern failures are
// resampled, dictionary failures are dropped afterwards without resampling.
inline CandidateSet build_candidates(std::string_view clue, std::string_view pattern,
                                     Orientation ad, const PipelineConfig& cfg,
                                     const KnowledgeBase& kb, ChatBackend& backend,
                                     std::vector<TraceRecord>* trace = nullptr) {
    cfg.validate();
    const int budget = cfg.effective_budget();

    std::vector<std::string> kept;
    for (int attempts = 0;
         static_cast<int>(kept.size()) < cfg.num_answer_candidates && attempts < budget;
         ++attempts) {
        std::string candidate;
        try {
            candidate = generate_answers(clue, pattern, ad, 1, backend,
                                         cfg.answer_temperature)[0];
        } catch (const GatewayError& e) {
            if (trace)
                trace->push_back({"", "", "candidate_generation",
                                  detail::gateway_verdict(e), 0, {}, e.what()});
            break;
        }
        if (candidate.empty()) continue;
        auto m = matches_pattern(candidate, pattern);
        if (!m.has_value())
            throw std::invalid_argument("malformed pattern '" + std::string(pattern) + "'");
        if (!*m) continue;  // rejected: regenerate
        kept.push_back(std::move(candidate));
    }

    std::vector<std::string> surviving;
    for (auto& c : kept)
        if (kb.known_word(c)) surviving.push_back(std::move(c));

    if (surviving.empty())
        throw EmptyCandidateSetError("no candidate survived pattern and dictionary filtering");
    return CandidateSet::from_samples(surviving);
}

// Most frequent candidate, lexicographic tie-break.
inline std::string select_fallback(const CandidateSet& candidates) {
    if (candidates.empty())
        throw EmptyCandidateSetError("cannot select a fallback from an empty candidate set");
    return candidates.order.front();
}

// Mask filtering over a candidate set: keeps exactly the mask-consistent
// candidates with their frequencies.
inline CandidateSet filter_by_mask(const CandidateSet& candidates, const LetterMask& mask) {
    std::vector<std::string> kept;
    for (const auto& [answer, count] : candidates.counts)
        if (mask_accepts(mask, answer))
            for (int i = 0; i < count; ++i) kept.push_back(answer);
    if (kept.empty()) return CandidateSet{};
    return CandidateSet::from_samples(kept);
}

inline SolveResult solve_clue(std::string_view clue, std::string_view pattern,
                              Orientation ad, const PipelineConfig& cfg,
                              const KnowledgeBase& kb, ChatBackend& backend,
                              const PromptBundle& bundle,
                              const LetterMask* mask = nullptr) {
    cfg.validate();
    SolveResult result;
    auto& trace = result.trace;

    CandidateSet candidates = build_candidates(clue, pattern, ad, cfg, kb, backend, &trace);

    CandidateSet pool = candidates;
    if (mask) {
        pool = filter_by_mask(candidates, *mask);
        if (pool.empty()) {
            // Mask contradicts everything: fall back to the unfiltered best.
            trace.push_back({"", "", "mask_filter", "failed", 0, {},
                             "no candidate agrees with the known letters"});
            result.answer = select_fallback(candidates);
            result.proven = false;
            trace.push_back({result.answer, "", "fallback", "fallback", 0, {},
                             "most frequent unfiltered candidate"});
            return result;
        }
    }

    for (const auto& candidate : pool.order) {
        std::vector<WordplaySuggestion> wordplays;
        try {
            wordplays = generate_wordplays(clue, candidate, cfg.wordplays_per_candidate,
                                           backend);
        } catch (const GatewayError& e) {
            trace.push_back({candidate, "", "wordplay_generation",
                             detail::gateway_verdict(e), 0, {}, e.what()});
            continue;
        }

        // Exact-string duplicates add nothing; keep first occurrence order.
        std::vector<WordplaySuggestion> unique;
        for (auto& wp : wordplays) {
            bool seen = false;
            for (const auto& u : unique)
                if (u.wordplay == wp.wordplay) { seen = true; break; }
            if (!seen) unique.push_back(std::move(wp));
        }

        for (const auto& wp : unique) {
            std::string source;
            try {
                source = formalise(clue, pattern, candidate, wp.definition, wp.wordplay,
                                   bundle, backend);
            } catch (const GatewayError& e) {
                trace.push_back({candidate, wp.wordplay, "formalise",
                                 detail::gateway_verdict(e), 1, {}, e.what()});
                continue;
            }

            for (int attempt = 1; attempt <= 1 + cfg.max_rewrites; ++attempt) {
                std::string feedback;
                auto parsed = parse_proof(source);
                if (!parsed.ok()) {
                    trace.push_back({candidate, wp.wordplay, "verify", "parse_error",
                                     attempt, {parsed.error().message}, ""});
                    if (attempt > cfg.max_rewrites) break;
                    feedback = render_parse_feedback(parsed.error());
                } else {
                    VerificationReport report = verify(parsed.value(), kb);
                    if (report.verdict == Verdict::Success) {
                        trace.push_back({candidate, wp.wordplay, "verify", "success",
                                         attempt, {}, ""});
                        result.answer = candidate;
                        result.proven = true;
                        result.proof = parsed.value();
                        result.proof_source = source;
                        return result;
                    }
                    trace.push_back({candidate, wp.wordplay, "verify", "failed", attempt,
                                     detail::report_hints(report), ""});
                    if (attempt > cfg.max_rewrites) break;
                    feedback = render_feedback(report);
                }

                try {
                    source = rewrite(source, feedback, bundle, backend);
                } catch (const GatewayError& e) {
                    trace.push_back({candidate, wp.wordplay, "rewrite",
                                     detail::gateway_verdict(e), attempt, {}, e.what()});
                    break;
                }
            }
        }
    }

    result.answer = select_fallback(pool);
    result.proven = false;
    trace.push_back({result.answer, "", "fallback", "fallback", 0, {},
                     "no formalisation verified; most frequent candidate"});
    return result;
}

// Re-checks a returned proof against the same knowledge base.
inline bool proof_persists(const SolveResult& result, const KnowledgeBase& kb) {
    if (!result.proven || !result.proof) return false;
    return verify(*result.proof, kb).verdict == Verdict::Success;
}

}  // namespace cryptic
