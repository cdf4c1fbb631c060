#include <doctest.h>

#include <map>

#include "cryptic/pipeline.hpp"
#include "cryptic/verifier.hpp"
#include "testutil.hpp"

using namespace cryptic;

namespace {

PromptBundle shipped_bundle() {
    return PromptBundle::load_dir(testutil::resource_dir() / "prompts");
}

// Accumulates ByHash fixture entries in serving order.
struct FixtureBuilder {
    ScriptedFixture fixture{ScriptedFixture::Mode::ByHash, {}};
    void add(const std::vector<ChatMessage>& messages, std::string response) {
        fixture.entries.push_back({fingerprint(messages), std::move(response)});
    }
    ScriptedBackend backend() const { return ScriptedBackend(fixture); }
};

const char* kBankingClue = "outlaw leader managing money";

std::string banking_wordplay_response() {
    return "definition: outlaw leader {managing money}\n"
           "wordplay: BAN (outlaw) + KING (leader)";
}

std::string banking_bad_proof() {
    return "def proof(answer=\"BANKING\", clue=\"outlaw leader managing money\", pattern='7'):\n"
           "  \"\"\"\n"
           "  definition: outlaw leader {managing money}\n"
           "  wordplay: BAN (outlaw) + KING (leader)\n"
           "  \"\"\"\n"
           "  assert is_synonym(\"outlaw\", \"BANK\")\n"
           "  assert is_synonym(\"leader\", \"KING\")\n"
           "  assert \"BAN\" + \"KING\" == \"BANKING\"\n"
           "proof()\n";
}

std::string banking_good_proof() {
    return "def proof(answer=\"BANKING\", clue=\"outlaw leader managing money\", pattern='7'):\n"
           "  \"\"\"\n"
           "  definition: outlaw leader {managing money}\n"
           "  wordplay: BAN (outlaw) + KING (leader)\n"
           "  \"\"\"\n"
           "  assert is_synonym(\"outlaw\", \"BAN\")\n"
           "  assert is_synonym(\"leader\", \"KING\")\n"
           "  assert \"BAN\" + \"KING\" == \"BANKING\"\n"
           "  assert is_synonym(\"managing money\", \"BANKING\", pattern='7')\n"
           "proof()\n";
}

// Feedback the pipeline will generate for the bad proof, reproduced through
// the same public functions so rewrite-prompt fingerprints line up.
std::string banking_feedback(const KnowledgeBase& kb) {
    auto parsed = parse_proof(banking_bad_proof());
    REQUIRE(parsed.ok());
    return render_feedback(verify(parsed.value(), kb));
}

int count_verify_records(const SolveResult& result) {
    int n = 0;
    for (const auto& r : result.trace)
        if (r.stage == "verify") ++n;
    return n;
}

}  // namespace

TEST_CASE("build_candidates resamples pattern failures and drops non-words") {
    KnowledgeBase kb = testutil::shipped_kb();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 20;

    auto messages = build_answer_prompt("clue", "5", Orientation::Across);
    FixtureBuilder fb;
    // three pattern-invalid candidates come first and are resampled
    fb.add(messages, "BIRD");
    fb.add(messages, "WADERS");
    fb.add(messages, "A");
    std::vector<std::string> valid = {
        "HERON", "HERON", "HERON", "HERON", "HERON", "HERON", "HERON", "HERON",
        "EGRET", "EGRET", "EGRET", "EGRET", "EGRET", "EGRET",
        "SNIPE", "SNIPE", "SNIPE", "CRANE", "CRANE", "ZZZZZ"};
    for (const auto& v : valid) fb.add(messages, v);

    ScriptedBackend backend = fb.backend();
    CandidateSet set = build_candidates("clue", "5", Orientation::Across, cfg, kb, backend);

    // 23 samples consumed: 3 invalid + 20 pattern-valid
    CHECK(backend.remaining() == 0);
    // ZZZZZ is pattern-valid but not a dictionary word: dropped, not resampled
    CHECK(set.counts.count("ZZZZZ") == 0);

    std::map<std::string, int> expected;
    for (const auto& v : valid)
        if (v != "ZZZZZ") expected[v]++;
    CHECK(set.counts == expected);
    CHECK(set.order == std::vector<std::string>{"HERON", "EGRET", "SNIPE", "CRANE"});
}

TEST_CASE("build_candidates with a single repeated answer") {
    KnowledgeBase kb = testutil::shipped_kb();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 20;
    auto messages = build_answer_prompt("c", "5", Orientation::Across);
    FixtureBuilder fb;
    for (int i = 0; i < 20; ++i) fb.add(messages, "HERON");
    ScriptedBackend backend = fb.backend();
    CandidateSet set = build_candidates("c", "5", Orientation::Across, cfg, kb, backend);
    CHECK(set.counts == std::map<std::string, int>{{"HERON", 20}});
    CHECK(set.order == std::vector<std::string>{"HERON"});
}

TEST_CASE("build_candidates raises EmptyCandidateSet when nothing survives") {
    KnowledgeBase kb = testutil::shipped_kb();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 2;
    auto messages = build_answer_prompt("c", "5", Orientation::Across);
    FixtureBuilder fb;
    fb.add(messages, "ZZZZZ");
    fb.add(messages, "QQQQQ");
    ScriptedBackend backend = fb.backend();
    CHECK_THROWS_AS(build_candidates("c", "5", Orientation::Across, cfg, kb, backend),
                    EmptyCandidateSetError);
}

TEST_CASE("build_candidates rejects malformed patterns loudly") {
    KnowledgeBase kb = testutil::shipped_kb();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 1;
    auto messages = build_answer_prompt("c", "bad", Orientation::Across);
    FixtureBuilder fb;
    fb.add(messages, "HERON");
    ScriptedBackend backend = fb.backend();
    CHECK_THROWS_AS(build_candidates("c", "bad", Orientation::Across, cfg, kb, backend),
                    std::invalid_argument);
}

TEST_CASE("select_fallback prefers frequency then lexicographic order") {
    CHECK(select_fallback(CandidateSet::from_samples({"A", "A", "B", "B"})) == "A");
    CHECK(select_fallback(CandidateSet::from_samples(
              {"EGRET", "EGRET", "EGRET", "HERON", "HERON"})) == "EGRET");
    CHECK(select_fallback(CandidateSet::from_samples({"X"})) == "X");
    CHECK_THROWS_AS(select_fallback(CandidateSet{}), EmptyCandidateSetError);
}

TEST_CASE("candidate frequencies equal a brute-force count of the samples") {
    std::vector<std::string> samples = {"EGRET", "HERON", "EGRET", "SNIPE",
                                        "EGRET", "HERON", "EGRET"};
    CandidateSet set = CandidateSet::from_samples(samples);
    for (const auto& [answer, count] : set.counts) {
        int brute = 0;
        for (const auto& s : samples)
            if (s == answer) ++brute;
        CHECK(count == brute);
    }
}

TEST_CASE("solve: first rewrite succeeds after a failed formalisation") {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = shipped_bundle();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 1;
    cfg.wordplays_per_candidate = 1;
    cfg.max_rewrites = 2;

    FixtureBuilder fb;
    fb.add(build_answer_prompt(kBankingClue, "7", Orientation::Across), "BANKING");
    fb.add(build_wordplay_prompt(kBankingClue, "BANKING"), banking_wordplay_response());
    fb.add(build_formalise_prompt(kBankingClue, "7", "BANKING",
                                  "outlaw leader {managing money}",
                                  "BAN (outlaw) + KING (leader)", bundle),
           banking_bad_proof());
    fb.add(build_rewrite_prompt(banking_bad_proof(), banking_feedback(kb), bundle),
           banking_good_proof());

    ScriptedBackend backend = fb.backend();
    SolveResult result =
        solve_clue(kBankingClue, "7", Orientation::Across, cfg, kb, backend, bundle);

    CHECK(result.answer == "BANKING");
    CHECK(result.proven);
    REQUIRE(result.proof.has_value());
    CHECK(count_verify_records(result) == 2);  // one failure, one success
    CHECK(result.trace.back().verdict == "success");
    CHECK(result.trace.back().attempt == 2);
    CHECK(proof_persists(result, kb));
}

TEST_CASE("solve: attempts per wordplay never exceed 1 + max_rewrites") {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = shipped_bundle();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 1;
    cfg.wordplays_per_candidate = 1;
    cfg.max_rewrites = 2;

    std::string feedback = banking_feedback(kb);
    FixtureBuilder fb;
    fb.add(build_answer_prompt(kBankingClue, "7", Orientation::Across), "BANKING");
    fb.add(build_wordplay_prompt(kBankingClue, "BANKING"), banking_wordplay_response());
    fb.add(build_formalise_prompt(kBankingClue, "7", "BANKING",
                                  "outlaw leader {managing money}",
                                  "BAN (outlaw) + KING (leader)", bundle),
           banking_bad_proof());
    // rewrites keep returning the same failing proof
    fb.add(build_rewrite_prompt(banking_bad_proof(), feedback, bundle), banking_bad_proof());
    fb.add(build_rewrite_prompt(banking_bad_proof(), feedback, bundle), banking_bad_proof());

    ScriptedBackend backend = fb.backend();
    SolveResult result =
        solve_clue(kBankingClue, "7", Orientation::Across, cfg, kb, backend, bundle);

    CHECK_FALSE(result.proven);
    CHECK(result.answer == "BANKING");  // frequency fallback
    CHECK(count_verify_records(result) == 3);  // 1 + max_rewrites
    CHECK(backend.remaining() == 0);
}

TEST_CASE("solve: duplicate wordplays are deduplicated before formalisation") {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = shipped_bundle();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 1;
    cfg.wordplays_per_candidate = 3;
    cfg.max_rewrites = 0;

    FixtureBuilder fb;
    fb.add(build_answer_prompt(kBankingClue, "7", Orientation::Across), "BANKING");
    for (int i = 0; i < 3; ++i)
        fb.add(build_wordplay_prompt(kBankingClue, "BANKING"), banking_wordplay_response());
    fb.add(build_formalise_prompt(kBankingClue, "7", "BANKING",
                                  "outlaw leader {managing money}",
                                  "BAN (outlaw) + KING (leader)", bundle),
           banking_good_proof());

    ScriptedBackend backend = fb.backend();
    SolveResult result =
        solve_clue(kBankingClue, "7", Orientation::Across, cfg, kb, backend, bundle);
    CHECK(result.proven);
    CHECK(backend.remaining() == 0);  // exactly one formalise request happened
}

TEST_CASE("solve: gateway failures degrade to the next candidate, then fallback") {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = shipped_bundle();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 2;
    cfg.wordplays_per_candidate = 1;
    cfg.max_rewrites = 0;

    auto messages = build_answer_prompt("clue", "5", Orientation::Across);
    FixtureBuilder fb;
    fb.add(messages, "EGRET");
    fb.add(messages, "HERON");
    // no wordplay fixtures at all: both candidates fail with FixtureMiss

    ScriptedBackend backend = fb.backend();
    SolveResult result = solve_clue("clue", "5", Orientation::Across, cfg, kb, backend, bundle);
    CHECK_FALSE(result.proven);
    CHECK(result.answer == "EGRET");  // lexicographic tie-break at frequency 1
    int gateway_errors = 0;
    for (const auto& r : result.trace)
        if (r.verdict == "gateway_error") ++gateway_errors;
    CHECK(gateway_errors == 2);
}

TEST_CASE("solve: unparseable formalisations trigger parse feedback rewrites") {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = shipped_bundle();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 1;
    cfg.wordplays_per_candidate = 1;
    cfg.max_rewrites = 1;

    std::string garbled = "def proof(answer=\"BANKING\", clue=\"c\", pattern='7'):\n"
                          "  assert action_type(\"bags\", Action.IS_OUTSIDE)\n";
    auto parsed = parse_proof(garbled);
    REQUIRE_FALSE(parsed.ok());
    std::string feedback = render_parse_feedback(parsed.error());

    FixtureBuilder fb;
    fb.add(build_answer_prompt(kBankingClue, "7", Orientation::Across), "BANKING");
    fb.add(build_wordplay_prompt(kBankingClue, "BANKING"), banking_wordplay_response());
    fb.add(build_formalise_prompt(kBankingClue, "7", "BANKING",
                                  "outlaw leader {managing money}",
                                  "BAN (outlaw) + KING (leader)", bundle),
           garbled);
    fb.add(build_rewrite_prompt(garbled, feedback, bundle), banking_good_proof());

    ScriptedBackend backend = fb.backend();
    SolveResult result =
        solve_clue(kBankingClue, "7", Orientation::Across, cfg, kb, backend, bundle);
    CHECK(result.proven);
    REQUIRE(result.trace.size() >= 2);
    CHECK(result.trace[0].verdict == "parse_error");
    CHECK(result.trace.back().verdict == "success");
}

TEST_CASE("solve: letter mask filters candidates; contradictions fall back unfiltered") {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = shipped_bundle();
    PipelineConfig cfg;
    cfg.num_answer_candidates = 3;
    cfg.wordplays_per_candidate = 1;
    cfg.max_rewrites = 0;

    auto messages = build_answer_prompt("clue", "5", Orientation::Across);

    LetterMask h_mask;
    h_mask.length = 5;
    h_mask.known[0] = 'H';

    {
        FixtureBuilder fb;
        fb.add(messages, "EGRET");
        fb.add(messages, "EGRET");
        fb.add(messages, "HERON");
        // HERON survives the mask; its wordplay generation misses -> fallback HERON
        ScriptedBackend backend = fb.backend();
        SolveResult result = solve_clue("clue", "5", Orientation::Across, cfg, kb, backend,
                                        bundle, &h_mask);
        CHECK(result.answer == "HERON");
    }

    LetterMask z_mask;
    z_mask.length = 5;
    z_mask.known[0] = 'Z';
    {
        FixtureBuilder fb;
        fb.add(messages, "EGRET");
        fb.add(messages, "EGRET");
        fb.add(messages, "HERON");
        ScriptedBackend backend = fb.backend();
        SolveResult result = solve_clue("clue", "5", Orientation::Across, cfg, kb, backend,
                                        bundle, &z_mask);
        CHECK_FALSE(result.proven);
        CHECK(result.answer == "EGRET");  // unfiltered most-frequent
        bool saw_mask_failure = false;
        for (const auto& r : result.trace)
            if (r.stage == "mask_filter") saw_mask_failure = true;
        CHECK(saw_mask_failure);
    }
}

TEST_CASE("trace serialisation is stable JSON lines") {
    std::vector<TraceRecord> trace = {
        {"HERON", "woman (HER) has on (ON)", "verify", "success", 1, {}, ""},
        {"", "", "fallback", "fallback", 0, {"hint"}, "detail"},
    };
    std::string jsonl = trace_to_jsonl(trace);
    CHECK(jsonl == trace_to_jsonl(trace));
    auto first_line = jsonl.substr(0, jsonl.find('\n'));
    auto parsed = nlohmann::json::parse(first_line);
    CHECK(parsed["candidate"] == "HERON");
    CHECK(parsed["verdict"] == "success");
}
