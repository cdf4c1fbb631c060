// Acceptance suite: one check routine per criterion, each printing a single
// PASS/FAIL line.  Run with no arguments for all criteria, or pass criterion
// numbers to run a subset (the ctest entries run them one by one).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cryptic/embedding.hpp"
#include "cryptic/evalharness.hpp"
#include "cryptic/gateway.hpp"
#include "cryptic/lint.hpp"
#include "cryptic/mask.hpp"
#include "cryptic/parser.hpp"
#include "cryptic/pipeline.hpp"
#include "cryptic/verifier.hpp"
#include "testutil.hpp"

using namespace cryptic;

namespace {

struct Checker {
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename A, typename B>
    void equal(const A& actual, const B& expected, const std::string& what) {
        if (!(actual == expected)) failures.push_back(what);
    }
};

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
    return text;
}

std::string shot(const char* name) {
    return testutil::read_file(testutil::resource_dir() / "prompts" / "shots" / name);
}

bool has_lint(const std::vector<LintViolation>& lints, LintCode code) {
    for (const auto& v : lints)
        if (v.code == code) return true;
    return false;
}

// ---------------------------------------------------------------------------
// 1. Golden-proof suite

void criterion_1(Checker& c) {
    KnowledgeBase kb = testutil::shipped_kb();
    const std::vector<std::pair<const char*, const char*>> goldens = {
        {"proof_01.txt", "ONCE"}, {"proof_02.txt", "DECIMAL"}, {"proof_03.txt", "SUPERMARKET"}};

    auto start = std::chrono::steady_clock::now();
    for (const auto& [file, answer] : goldens) {
        auto parsed = parse_proof(shot(file));
        if (!parsed.ok()) {
            c.check(false, std::string(file) + " failed to parse: " + parsed.error().message);
            continue;
        }
        c.check(parsed.value().answer == answer, std::string(file) + " answer mismatch");
        c.check(lint_proof(parsed.value()).empty(), std::string(file) + " is not lint-clean");
        VerificationReport report = verify(parsed.value(), kb);
        if (report.verdict != Verdict::Success) {
            std::string detail = std::string(file) + " did not verify:";
            for (const auto& o : report.outcomes)
                if (o.status != AssertStatus::Pass)
                    detail += " [line " + std::to_string(o.line) + ": " + o.hint.value_or("") + "]";
            c.check(false, detail);
        }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    c.check(elapsed < 1000, "golden suite took " + std::to_string(elapsed) + "ms (>= 1s)");

    // Uncorrected text: the enum typo is a parse error...
    std::string uncorrected = replace_all(
        replace_all(shot("proof_03.txt"), "Action.GOES_OUTSIDE", "Action.IS_OUTSIDE"),
        "is_synonym(\"fat\"", "is_synomym(\"fat\"");
    uncorrected = replace_all(uncorrected, "is_synonym(\"brand\"", "is_synomym(\"brand\"");
    auto bad = parse_proof(uncorrected);
    c.check(!bad.ok(), "uncorrected SUPERMARKET text parsed despite Action.IS_OUTSIDE");
    if (!bad.ok())
        c.check(bad.error().message.find("IS_OUTSIDE") != std::string::npos,
                "parse error does not name IS_OUTSIDE");

    // ...and the function typo alone is an UnknownFunction lint.
    std::string typo_only =
        replace_all(shot("proof_03.txt"), "is_synonym(\"fat\"", "is_synomym(\"fat\"");
    auto parsed_typo = parse_proof(typo_only);
    c.check(parsed_typo.ok(), "is_synomym variant should still parse");
    if (parsed_typo.ok()) {
        auto lints = lint_proof(parsed_typo.value());
        c.check(has_lint(lints, LintCode::UnknownFunction),
                "is_synomym not flagged as UnknownFunction");
        c.check(verify(parsed_typo.value(), kb).verdict == Verdict::Failed,
                "is_synomym variant verified despite the unknown function");
    }
}

// ---------------------------------------------------------------------------
// 2. Hint fidelity

void criterion_2(Checker& c) {
    KnowledgeBase kb = testutil::shipped_kb();
    // knock out the forward mapping so the lookup fails; the reverse
    // expansions seeded from the fixture file stay available for the hint
    kb.remove_abbreviation("artist", "RA");

    auto parsed = parse_proof(
        "def proof(answer=\"X\", clue=\"c\", pattern='1'):\n"
        "  assert is_abbreviation(\"an Artist\", \"RA\")\n"
        "  assert action_type(\"goes crazy\", Action.ANAGRAM)\n");
    if (!parsed.ok()) {
        c.check(false, "hint proof failed to parse");
        return;
    }
    VerificationReport report = verify(parsed.value(), kb);
    c.check(report.verdict == Verdict::Failed, "hint proof unexpectedly verified");
    std::string feedback = render_feedback(report);

    c.check(feedback.find("'RA' is an abbreviation for : artist, artillery, "
                          "Royal Artillery, gunners, painter") != std::string::npos,
            "feedback lacks the RA expansion list");
    c.check(feedback.find("but 'crazy' does") != std::string::npos,
            "feedback lacks the 'crazy' sub-phrase hint");
}

// ---------------------------------------------------------------------------
// 3. Shortcut lints

void criterion_3(Checker& c) {
    KnowledgeBase kb = testutil::shipped_kb();

    auto verdict_with = [&](const std::string& source, LintCode code,
                            const std::string& what) {
        auto parsed = parse_proof(source);
        if (!parsed.ok()) {
            c.check(false, what + ": failed to parse");
            return;
        }
        VerificationReport report = verify(parsed.value(), kb);
        c.check(report.verdict == Verdict::Failed, what + ": verdict is not Failed");
        c.check(has_lint(report.lint_violations, code), what + ": lint code missing");
    };

    verdict_with("def proof(answer=\"X\", clue=\"c\", pattern='1'):\n"
                 "  \"\"\"\n  definition: {c}\n  wordplay: X\n  \"\"\"\n"
                 "  # nothing asserted here\n",
                 LintCode::TooFewAsserts, "comments-only proof");

    verdict_with("def proof(answer=\"DECIMAL\", clue=\"c\", pattern='7'):\n"
                 "  assert is_anagram(\"MEDICAL\", \"DECIMAL\")\n",
                 LintCode::TooFewAsserts, "single-assert proof");

    verdict_with("def proof(answer=\"X\", clue=\"c\", pattern='1'):\n"
                 "  assert is_anagram(\"AB\", \"AC\") == False\n"
                 "  assert is_anagram(\"AB\", \"AB\")\n",
                 LintCode::BooleanLiteralComparison, "boolean literal comparison");

    verdict_with("def proof(answer=\"X\", clue=\"c\", pattern='1'):\n"
                 "  if answer == \"X\":\n"
                 "    assert is_anagram(\"AB\", \"BA\")\n"
                 "  assert is_anagram(\"ACT\", \"CAT\")\n"
                 "  assert is_anagram(\"CAT\", \"ACT\")\n",
                 LintCode::ControlFlow, "conditional statement");

    // 1,000 generated scripts with fewer than 2 asserts: none may verify.
    testutil::ScriptGen gen(2024);
    int verified = 0;
    for (int i = 0; i < 1000; ++i) {
        ProofScript script = gen.script(gen.rng()() % 2);  // 0 or 1 asserts
        if (verify(script, kb).verdict == Verdict::Success) ++verified;
    }
    c.equal(verified, 0, std::to_string(verified) + " under-asserted scripts verified");
}

// ---------------------------------------------------------------------------
// 4. Anagram oracle equivalence

void criterion_4(Checker& c) {
    KnowledgeBase kb = testutil::shipped_kb();

    std::vector<std::string> words;
    for (const auto& w : kb.wordlist_entries()) {
        std::string letters = letters_only(w);
        if (!letters.empty() && letters.size() <= 7 && w.find(' ') == std::string::npos)
            words.push_back(letters);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    if (words.size() < 200) {
        c.check(false, "fixture wordlist has fewer than 200 short words");
        return;
    }
    words.resize(200);

    // Brute force: enumerate distinct permutations of the letters.
    auto oracle = [](std::string letters, const std::string& target) {
        if (letters.empty() || letters.size() != target.size()) return false;
        std::sort(letters.begin(), letters.end());
        do {
            if (letters == target) return true;
        } while (std::next_permutation(letters.begin(), letters.end()));
        return false;
    };

    long disagreements = 0;
    for (const auto& a : words) {
        for (const auto& b : words) {
            if (kb.is_anagram(a, b).ok != oracle(a, b)) {
                ++disagreements;
                if (disagreements <= 3)
                    c.check(false, "disagreement on (" + a + ", " + b + ")");
            }
        }
    }
    c.equal(disagreements, 0L,
            std::to_string(disagreements) + " oracle disagreements over 200x200 pairs");
}

// ---------------------------------------------------------------------------
// 5. End-to-end determinism (HERON scenario)

struct HeronScenario {
    ScriptedFixture fixture{ScriptedFixture::Mode::ByHash, {}};
    std::string passing_fingerprint;  // the HERON formalisation entry
};

std::string egret_bad_proof(int variant) {
    switch (variant) {
        case 0:
            return "def proof(answer=\"EGRET\", clue=\"wader woman has on\", pattern='5'):\n"
                   "  \"\"\"\n  definition: {wader} woman has on\n"
                   "  wordplay: woman (HER) on top of (REG - another word for on)\n  \"\"\"\n"
                   "  assert is_synonym(\"on\", \"REG\")\n"
                   "  assert \"HER\" + \"REG\" == \"EGRET\"\n"
                   "proof()\n";
        case 1:
            return "def proof(answer=\"EGRET\", clue=\"wader woman has on\", pattern='5'):\n"
                   "  \"\"\"\n  definition: {wader} woman has on\n"
                   "  wordplay: EG (woman has) + RET (on)\n  \"\"\"\n"
                   "  assert is_abbreviation(\"woman has\", \"EG\")\n"
                   "  assert is_synonym(\"on\", \"RET\")\n"
                   "  assert \"EG\" + \"RET\" == \"EGRET\"\n"
                   "proof()\n";
        default:
            return "def proof(answer=\"EGRET\", clue=\"wader woman has on\", pattern='5'):\n"
                   "  \"\"\"\n  definition: {wader} woman has on\n"
                   "  wordplay: woman (HER) has on/around (EG) - a wader bird\n  \"\"\"\n"
                   "  assert is_synonym(\"woman\", \"HER\")\n"
                   "  assert \"HER\" + \"EG\" == \"EGRET\"\n"
                   "proof()\n";
    }
}

std::string heron_good_proof() {
    return "def proof(answer=\"HERON\", clue=\"wader woman has on\", pattern='5'):\n"
           "  \"\"\"\n  definition: {wader} woman has on\n"
           "  wordplay: woman (HER) has on (ON)\n  \"\"\"\n"
           "  assert is_synonym(\"woman\", \"HER\")\n"
           "  assert \"HER\" + \"ON\" == \"HERON\"\n"
           "  assert is_synonym(\"wader\", \"HERON\", pattern='5')\n"
           "proof()\n";
}

HeronScenario build_heron_scenario(const KnowledgeBase& kb, const PromptBundle& bundle) {
    const std::string clue = "wader woman has on";
    HeronScenario scenario;
    auto add = [&](const std::vector<ChatMessage>& messages, const std::string& response) {
        scenario.fixture.entries.push_back({fingerprint(messages), response});
    };

    // 20 candidates: EGRET most frequent at 9, HERON at 6, then SNIPE, CRANE.
    auto answer_prompt = build_answer_prompt(clue, "5", Orientation::Across);
    for (int i = 0; i < 9; ++i) add(answer_prompt, "EGRET");
    for (int i = 0; i < 6; ++i) add(answer_prompt, "HERON");
    for (int i = 0; i < 3; ++i) add(answer_prompt, "SNIPE");
    for (int i = 0; i < 2; ++i) add(answer_prompt, "CRANE");

    // EGRET: three wordplay guesses, all formalising to failing proofs.
    const std::vector<std::string> egret_wordplays = {
        "woman (HER) on top of (REG - another word for on)",
        "EG (woman has) + RET (on)",
        "woman (HER) has on/around (EG) - a wader bird",
    };
    auto egret_wp_prompt = build_wordplay_prompt(clue, "EGRET");
    for (const auto& wp : egret_wordplays)
        add(egret_wp_prompt, "definition: {wader} woman has on\nwordplay: " + wp);
    for (int i = 0; i < 3; ++i) {
        std::string bad = egret_bad_proof(i);
        add(build_formalise_prompt(clue, "5", "EGRET", "{wader} woman has on",
                                   egret_wordplays[i], bundle),
            bad);
        auto parsed = parse_proof(bad);
        std::string feedback = render_feedback(verify(parsed.value(), kb));
        auto rewrite_prompt = build_rewrite_prompt(bad, feedback, bundle);
        add(rewrite_prompt, bad);  // rewrites keep failing identically
        add(rewrite_prompt, bad);
    }

    // HERON: first wordplay formalises to a passing proof.
    auto heron_wp_prompt = build_wordplay_prompt(clue, "HERON");
    add(heron_wp_prompt, "definition: {wader} woman has on\nwordplay: woman (HER) has on (ON)");
    add(heron_wp_prompt, "definition: {wader} woman has on\nwordplay: HER (woman) + ON (on)");
    add(heron_wp_prompt, "definition: {wader} woman has on\nwordplay: HERON (wader)");
    auto good_prompt = build_formalise_prompt(clue, "5", "HERON", "{wader} woman has on",
                                              "woman (HER) has on (ON)", bundle);
    scenario.passing_fingerprint = fingerprint(good_prompt);
    add(good_prompt, heron_good_proof());

    return scenario;
}

void criterion_5(Checker& c) {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = PromptBundle::load_dir(testutil::resource_dir() / "prompts");
    PipelineConfig cfg;
    cfg.num_answer_candidates = 20;
    cfg.wordplays_per_candidate = 3;
    cfg.max_rewrites = 2;

    HeronScenario scenario = build_heron_scenario(kb, bundle);
    const std::string clue = "wader woman has on";

    ScriptedBackend run1(scenario.fixture);
    SolveResult a = solve_clue(clue, "5", Orientation::Across, cfg, kb, run1, bundle);
    c.equal(a.answer, std::string("HERON"), "expected HERON, got " + a.answer);
    c.check(a.proven, "HERON was not proven");
    c.check(proof_persists(a, kb), "returned proof does not re-verify");

    ScriptedBackend run2(scenario.fixture);
    SolveResult b = solve_clue(clue, "5", Orientation::Across, cfg, kb, run2, bundle);
    c.check(trace_to_jsonl(a.trace) == trace_to_jsonl(b.trace),
            "two runs produced different traces");

    // Deleting the passing formalisation flips the result to the fallback.
    ScriptedFixture pruned = scenario.fixture;
    pruned.entries.erase(
        std::remove_if(pruned.entries.begin(), pruned.entries.end(),
                       [&](const ScriptedFixture::Entry& e) {
                           return e.match == scenario.passing_fingerprint;
                       }),
        pruned.entries.end());
    ScriptedBackend run3(pruned);
    SolveResult d = solve_clue(clue, "5", Orientation::Across, cfg, kb, run3, bundle);
    c.equal(d.answer, std::string("EGRET"), "fallback answer is not EGRET");
    c.check(!d.proven, "fallback result claims to be proven");
}

// ---------------------------------------------------------------------------
// 6. Rewrite loop bound

void criterion_6(Checker& c) {
    KnowledgeBase kb = testutil::shipped_kb();
    PromptBundle bundle = PromptBundle::load_dir(testutil::resource_dir() / "prompts");
    const std::string clue = "outlaw leader managing money";

    std::string bad =
        "def proof(answer=\"BANKING\", clue=\"outlaw leader managing money\", pattern='7'):\n"
        "  \"\"\"\n  definition: outlaw leader {managing money}\n"
        "  wordplay: BAN (outlaw) + KING (leader)\n  \"\"\"\n"
        "  assert is_synonym(\"outlaw\", \"BANK\")\n"
        "  assert is_synonym(\"leader\", \"KING\")\n"
        "proof()\n";
    std::string good =
        "def proof(answer=\"BANKING\", clue=\"outlaw leader managing money\", pattern='7'):\n"
        "  \"\"\"\n  definition: outlaw leader {managing money}\n"
        "  wordplay: BAN (outlaw) + KING (leader)\n  \"\"\"\n"
        "  assert is_synonym(\"outlaw\", \"BAN\")\n"
        "  assert is_synonym(\"leader\", \"KING\")\n"
        "  assert \"BAN\" + \"KING\" == \"BANKING\"\n"
        "proof()\n";
    std::string feedback = render_feedback(verify(parse_proof(bad).value(), kb));

    PipelineConfig cfg;
    cfg.num_answer_candidates = 1;
    cfg.wordplays_per_candidate = 1;
    cfg.max_rewrites = 2;

    auto base_fixture = [&]() {
        ScriptedFixture f{ScriptedFixture::Mode::ByHash, {}};
        auto add = [&](const std::vector<ChatMessage>& m, const std::string& r) {
            f.entries.push_back({fingerprint(m), r});
        };
        add(build_answer_prompt(clue, "7", Orientation::Across), "BANKING");
        add(build_wordplay_prompt(clue, "BANKING"),
            "definition: outlaw leader {managing money}\nwordplay: BAN (outlaw) + KING (leader)");
        add(build_formalise_prompt(clue, "7", "BANKING", "outlaw leader {managing money}",
                                   "BAN (outlaw) + KING (leader)", bundle),
            bad);
        return f;
    };

    auto count_attempts = [](const SolveResult& r) {
        int n = 0;
        for (const auto& rec : r.trace)
            if (rec.stage == "verify") ++n;
        return n;
    };

    {  // first rewrite succeeds: exactly 2 formalisation attempts
        ScriptedFixture f = base_fixture();
        f.entries.push_back({fingerprint(build_rewrite_prompt(bad, feedback, bundle)), good});
        ScriptedBackend backend(f);
        SolveResult r = solve_clue(clue, "7", Orientation::Across, cfg, kb, backend, bundle);
        c.check(r.proven, "rewrite scenario did not prove BANKING");
        c.equal(count_attempts(r), 2, "expected exactly 2 formalisation attempts");
    }
    {  // everything fails: exactly 1 + max_rewrites attempts, never more
        ScriptedFixture f = base_fixture();
        auto rw = fingerprint(build_rewrite_prompt(bad, feedback, bundle));
        f.entries.push_back({rw, bad});
        f.entries.push_back({rw, bad});
        ScriptedBackend backend(f);
        SolveResult r = solve_clue(clue, "7", Orientation::Across, cfg, kb, backend, bundle);
        c.check(!r.proven, "all-fail scenario unexpectedly proved the answer");
        c.equal(count_attempts(r), 3, "expected exactly 3 formalisation attempts");
        c.equal(static_cast<int>(backend.remaining()), 0, "unused fixture entries remain");
    }
}

// ---------------------------------------------------------------------------
// 7. Evaluation arithmetic

void criterion_7(Checker& c) {
    std::vector<ClueRecord> records;
    auto make = [&](std::string id, std::string answer, bool quick) {
        ClueRecord rec;
        rec.id = std::move(id);
        rec.clue = "clue";
        rec.answer = answer;
        rec.enumeration = std::to_string(answer.size());
        rec.quick = quick;
        records.push_back(std::move(rec));
    };
    make("q1", "ONCE", true);
    make("q2", "PARE", true);
    make("q3", "BLIND", true);
    for (int i = 1; i <= 7; ++i) make("h" + std::to_string(i), "HERON", false);

    std::map<std::string, std::string> scripted = {
        {"q1", "ONCE"}, {"q2", "PARE"}, {"q3", "WRONG"},
        {"h1", "HERON"}, {"h2", "HERON"}, {"h3", "HERON"}, {"h4", "HERON"},
        {"h5", "HERON"}, {"h6", "NOPE"}, {"h7", "MISS"},
    };
    ClueSolver solver = [&](const ClueRecord& rec) -> SolverAnswer {
        return {scripted.at(rec.id), false};
    };

    AccuracyReport r1 = evaluate(records, solver, 10, 77);
    c.check(r1.overall.has_value() && *r1.overall == 7.0 / 10.0, "overall rate mismatch");
    c.check(r1.quick.has_value() && *r1.quick == 2.0 / 3.0, "quick rate mismatch");
    c.check(r1.hard.has_value() && *r1.hard == 5.0 / 7.0, "hard rate mismatch");
    c.equal(r1.quick_total + r1.hard_total, r1.samples, "quick+hard totals mismatch");

    AccuracyReport r2 = evaluate(records, solver, 10, 77);
    c.check(nlohmann::json(r1).dump() == nlohmann::json(r2).dump(),
            "same-seed evaluations differ");
}

// ---------------------------------------------------------------------------
// 8. Partial fill

void criterion_8(Checker& c) {
    CandidateSet set = CandidateSet::from_samples(
        {"HERON", "HERON", "EGRET", "EGRET", "EGRET", "SNIPE", "CRANE"});
    LetterMask mask;
    mask.length = 5;
    mask.known[0] = 'H';
    CandidateSet filtered = filter_by_mask(set, mask);

    // brute-force comparison: exactly the mask-consistent candidates survive
    std::map<std::string, int> expected;
    for (const auto& [answer, count] : set.counts)
        if (mask_accepts(mask, answer)) expected[answer] = count;
    c.check(filtered.counts == expected, "filter_by_mask kept the wrong candidates");
    c.check(expected == std::map<std::string, int>{{"HERON", 2}},
            "expected only HERON to survive the H mask");

    EmbeddingStore store(3);
    store.add("wader", {1.0f, 0.0f, 0.0f});
    store.add("woman", {0.5f, 0.5f, 0.0f});
    store.add("has", {0.5f, 0.5f, 0.0f});
    store.add("on", {0.5f, 0.5f, 0.0f});
    store.add("heron", {1.0f, 0.0f, 0.0f});
    store.add("snipe", {0.0f, 0.0f, 1.0f});
    store.add("banking", {0.0f, 1.0f, 0.0f});

    // hand oracle: cosine of the mean clue vector against each candidate
    std::vector<std::string> wordlist = {"HERON", "SNIPE", "BANKING"};
    auto cosine_to_clue = [&](const std::string& word) {
        auto cv = store.embed_text("wader woman has on");
        auto wv = store.embed_text(to_lower(word));
        double dot = 0, nc = 0, nw = 0;
        for (size_t i = 0; i < cv.size(); ++i) {
            dot += static_cast<double>(cv[i]) * wv[i];
            nc += static_cast<double>(cv[i]) * cv[i];
            nw += static_cast<double>(wv[i]) * wv[i];
        }
        return dot / (std::sqrt(nc) * std::sqrt(nw));
    };
    c.check(cosine_to_clue("HERON") > cosine_to_clue("SNIPE"),
            "toy store construction broken");
    c.equal(knn_answer("wader woman has on", store, wordlist, "5"), std::string("HERON"),
            "knn did not return the cosine-nearest in-pattern word");

    LetterMask s_mask;
    s_mask.length = 5;
    s_mask.known[0] = 'S';
    c.equal(knn_answer("wader woman has on", store, wordlist, "5", &s_mask),
            std::string("SNIPE"), "knn ignored the letter mask");
}

// ---------------------------------------------------------------------------
// 9. Quantitative reproduction is out of scope

void criterion_9(Checker&) {
    // Published accuracy tables depend on fine-tuned 9B models and licensed
    // datasets; this suite substitutes the oracle and property checks above.
    // Nothing to assert: the criterion records the scope decision.
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Checker&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "golden proofs parse, lint clean and verify; uncorrected text fails", criterion_1},
        {2, "abbreviation and indicator hints match the documented texts", criterion_2},
        {3, "shortcut dodges yield Failed verdicts with their lint codes", criterion_3},
        {4, "is_anagram agrees with the permutation oracle on 200 words", criterion_4},
        {5, "scripted HERON solve is deterministic with frequency fallback", criterion_5},
        {6, "formalisation attempts are bounded by 1 + max_rewrites", criterion_6},
        {7, "accuracy report reproduces hand-computed rates", criterion_7},
        {8, "mask filtering and knn fallback match hand computation", criterion_8},
        {9, "quantitative table reproduction intentionally not attempted", criterion_9},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& criterion : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
            continue;
        Checker checker;
        try {
            criterion.run(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("exception: ") + e.what());
        }
        if (checker.failures.empty()) {
            std::printf("PASS criterion %d: %s\n", criterion.id, criterion.title);
        } else {
            ++failed;
            std::printf("FAIL criterion %d: %s\n", criterion.id, criterion.title);
            for (const auto& f : checker.failures) std::printf("    - %s\n", f.c_str());
        }
    }
    return failed == 0 ? 0 : 1;
}
