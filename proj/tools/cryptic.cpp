// Command-line front end: solve a single clue, verify a proof file, run a
// sampled accuracy evaluation, or run the partial-fill experiment.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cryptic/config.hpp"
#include "cryptic/data.hpp"
#include "cryptic/embedding.hpp"
#include "cryptic/evalharness.hpp"
#include "cryptic/gateway.hpp"
#include "cryptic/http_gateway.hpp"
#include "cryptic/mask.hpp"
#include "cryptic/pipeline.hpp"
#include "cryptic/verifier.hpp"

namespace {

using namespace cryptic;

std::shared_ptr<ChatBackend> make_backend(const AppConfig& config,
                                          const std::string& fixtures_path) {
    if (!fixtures_path.empty())
        return std::make_shared<ScriptedBackend>(ScriptedFixture::load_file(fixtures_path));
    return std::make_shared<HttpBackend>(config.endpoint);
}

void apply_kb_options(KnowledgeBase& kb, const AppConfig& config,
                      const std::shared_ptr<ChatBackend>& backend) {
    kb.set_fuzzy_indicators(config.fuzzy_indicators);
    if (config.use_synonym_oracle && backend)
        kb.set_oracle(std::make_shared<ChatOracle>(backend));
}

struct CommonOptions {
    std::string config_path;
    std::string fixtures_path;
    std::string kb_dir_override;
};

AppConfig load_config(const CommonOptions& opts) {
    AppConfig config;
    if (!opts.config_path.empty()) config = AppConfig::load_file(opts.config_path);
    if (!opts.kb_dir_override.empty()) config.kb_dir = opts.kb_dir_override;
    return config;
}

int run_solve(const CommonOptions& opts, const std::string& clue,
              const std::string& pattern, const std::string& ad) {
    AppConfig config = load_config(opts);
    KnowledgeBase kb = KnowledgeBase::load_dir(config.kb_dir);
    PromptBundle bundle = PromptBundle::load_dir(config.prompts_dir);
    auto backend = make_backend(config, opts.fixtures_path);
    apply_kb_options(kb, config, backend);

    Orientation orientation = Orientation::Across;
    if (auto o = parse_orientation(ad)) orientation = *o;

    SolveResult result =
        solve_clue(clue, pattern, orientation, config.pipeline, kb, *backend, bundle);
    nlohmann::json j = result;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_verify(const CommonOptions& opts, const std::string& proof_path) {
    AppConfig config = load_config(opts);
    KnowledgeBase kb = KnowledgeBase::load_dir(config.kb_dir);

    std::ifstream in(proof_path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open proof file: " << proof_path << "\n";
        return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();

    auto parsed = parse_proof(ss.str());
    if (!parsed.ok()) {
        nlohmann::json j{{"parse_error",
                          {{"line", parsed.error().line},
                           {"column", parsed.error().column},
                           {"message", parsed.error().message},
                           {"no_proof_function", parsed.error().no_proof_function}}}};
        std::cout << j.dump(2) << "\n";
        return 2;
    }

    VerificationReport report = verify(parsed.value(), kb);
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& o : report.outcomes) {
        outcomes.push_back({{"line", o.line},
                            {"source", o.source},
                            {"status", std::string(assert_status_name(o.status))},
                            {"hint", o.hint ? nlohmann::json(*o.hint) : nlohmann::json(nullptr)}});
    }
    nlohmann::json lints = nlohmann::json::array();
    for (const auto& l : report.lint_violations) {
        lints.push_back({{"code", std::string(lint_code_name(l.code))},
                         {"line", l.line},
                         {"message", l.message}});
    }
    nlohmann::json j{{"verdict", report.verdict == Verdict::Success ? "success" : "failed"},
                     {"outcomes", outcomes},
                     {"lint_violations", lints}};
    std::cout << j.dump(2) << "\n";
    return report.verdict == Verdict::Success ? 0 : 1;
}

ClueSolver make_pipeline_solver(const AppConfig& config, KnowledgeBase& kb,
                                PromptBundle& bundle, ChatBackend& backend,
                                double mask_fraction, unsigned seed) {
    return [&, mask_fraction, seed](const ClueRecord& record) -> SolverAnswer {
        if (mask_fraction > 0.0) {
            LetterMask mask = make_mask(record.answer, mask_fraction,
                                        static_cast<unsigned>(seed ^ fnv1a64(record.id)));
            SolveResult r = solve_clue(record.clue, record.enumeration, record.orientation,
                                       config.pipeline, kb, backend, bundle, &mask);
            return {r.answer, r.proven};
        }
        SolveResult r = solve_clue(record.clue, record.enumeration, record.orientation,
                                   config.pipeline, kb, backend, bundle);
        return {r.answer, r.proven};
    };
}

int run_eval(const CommonOptions& opts, const std::string& dataset,
             const std::string& split_name, int n, unsigned seed) {
    AppConfig config = load_config(opts);
    auto split = parse_split(split_name);
    if (!split) {
        std::cerr << "unknown split '" << split_name << "' (use train|val|test)\n";
        return 2;
    }
    auto loaded = load_cryptonite(dataset, *split);
    if (static_cast<size_t>(n) > loaded.records.size()) {
        std::cerr << "sample size " << n << " exceeds " << loaded.records.size()
                  << " records\n";
        return 2;
    }

    KnowledgeBase kb = KnowledgeBase::load_dir(config.kb_dir);
    PromptBundle bundle = PromptBundle::load_dir(config.prompts_dir);
    auto backend = make_backend(config, opts.fixtures_path);
    apply_kb_options(kb, config, backend);

    ClueSolver solver = make_pipeline_solver(config, kb, bundle, *backend, 0.0, seed);
    AccuracyReport report = evaluate(loaded.records, solver, n, seed);
    nlohmann::json j = report;
    j["load_errors"] = loaded.errors.size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_partial(const CommonOptions& opts, const std::string& dataset, double fraction,
                int n, unsigned seed, const std::string& knn_embeddings) {
    AppConfig config = load_config(opts);
    auto loaded = load_cryptonite(dataset, Split::Test);
    if (static_cast<size_t>(n) > loaded.records.size()) {
        std::cerr << "sample size " << n << " exceeds " << loaded.records.size()
                  << " records\n";
        return 2;
    }

    KnowledgeBase kb = KnowledgeBase::load_dir(config.kb_dir);

    ClueSolver solver;
    std::shared_ptr<ChatBackend> backend;
    PromptBundle bundle;
    EmbeddingStore store;
    std::vector<std::string> wordlist;

    if (!knn_embeddings.empty()) {
        store = EmbeddingStore::load_file(knn_embeddings);
        wordlist = kb.wordlist_entries();
        solver = [&](const ClueRecord& record) -> SolverAnswer {
            LetterMask mask =
                make_mask(record.answer, fraction, static_cast<unsigned>(seed ^ fnv1a64(record.id)));
            return {knn_answer(record.clue, store, wordlist, record.enumeration, &mask),
                    false};
        };
    } else {
        bundle = PromptBundle::load_dir(config.prompts_dir);
        backend = make_backend(config, opts.fixtures_path);
        apply_kb_options(kb, config, backend);
        solver = make_pipeline_solver(config, kb, bundle, *backend, fraction, seed);
    }

    AccuracyReport report = evaluate(loaded.records, solver, n, seed);
    nlohmann::json j = report;
    j["fraction"] = fraction;
    j["method"] = knn_embeddings.empty() ? "pipeline+mask" : "knn";
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cryptic crossword clue solver with proof verification"};
    app.require_subcommand(1);

    CommonOptions opts;

    auto add_common = [&](CLI::App* cmd, bool with_fixtures = true) {
        cmd->add_option("--config", opts.config_path, "key=value config file");
        cmd->add_option("--kb", opts.kb_dir_override, "knowledge base directory");
        if (with_fixtures)
            cmd->add_option("--fixtures", opts.fixtures_path,
                            "scripted gateway fixture (JSON)");
    };

    std::string clue, pattern, ad = "A", proof_path, dataset, split = "test";
    std::string knn_embeddings;
    int n = 10;
    unsigned seed = 0;
    double fraction = 0.25;

    auto* solve = app.add_subcommand("solve", "solve a single clue");
    solve->add_option("--clue", clue, "clue text without enumeration")->required();
    solve->add_option("--pattern", pattern, "enumeration, e.g. 7 or 4,2")->required();
    solve->add_option("--ad", ad, "orientation: A or D");
    add_common(solve);

    auto* verify_cmd = app.add_subcommand("verify", "verify a proof file");
    verify_cmd->add_option("--proof", proof_path, "proof source file")->required();
    add_common(verify_cmd, false);

    auto* eval_cmd = app.add_subcommand("eval", "sampled Top-1 accuracy evaluation");
    eval_cmd->add_option("--dataset", dataset, "JSONL file or dataset directory")->required();
    eval_cmd->add_option("--split", split, "train|val|test");
    eval_cmd->add_option("--n", n, "sample size")->required();
    eval_cmd->add_option("--seed", seed, "sampling seed");
    add_common(eval_cmd);

    auto* partial = app.add_subcommand("partial", "partial-fill experiment");
    partial->add_option("--dataset", dataset, "JSONL file or dataset directory")->required();
    partial->add_option("--fraction", fraction, "fraction of letters known")->required();
    partial->add_option("--n", n, "sample size")->required();
    partial->add_option("--seed", seed, "sampling seed");
    partial->add_option("--knn", knn_embeddings,
                        "embeddings file: answer by nearest neighbour instead of the pipeline");
    add_common(partial);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(opts, clue, pattern, ad);
        if (verify_cmd->parsed()) return run_verify(opts, proof_path);
        if (eval_cmd->parsed()) return run_eval(opts, dataset, split, n, seed);
        if (partial->parsed())
            return run_partial(opts, dataset, fraction, n, seed, knn_embeddings);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
