#include "mpw/commands.hpp"

#include "mpw/jsonl.hpp"
#include "mpw/protocol.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

// The config file is applied before CLI11 binds, so explicit flags override
// config fields one-for-one.
std::string pre_scan_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    mpw::cli::CommandConfig config;
    try {
        config.config_path = pre_scan_config_path(argc, argv);
        if (!config.config_path.empty()) {
            mpw::cli::apply_config_file(config, config.config_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"mpw: parallel-world search-agent evaluation toolkit"};
    app.require_subcommand(1);

    std::string setting_flag;
    std::string backend_flag;
    std::string ignored_config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", ignored_config, "JSON config file");
        cmd->add_option("--seed", config.seed, "deterministic seed");
        cmd->add_option("--setting", setting_flag, "A | B-guidance | B-fewshot | C");
        cmd->add_option("--backend", backend_flag, "scripted | llm");
        cmd->add_option("--max-turns", config.run.max_turns, "assistant turn budget");
        cmd->add_option("--max-concurrent-turns", config.run.max_concurrent_turns,
                        "in-flight turn bound");
    };

    auto* validate = app.add_subcommand("validate", "check a scenario corpus");
    validate->add_option("--input", config.input_path, "corpus JSONL")->required();
    add_common(validate);

    auto* run = app.add_subcommand("run", "evaluate agents over a corpus");
    run->add_option("--input", config.input_path, "corpus JSONL")->required();
    run->add_option("--output", config.output_path, "records JSONL")->required();
    run->add_option("--scripted-agent", config.scripted_agent,
                    "oracle | question-only | always-tool | immediate");
    run->add_flag("--resume", config.resume, "skip scenarios with existing terminal records");
    add_common(run);

    auto* judge = app.add_subcommand("judge", "grade final answers");
    judge->add_option("--input", config.input_path, "records JSONL")->required();
    judge->add_option("--corpus", config.corpus_path, "corpus JSONL")->required();
    judge->add_option("--output", config.output_path, "judged records JSONL")->required();
    judge->add_option("--mode", config.judge_mode, "exact | llm");
    add_common(judge);

    auto* metrics = app.add_subcommand("metrics", "compute aggregate and process metrics");
    metrics->add_option("--input", config.input_path, "judged records JSONL")->required();
    metrics->add_option("--corpus", config.corpus_path, "corpus JSONL")->required();
    metrics->add_option("--output", config.output_path, "output directory")->required();
    metrics->add_option("--k-cohort", config.metrics_k_cohort, "cohort threshold for delta facts");
    metrics->add_option("--k-trunc", config.metrics_k_trunc, "cohort threshold for curves");
    metrics->add_option("--bins", config.metrics_bins, "quantile bin count");
    metrics->add_flag("--exclude-failed-judgments", config.exclude_failed_judgments,
                      "drop samples whose judgment hit an endpoint failure");
    add_common(metrics);

    auto* generate = app.add_subcommand("generate", "construct scenarios from an entity pool");
    generate->add_option("--pool", config.pool_path, "entity pool JSON (builtin when omitted)");
    generate->add_option("--total", config.generate_total, "number of scenarios");
    generate->add_option("--output", config.output_path, "corpus JSONL")->required();
    add_common(generate);

    auto* audit = app.add_subcommand("audit", "two-stage consistency audit");
    audit->add_option("--input", config.input_path, "staged corpus JSONL")->required();
    audit->add_option("--output", config.output_path, "output directory")->required();
    add_common(audit);

    auto* report = app.add_subcommand("report", "render a markdown summary");
    report->add_option("--input", config.input_path, "metrics directory")->required();
    report->add_option("--output", config.output_path, "markdown path")->required();
    add_common(report);

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* cmd : {validate, run, judge, metrics, generate, audit, report}) {
            if (cmd->parsed()) config.command = cmd->get_name();
        }
        if (!setting_flag.empty()) {
            auto setting = mpw::setting_from_string(setting_flag);
            if (!setting) throw mpw::ConfigError("unknown setting: " + setting_flag);
            config.run.setting = *setting;
        }
        if (!backend_flag.empty()) {
            if (backend_flag == "scripted") {
                config.backend = mpw::cli::Backend::Scripted;
            } else if (backend_flag == "llm") {
                config.backend = mpw::cli::Backend::Llm;
            } else {
                throw mpw::ConfigError("unknown backend: " + backend_flag);
            }
        }
        return mpw::cli::dispatch(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
