#pragma once

#include "mpw/engine.hpp"
#include "mpw/orchestrator.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace mpw::cli {

enum class Backend { Scripted, Llm };

struct CommandConfig {
    std::string command;  // validate | run | judge | metrics | generate | audit | report

    // Paths
    std::string config_path;
    std::string input_path;    // corpus or records, per command
    std::string corpus_path;   // scenario corpus for judge/metrics
    std::string output_path;   // file or directory, per command
    std::string pool_path;     // entity pool for generate

    Backend backend = Backend::Scripted;
    std::string scripted_agent = "oracle";  // oracle | question-only | always-tool | immediate
    std::string judge_mode = "exact";       // exact | llm
    RunConfig run;
    EngineConfig engine;
    std::uint64_t seed = 42;
    bool resume = false;

    int generate_total = 50;
    int metrics_k_cohort = 8;
    int metrics_k_trunc = 8;
    int metrics_bins = 10;
    // Default counts judge-endpoint failures as Incorrect; set to drop those
    // samples from the metrics entirely.
    bool exclude_failed_judgments = false;

    EndpointConfig agent_endpoint;
    EndpointConfig engine_endpoint;
    EndpointConfig judge_endpoint;
    EndpointConfig world_endpoint;
    EndpointConfig law_endpoint;
    EndpointConfig auditor_endpoint;
};

// Loads the JSON config file into `config`; flags are applied on top by the
// CLI entry point. Environment variables supply only secrets.
void apply_config_file(CommandConfig& config, const std::string& path);

int cmd_validate(const CommandConfig& config);
int cmd_run(const CommandConfig& config);
int cmd_judge(const CommandConfig& config);
int cmd_metrics(const CommandConfig& config);
int cmd_generate(const CommandConfig& config);
int cmd_audit(const CommandConfig& config);
int cmd_report(const CommandConfig& config);

int dispatch(const CommandConfig& config);

}  // namespace mpw::cli
