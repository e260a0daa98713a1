#include "mpw/commands.hpp"

#include "mpw/agents.hpp"
#include "mpw/jsonl.hpp"
#include "mpw/judge.hpp"
#include "mpw/metrics.hpp"
#include "mpw/pipeline.hpp"
#include "mpw/text_util.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <unordered_map>

namespace mpw::cli {

namespace fs = std::filesystem;

namespace {

EndpointConfig endpoint_from_json(const nlohmann::json& j, const std::string& default_key_env) {
    EndpointConfig e;
    e.base_url = j.value("base_url", std::string{});
    e.model = j.value("model", std::string{});
    e.api_key_env = j.value("api_key_env", default_key_env);
    e.temperature = j.value("temperature", 0.0);
    e.max_tokens = j.value("max_tokens", 0);
    e.timeout_seconds = j.value("timeout_seconds", 300);
    return e;
}

std::unique_ptr<ChatClient> make_agent(const CommandConfig& config, const ScenarioIndex& index) {
    if (config.backend == Backend::Llm) {
        return std::make_unique<HttpChatClient>(config.agent_endpoint);
    }
    if (config.scripted_agent == "oracle") return std::make_unique<OracleFactAgent>(index);
    if (config.scripted_agent == "question-only") {
        return std::make_unique<QuestionOnlyAgent>(index);
    }
    if (config.scripted_agent == "always-tool") return std::make_unique<AlwaysToolAgent>();
    if (config.scripted_agent == "immediate") return std::make_unique<ImmediateAnswerAgent>(index);
    throw ConfigError("unknown scripted agent '" + config.scripted_agent + "'");
}

struct EngineHolder {
    std::unique_ptr<ChatClient> client;  // LLM backend only
    std::unique_ptr<SearchEngine> engine;
};

EngineHolder make_engine(const CommandConfig& config) {
    EngineHolder holder;
    if (config.backend == Backend::Llm) {
        holder.client = std::make_unique<HttpChatClient>(config.engine_endpoint);
        holder.engine = std::make_unique<LlmEngine>(*holder.client, config.engine);
    } else {
        holder.engine = std::make_unique<ScriptedEngine>(config.engine);
    }
    return holder;
}

void require(bool condition, const std::string& message) {
    if (!condition) throw ConfigError(message);
}

}  // namespace

void apply_config_file(CommandConfig& config, const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": malformed config: " + e.what());
    }

    if (j.contains("setting")) {
        auto setting = setting_from_string(j["setting"].get<std::string>());
        require(setting.has_value(), "config: unknown setting");
        config.run.setting = *setting;
    }
    if (j.contains("backend")) {
        const std::string backend = j["backend"].get<std::string>();
        require(backend == "scripted" || backend == "llm", "config: unknown backend");
        config.backend = backend == "llm" ? Backend::Llm : Backend::Scripted;
    }
    config.seed = j.value("seed", config.seed);
    config.run.max_turns = j.value("max_turns", config.run.max_turns);
    config.run.max_concurrent_turns =
        j.value("max_concurrent_turns", config.run.max_concurrent_turns);
    config.run.context_char_limit = j.value("context_char_limit", config.run.context_char_limit);
    config.run.retry_limit = j.value("retry_limit", config.run.retry_limit);
    config.run.reminder_text = j.value("reminder_text", config.run.reminder_text);
    config.scripted_agent = j.value("scripted_agent", config.scripted_agent);
    config.judge_mode = j.value("judge_mode", config.judge_mode);

    if (j.contains("metrics")) {
        const auto& m = j["metrics"];
        config.metrics_k_cohort = m.value("k_cohort", config.metrics_k_cohort);
        config.metrics_k_trunc = m.value("k_trunc", config.metrics_k_trunc);
        config.metrics_bins = m.value("bins", config.metrics_bins);
        config.exclude_failed_judgments =
            m.value("exclude_failed_judgments", config.exclude_failed_judgments);
    }
    if (j.contains("engine")) {
        const auto& e = j["engine"];
        config.engine.match_threshold = e.value("match_threshold", config.engine.match_threshold);
        config.engine.compound_coverage_threshold =
            e.value("compound_coverage_threshold", config.engine.compound_coverage_threshold);
        config.engine.low_quality_max_chars =
            e.value("low_quality_max_chars", config.engine.low_quality_max_chars);
        if (e.contains("compound_lexicon")) {
            config.engine.compound_lexicon =
                e["compound_lexicon"].get<std::vector<std::string>>();
        }
        if (e.contains("base_date")) {
            auto date = CalendarDate::parse(e["base_date"].get<std::string>());
            require(date.has_value(), "config: engine.base_date must be YYYY-MM-DD");
            config.engine.base_date = *date;
        }
    }
    if (j.contains("endpoints")) {
        const auto& ep = j["endpoints"];
        if (ep.contains("agent")) {
            config.agent_endpoint = endpoint_from_json(ep["agent"], "MPW_AGENT_API_KEY");
        }
        if (ep.contains("engine")) {
            config.engine_endpoint = endpoint_from_json(ep["engine"], "MPW_ENGINE_API_KEY");
        }
        if (ep.contains("judge")) {
            config.judge_endpoint = endpoint_from_json(ep["judge"], "MPW_JUDGE_API_KEY");
        }
        if (ep.contains("world")) {
            config.world_endpoint = endpoint_from_json(ep["world"], "MPW_AGENT_API_KEY");
        }
        if (ep.contains("law")) {
            config.law_endpoint = endpoint_from_json(ep["law"], "MPW_AGENT_API_KEY");
        }
        if (ep.contains("auditor")) {
            config.auditor_endpoint = endpoint_from_json(ep["auditor"], "MPW_JUDGE_API_KEY");
        }
    }
}

int cmd_validate(const CommandConfig& config) {
    require(!config.input_path.empty(), "validate: --input is required");
    const std::vector<Scenario> scenarios = load_scenarios(config.input_path);
    size_t warning_count = 0;
    std::unordered_map<std::string, bool> seen_ids;
    for (const auto& s : scenarios) {
        if (seen_ids.count(s.id)) {
            std::cerr << "error: duplicate scenario id '" << s.id << "'\n";
            return 1;
        }
        seen_ids[s.id] = true;
        for (const auto& w : validate_question_principles(s)) {
            std::cout << "warning: " << w << "\n";
            ++warning_count;
        }
        bool known = false;
        for (const auto& d : known_domains()) known = known || d == s.domain;
        if (!known) {
            std::cout << "warning: scenario " << s.id << ": domain '" << s.domain
                      << "' is not one of the 19 benchmark categories\n";
            ++warning_count;
        }
    }
    std::cout << "validated " << scenarios.size() << " scenario(s), " << warning_count
              << " warning(s)\n";
    return 0;
}

int cmd_run(const CommandConfig& config) {
    require(!config.input_path.empty(), "run: --input is required");
    require(!config.output_path.empty(), "run: --output is required");

    const std::vector<Scenario> corpus = load_scenarios(config.input_path);
    const ScenarioIndex index(corpus);

    // Resume: keep the raw lines of existing terminal records (byte-for-byte)
    // and only run the missing scenarios; the merged file is rewritten in
    // corpus order.
    std::unordered_map<std::string, std::string> existing;
    if (config.resume && fs::exists(config.output_path)) {
        std::ifstream in(config.output_path);
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            nlohmann::json record;
            try {
                record = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(config.output_path + ":" + std::to_string(line_no) +
                                 ": malformed record: " + e.what());
            }
            SampleState state = sample_record_from_json(record);
            existing[state.scenario_id] = line;
        }
    }

    std::vector<Scenario> to_run;
    for (const auto& s : corpus) {
        if (!existing.count(s.id)) to_run.push_back(s);
    }

    auto agent = make_agent(config, index);
    EngineHolder engine = make_engine(config);
    SearchEngine* engine_ptr = config.run.setting == Setting::A ? nullptr : engine.engine.get();

    BenchmarkResult result = run_benchmark(to_run, *agent, engine_ptr, config.run);

    std::unordered_map<std::string, std::string> fresh;
    for (const auto& state : result.states) {
        fresh[state.scenario_id] = sample_record_to_json(state).dump();
    }

    size_t finished = 0;
    for (const auto& state : result.states) {
        if (state.status == SampleStatus::Finished) ++finished;
    }
    for (const auto& [id, line] : existing) {
        if (sample_record_from_json(nlohmann::json::parse(line)).status ==
            SampleStatus::Finished) {
            ++finished;
        }
    }

    std::vector<std::string> lines;
    lines.reserve(corpus.size());
    for (const auto& s : corpus) {
        auto it = existing.find(s.id);
        lines.push_back(it != existing.end() ? it->second : fresh.at(s.id));
    }
    write_jsonl(config.output_path, lines);

    std::cout << "ran " << result.states.size() << " sample(s), reused " << existing.size()
              << ", finished " << finished << "/" << corpus.size()
              << ", max in-flight turns " << result.max_in_flight_turns << "\n";
    return 0;
}

int cmd_judge(const CommandConfig& config) {
    require(!config.input_path.empty(), "judge: --input is required");
    require(!config.corpus_path.empty(), "judge: --corpus is required");
    require(!config.output_path.empty(), "judge: --output is required");

    const std::vector<Scenario> corpus = load_scenarios(config.corpus_path);
    const ScenarioIndex index(corpus);

    std::unique_ptr<ChatClient> judge_client;
    if (config.judge_mode == "llm") {
        judge_client = std::make_unique<HttpChatClient>(config.judge_endpoint);
    } else {
        require(config.judge_mode == "exact", "judge: mode must be 'exact' or 'llm'");
    }

    std::vector<std::string> lines;
    for_each_jsonl(config.input_path, [&](size_t, const nlohmann::json& record) {
        SampleState state = sample_record_from_json(record);
        const Scenario& scenario = index.require(state.scenario_id);
        const std::string prediction = state.final_answer.value_or("");
        Judgment j = judge_client
                         ? judge(scenario.question, scenario.ground_truth, prediction,
                                 *judge_client)
                         : exact_match(scenario.ground_truth, prediction);
        nlohmann::ordered_json out = sample_record_to_json(state);
        out["judgment"] = judgment_to_json(j);
        lines.push_back(out.dump());
    });
    require(!lines.empty(), "judge: no records in " + config.input_path);
    write_jsonl(config.output_path, lines);
    std::cout << "judged " << lines.size() << " record(s)\n";
    return 0;
}

int cmd_metrics(const CommandConfig& config) {
    require(!config.input_path.empty(), "metrics: --input is required");
    require(!config.corpus_path.empty(), "metrics: --corpus is required");
    require(!config.output_path.empty(), "metrics: --output is required");

    const std::vector<Scenario> corpus = load_scenarios(config.corpus_path);
    const ScenarioIndex index(corpus);

    std::vector<SampleMetrics> samples;
    for_each_jsonl(config.input_path, [&](size_t line_no, const nlohmann::json& record) {
        SampleState state = sample_record_from_json(record);
        const Scenario& scenario = index.require(state.scenario_id);
        Judgment j;
        if (record.contains("judgment")) {
            j = judgment_from_json(record["judgment"]);
        } else {
            throw ValidationError(config.input_path + ":" + std::to_string(line_no) +
                                  ": record lacks a judgment; run the judge command first");
        }
        if (config.exclude_failed_judgments && j.transport_failed) return;
        samples.push_back(compute_sample_metrics(state, scenario, j));
    });
    if (samples.empty()) {
        std::cerr << "error: no records in " << config.input_path << "\n";
        return 1;
    }

    AggregateTable table = aggregate(samples);
    ProcessCurves curves = process_curves(samples, config.metrics_k_cohort,
                                          config.metrics_k_trunc);
    const int bins = std::min<int>(config.metrics_bins, static_cast<int>(samples.size()));
    BinnedCurve binned = quantile_bins(samples, bins);

    fs::create_directories(config.output_path);
    const fs::path dir(config.output_path);
    write_text_file((dir / "aggregate.tsv").string(), aggregate_to_tsv(table));
    write_text_file((dir / "delta_facts.tsv").string(), delta_facts_to_tsv(curves));
    write_text_file((dir / "cumulative_curves.tsv").string(), cumulative_curves_to_tsv(curves));
    write_text_file((dir / "fcr_bins.tsv").string(), bins_to_tsv(binned));
    write_text_file((dir / "summary.json").string(),
                    metrics_summary_json(table, curves, binned).dump(2) + "\n");

    for (const auto& w : table.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& w : curves.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "metrics written to " << dir.string() << " (" << samples.size()
              << " samples)\n";
    return 0;
}

int cmd_generate(const CommandConfig& config) {
    require(!config.output_path.empty(), "generate: --output is required");

    EntityPool pool = config.pool_path.empty() ? builtin_entity_pool()
                                               : load_entity_pool(config.pool_path);

    std::unique_ptr<ChatClient> world_client, law_client;
    std::unique_ptr<WorldModel> world;
    std::unique_ptr<LawModel> law;
    if (config.backend == Backend::Llm) {
        world_client = std::make_unique<HttpChatClient>(config.world_endpoint);
        law_client = std::make_unique<HttpChatClient>(config.law_endpoint);
        world = std::make_unique<LlmWorldModel>(*world_client);
        law = std::make_unique<LlmLawModel>(*law_client);
    } else {
        world = std::make_unique<MockWorldModel>(config.seed);
        law = std::make_unique<MockLawModel>(config.seed);
    }

    GenerationOutcome outcome =
        generate_scenarios(pool, config.generate_total, config.seed, *world, *law);

    // Staging first, then the deterministic merge into the final corpus.
    const std::string staging_path = config.output_path + ".staging";
    std::vector<std::string> staged;
    for (const auto& s : outcome.scenarios) staged.push_back(scenario_to_json(s).dump());
    write_jsonl(staging_path, staged);
    save_scenarios(config.output_path, outcome.scenarios);

    for (const auto& note : outcome.skipped) std::cout << "skipped: " << note << "\n";
    std::cout << "generated " << outcome.scenarios.size() << " scenario(s) into "
              << config.output_path << "\n";
    return static_cast<int>(outcome.scenarios.size()) == config.generate_total ? 0 : 1;
}

int cmd_audit(const CommandConfig& config) {
    require(!config.input_path.empty(), "audit: --input is required");
    require(!config.output_path.empty(), "audit: --output is required");

    const std::vector<Scenario> scenarios = load_scenarios(config.input_path);

    std::unique_ptr<ChatClient> auditor_client, judge_client;
    std::unique_ptr<Auditor> auditor;
    if (config.backend == Backend::Llm) {
        auditor_client = std::make_unique<HttpChatClient>(config.auditor_endpoint);
        judge_client = std::make_unique<HttpChatClient>(config.judge_endpoint);
        auditor = std::make_unique<LlmAuditor>(*auditor_client, *judge_client);
    } else {
        auditor = std::make_unique<MockAuditor>();
    }

    std::vector<Scenario> accepted;
    std::vector<AuditResult> results;
    AuditAccounting accounting = audit_corpus(scenarios, *auditor, accepted, results);

    fs::create_directories(config.output_path);
    const fs::path dir(config.output_path);
    save_scenarios((dir / "accepted.jsonl").string(), accepted);

    nlohmann::ordered_json detail = nlohmann::ordered_json::array();
    for (size_t i = 0; i < scenarios.size(); ++i) {
        detail.push_back({
            {"scenario_id", scenarios[i].id},
            {"stage1_pass", results[i].stage1_pass},
            {"stage2_votes", results[i].stage2_votes},
            {"accepted", results[i].accepted},
            {"indeterminate", results[i].indeterminate},
            {"notes", results[i].notes},
        });
    }
    nlohmann::ordered_json report = {
        {"generated", accounting.generated},
        {"accepted", accounting.accepted},
        {"rejected", accounting.rejected},
        {"indeterminate", accounting.indeterminate},
        {"results", std::move(detail)},
    };
    write_text_file((dir / "audit_report.json").string(), report.dump(2) + "\n");

    if (accounting.accepted + accounting.rejected + accounting.indeterminate !=
        accounting.generated) {
        std::cerr << "error: audit accounting does not balance\n";
        return 1;
    }
    std::cout << "audited " << accounting.generated << ": accepted " << accounting.accepted
              << ", rejected " << accounting.rejected << ", indeterminate "
              << accounting.indeterminate << "\n";
    return 0;
}

int cmd_report(const CommandConfig& config) {
    require(!config.input_path.empty(), "report: --input is required (metrics directory)");
    require(!config.output_path.empty(), "report: --output is required");

    const fs::path dir(config.input_path);
    nlohmann::json summary;
    try {
        summary = nlohmann::json::parse(read_text_file((dir / "summary.json").string()));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("report: cannot parse summary.json: " + std::string(e.what()));
    }

    std::string md = "# Benchmark report\n\n";
    md += "HitRate is pooled (total hits / total tool calls); the per-sample mean over "
          "samples with at least one call is reported alongside as HitRateMean.\n\n";
    md += "| Tier | Samples | Pass@1 | FCR | HitRate | HitRateMean | ToolCalls |\n";
    md += "|---|---|---|---|---|---|---|\n";
    char buf[256];
    for (const auto& row : summary["aggregate"]) {
        std::snprintf(buf, sizeof(buf), "| %s | %d | %.2f | %.2f | %.2f | %.2f | %.2f |\n",
                      row.value("tier", std::string{}).c_str(), row.value("samples", 0),
                      row.value("pass1_pct", 0.0), row.value("fcr_pct", 0.0),
                      row.value("hitrate_pooled_pct", 0.0), row.value("hitrate_mean_pct", 0.0),
                      row.value("mean_tool_calls", 0.0));
        md += buf;
    }

    const auto& process = summary["process"];
    md += "\n## Process curves\n\n";
    std::snprintf(buf, sizeof(buf),
                  "Cohorts: %d samples with T >= k_cohort=%d, %d with T >= k_trunc=%d. "
                  "Entries where n(k) < 50 are low-support.\n\n",
                  process.value("cohort_size_delta", 0), process.value("k_cohort", 0),
                  process.value("cohort_size_trunc", 0), process.value("k_trunc", 0));
    md += buf;
    md += "| k | delta_facts(k) | FCR(k) | HitPrec(k) |\n|---|---|---|---|\n";
    const auto delta = process.value("delta_facts", std::vector<double>{});
    const auto fcr_k = process.value("fcr_of_k", std::vector<double>{});
    const auto prec_k = process.value("hitprec_of_k", std::vector<double>{});
    const size_t rows = std::max(delta.size(), std::max(fcr_k.size(), prec_k.size()));
    for (size_t k = 0; k < rows; ++k) {
        auto cell = [&](const std::vector<double>& v) {
            if (k >= v.size()) return std::string("-");
            std::snprintf(buf, sizeof(buf), "%.4f", v[k]);
            return std::string(buf);
        };
        md += "| " + std::to_string(k + 1) + " | " + cell(delta) + " | " + cell(fcr_k) + " | " +
              cell(prec_k) + " |\n";
    }

    md += "\n## FCR vs Pass@1 (equal-frequency bins)\n\n";
    md += "| Bin | mean FCR | mean Pass@1 | count |\n|---|---|---|---|\n";
    size_t bin_no = 0;
    for (const auto& bin : summary["fcr_bins"]) {
        std::snprintf(buf, sizeof(buf), "| %zu | %.4f | %.4f | %d |\n", ++bin_no,
                      bin.value("mean_fcr", 0.0), bin.value("mean_pass1", 0.0),
                      bin.value("count", 0));
        md += buf;
    }

    write_text_file(config.output_path, md);
    std::cout << "report written to " << config.output_path << "\n";
    return 0;
}

int dispatch(const CommandConfig& config) {
    if (config.command == "validate") return cmd_validate(config);
    if (config.command == "run") return cmd_run(config);
    if (config.command == "judge") return cmd_judge(config);
    if (config.command == "metrics") return cmd_metrics(config);
    if (config.command == "generate") return cmd_generate(config);
    if (config.command == "audit") return cmd_audit(config);
    if (config.command == "report") return cmd_report(config);
    throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace mpw::cli
