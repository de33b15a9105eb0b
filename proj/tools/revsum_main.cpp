#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revsum/config.hpp"
#include "revsum/errors.hpp"
#include "revsum/log.hpp"
#include "revsum/pipeline.hpp"

namespace {

struct CliState {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;
    bool force = false;
    bool verbose = false;
};

// Every stage shares the same configuration surface; flags override the
// config file, which overrides built-in defaults.
void add_common_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--config", state.config_file, "key=value config file");
    const std::pair<const char*, const char*> keys[] = {
        {"--dataset", "dataset"},
        {"--assets", "assets"},
        {"--out", "out"},
        {"--k-summary", "k_summary"},
        {"--k-min", "k_min"},
        {"--k-max", "k_max"},
        {"--k-step", "k_step"},
        {"--alpha", "alpha"},
        {"--beta", "beta"},
        {"--iterations", "iterations"},
        {"--infer-sweeps", "infer_sweeps"},
        {"--holdout-fraction", "holdout_fraction"},
        {"--seed", "seed"},
        {"--min-doc-freq", "min_doc_freq"},
        {"--min-reviews", "min_reviews"},
        {"--rouge-stem", "rouge_stem"},
        {"--rouge-stopwords", "rouge_stopwords"},
        {"--variants", "variants"},
        {"--summary-reweight", "summary_reweight"},
        {"--jobs", "jobs"},
    };
    for (const auto& [flag, key] : keys) {
        const std::string config_key = key;
        cmd->add_option_function<std::string>(
            flag,
            [&state, config_key](const std::string& value) {
                state.overrides.emplace_back(config_key, value);
            },
            "config override (" + config_key + ")");
    }
    cmd->add_flag("--force", state.force, "ignore cached artifacts");
    cmd->add_flag("-v,--verbose", state.verbose, "debug logging");
}

revsum::PipelineConfig build_config(const CliState& state) {
    revsum::PipelineConfig config;
    if (!state.config_file.empty()) {
        config = revsum::PipelineConfig::from_file(state.config_file);
    }
    for (const auto& [key, value] : state.overrides) {
        config.apply_kv(key, value);
    }
    config.force = state.force;
    if (state.verbose) revsum::set_log_level(revsum::LogLevel::debug);
    return config;
}

void print_stats(const revsum::PipelineConfig& config) {
    const auto path = revsum::ArtifactPaths::in(config.output_dir).stats;
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json obj;
    in >> obj;
    std::cout << "n_products           " << obj["n_products"] << '\n'
              << "n_summaries          " << obj["n_summaries"] << '\n'
              << "n_summary_sentences  " << obj["n_summary_sentences"] << '\n'
              << "n_reviews            " << obj["n_reviews"] << '\n'
              << "n_review_sentences   " << obj["n_review_sentences"] << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extractive customer-review summarizer"};
    app.require_subcommand(1);
    CliState state;

    CLI::App* cmd_stats = app.add_subcommand("stats", "dataset ingestion statistics");
    CLI::App* cmd_preprocess =
        app.add_subcommand("preprocess", "segment, normalize and stem the dataset");
    CLI::App* cmd_topics =
        app.add_subcommand("train-topics", "K sweep and LDA training on both corpora");
    CLI::App* cmd_style =
        app.add_subcommand("train-style", "summary-vs-review style classifier");
    CLI::App* cmd_summarize =
        app.add_subcommand("summarize", "score sentences and emit product summaries");
    CLI::App* cmd_evaluate =
        app.add_subcommand("evaluate", "ROUGE evaluation against reference summaries");
    CLI::App* cmd_pipeline = app.add_subcommand("pipeline", "run every stage in order");
    for (CLI::App* cmd : {cmd_stats, cmd_preprocess, cmd_topics, cmd_style,
                          cmd_summarize, cmd_evaluate, cmd_pipeline}) {
        add_common_options(cmd, state);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const revsum::PipelineConfig config = build_config(state);
        config.validate();
        if (cmd_stats->parsed()) {
            revsum::stage_stats(config);
            print_stats(config);
        } else if (cmd_preprocess->parsed()) {
            revsum::stage_preprocess(config);
        } else if (cmd_topics->parsed()) {
            revsum::stage_train_topics(config);
        } else if (cmd_style->parsed()) {
            revsum::stage_train_style(config);
        } else if (cmd_summarize->parsed()) {
            revsum::stage_summarize(config);
        } else if (cmd_evaluate->parsed()) {
            revsum::stage_evaluate(config);
        } else if (cmd_pipeline->parsed()) {
            return revsum::run_pipeline(config);
        }
        return 0;
    } catch (const revsum::UsageError& e) {
        revsum::log_error(std::string("[") + e.code() + "] " + e.what());
        return 1;
    } catch (const revsum::DataError& e) {
        revsum::log_error(std::string("[") + e.code() + "] " + e.what());
        return 2;
    } catch (const revsum::Error& e) {
        revsum::log_error(std::string("[") + e.code() + "] " + e.what());
        return 3;
    } catch (const std::exception& e) {
        revsum::log_error(e.what());
        return 3;
    }
}
