#pragma once

#include <filesystem>
#include <vector>

#include "revsum/config.hpp"
#include "revsum/corpus.hpp"
#include "revsum/preprocess.hpp"
#include "revsum/rouge.hpp"
#include "revsum/summarize.hpp"

namespace revsum {

// Artifact locations under the output directory.
struct ArtifactPaths {
    std::filesystem::path stats;
    std::filesystem::path sentences;
    std::filesystem::path lda_review;
    std::filesystem::path lda_summary;
    std::filesystem::path k_report_review;
    std::filesystem::path k_report_summary;
    std::filesystem::path style_model;
    std::filesystem::path assignments;
    std::filesystem::path sentiment;
    std::filesystem::path style_scores;
    std::filesystem::path summaries;
    std::filesystem::path summaries_text_dir;
    std::filesystem::path eval_report;

    static ArtifactPaths in(const std::filesystem::path& output_dir);
};

// Each stage reads its inputs from the artifacts of the previous one, so
// running the subcommands one by one produces exactly what `pipeline` does.
void stage_stats(const PipelineConfig& config);
void stage_preprocess(const PipelineConfig& config);
void stage_train_topics(const PipelineConfig& config);
void stage_train_style(const PipelineConfig& config);
void stage_summarize(const PipelineConfig& config);
void stage_evaluate(const PipelineConfig& config);

int run_pipeline(const PipelineConfig& config);

// Sentence artifact round-trip (JSON Lines with a meta header line).
void save_sentences(std::span<const SentenceRecord> sentences,
                    const std::filesystem::path& path, const std::string& config_hash,
                    std::uint64_t seed);
std::vector<SentenceRecord> load_sentences(const std::filesystem::path& path);

void save_summaries(std::span<const ProductSummary> summaries,
                    const std::filesystem::path& path, const std::string& config_hash,
                    std::uint64_t seed);
std::vector<ProductSummary> load_summaries(const std::filesystem::path& path);

std::string format_eval_table(const EvalReport& report);

}  // namespace revsum
