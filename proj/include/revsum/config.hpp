#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "revsum/rouge.hpp"

namespace revsum {

// Flat key=value configuration. Precedence is CLI flag > file > default;
// the CLI applies file values first and flag overrides afterwards.
struct PipelineConfig {
    std::string dataset_path;
    std::string asset_dir = "assets";
    std::string output_dir = "out";

    int k_summary = 5;
    int k_min = 5;
    int k_max = 40;
    int k_step = 5;

    double alpha = 0;  // <= 0 selects 50/K
    double beta = 0.01;
    int iterations = 500;
    int infer_sweeps = 50;
    double holdout_fraction = 0.1;
    std::uint64_t seed = 42;
    int min_doc_freq = 2;
    int min_reviews = 0;

    bool rouge_stem = true;
    bool rouge_stopwords = false;
    std::vector<RougeVariant> variants = {RougeVariant::rouge1, RougeVariant::rouge2,
                                          RougeVariant::rougeL};

    bool summary_reweight = false;

    // Execution knobs; excluded from the identity hash because they cannot
    // change any output bytes.
    int jobs = 1;
    bool force = false;

    static PipelineConfig from_file(const std::filesystem::path& path);
    void apply_kv(const std::string& key, const std::string& value);

    // Sorted key=value lines covering every result-affecting field.
    std::string canonical() const;
    std::string config_hash() const;

    void validate() const;

    RougeOptions rouge_options() const { return {rouge_stem, rouge_stopwords}; }
};

}  // namespace revsum
