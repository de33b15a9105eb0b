#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace revsum {

struct ProductRecord {
    std::string product_id;
    std::vector<std::string> reviews;
    std::optional<std::string> reference_summary;

    bool operator==(const ProductRecord&) const = default;
};

struct Dataset {
    std::vector<ProductRecord> products;
    std::string source_tag;

    bool operator==(const Dataset&) const = default;
};

struct CorpusStats {
    std::int64_t n_products = 0;
    std::int64_t n_summaries = 0;
    std::int64_t n_summary_sentences = 0;
    std::int64_t n_reviews = 0;
    std::int64_t n_review_sentences = 0;
};

struct LoadIssue {
    int line_no = 0;
    std::string message;
};

struct LoadOptions {
    // Products with fewer reviews are dropped at load time when > 0.
    int min_reviews = 0;
    std::string source_tag;
};

// One product object per line: {"product_id": ..., "reviews": [...],
// "summary": ... | null}. Malformed lines are collected into `issues` and
// logged; an unreadable file or a duplicate product_id is fatal.
Dataset load_dataset(const std::filesystem::path& path,
                     const LoadOptions& options = {},
                     std::vector<LoadIssue>* issues = nullptr);

void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

using Segmenter = std::function<std::vector<std::string>(const std::string&)>;

CorpusStats dataset_stats(const Dataset& dataset, const Segmenter& segmenter);

}  // namespace revsum
