#pragma once

#include <map>
#include <string>
#include <vector>

#include "revsum/corpus.hpp"
#include "revsum/preprocess.hpp"
#include "revsum/summarize.hpp"

namespace revsum {

enum class RougeVariant { rouge1, rouge2, rougeL };

const char* rouge_variant_name(RougeVariant variant);
RougeVariant rouge_variant_from_name(const std::string& name);

struct RougeScore {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    RougeVariant variant = RougeVariant::rouge1;
};

struct RougeOptions {
    bool stem = true;
    bool drop_stopwords = false;
};

// Tokenization shared with the preprocessing pipeline; stemming and stopword
// dropping are applied per the options.
std::vector<std::string> rouge_tokens(const std::string& text, const TextAssets& assets,
                                      const RougeOptions& options);

// Clipped n-gram overlap; n is 1 or 2. An empty reference (after
// tokenization) is an error, an empty candidate scores zero.
RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n,
                   const RougeOptions& options, const TextAssets& assets);

// Sentence-level longest common subsequence.
RougeScore rouge_l(const std::string& candidate, const std::string& reference,
                   const RougeOptions& options, const TextAssets& assets);

struct EvalReport {
    std::map<std::string, std::vector<RougeScore>> per_product;
    std::vector<RougeScore> macro_average;  // unweighted mean per variant
    int n_evaluated = 0;
    int n_skipped = 0;  // products lacking a reference summary
};

std::string render_summary_text(const ProductSummary& summary);

EvalReport evaluate_corpus(std::span<const ProductSummary> summaries,
                           const Dataset& dataset,
                           std::span<const RougeVariant> variants,
                           const RougeOptions& options, const TextAssets& assets);

}  // namespace revsum
