#include "revsum/rouge.hpp"

#include <algorithm>
#include <unordered_map>

#include "revsum/errors.hpp"
#include "revsum/porter.hpp"

namespace revsum {

const char* rouge_variant_name(RougeVariant variant) {
    switch (variant) {
        case RougeVariant::rouge1: return "rouge1";
        case RougeVariant::rouge2: return "rouge2";
        case RougeVariant::rougeL: return "rougeL";
    }
    return "?";
}

RougeVariant rouge_variant_from_name(const std::string& name) {
    if (name == "rouge1") return RougeVariant::rouge1;
    if (name == "rouge2") return RougeVariant::rouge2;
    if (name == "rougeL") return RougeVariant::rougeL;
    throw UsageError("bad_variant", "unknown ROUGE variant: " + name);
}

std::vector<std::string> rouge_tokens(const std::string& text, const TextAssets& assets,
                                      const RougeOptions& options) {
    std::vector<std::string> tokens = normalize_and_filter(text, assets).tokens;
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (auto& token : tokens) {
        if (options.drop_stopwords && assets.stopwords.contains(token)) continue;
        out.push_back(options.stem ? porter_stem(token) : std::move(token));
    }
    return out;
}

namespace {

std::vector<std::string> ngrams(std::span<const std::string> tokens, int n) {
    std::vector<std::string> grams;
    if (static_cast<int>(tokens.size()) < n) return grams;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (int j = 1; j < n; ++j) {
            gram += '\x1f';
            gram += tokens[i + static_cast<std::size_t>(j)];
        }
        grams.push_back(std::move(gram));
    }
    return grams;
}

RougeScore from_counts(double overlap, double n_candidate, double n_reference,
                       RougeVariant variant) {
    RougeScore score;
    score.variant = variant;
    score.precision = n_candidate > 0 ? overlap / n_candidate : 0.0;
    score.recall = n_reference > 0 ? overlap / n_reference : 0.0;
    score.f1 = (score.precision + score.recall) > 0
                   ? 2.0 * score.precision * score.recall /
                         (score.precision + score.recall)
                   : 0.0;
    return score;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> previous(b.size() + 1, 0);
    std::vector<std::size_t> current(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            current[j] = a[i - 1] == b[j - 1]
                             ? previous[j - 1] + 1
                             : std::max(previous[j], current[j - 1]);
        }
        std::swap(previous, current);
    }
    return previous[b.size()];
}

}  // namespace

RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n,
                   const RougeOptions& options, const TextAssets& assets) {
    if (n != 1 && n != 2) throw UsageError("bad_n", "rouge_n supports n in {1, 2}");
    const std::vector<std::string> cand_tokens = rouge_tokens(candidate, assets, options);
    const std::vector<std::string> ref_tokens = rouge_tokens(reference, assets, options);
    if (ref_tokens.empty()) {
        throw DataError("empty_reference", "empty reference after tokenization");
    }

    const std::vector<std::string> cand_grams = ngrams(cand_tokens, n);
    const std::vector<std::string> ref_grams = ngrams(ref_tokens, n);

    std::unordered_map<std::string, int> ref_counts;
    for (const auto& gram : ref_grams) ++ref_counts[gram];

    double overlap = 0;
    for (const auto& gram : cand_grams) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end() && it->second > 0) {
            --it->second;
            overlap += 1.0;
        }
    }
    const RougeVariant variant = n == 1 ? RougeVariant::rouge1 : RougeVariant::rouge2;
    return from_counts(overlap, static_cast<double>(cand_grams.size()),
                       static_cast<double>(ref_grams.size()), variant);
}

RougeScore rouge_l(const std::string& candidate, const std::string& reference,
                   const RougeOptions& options, const TextAssets& assets) {
    const std::vector<std::string> cand_tokens = rouge_tokens(candidate, assets, options);
    const std::vector<std::string> ref_tokens = rouge_tokens(reference, assets, options);
    if (ref_tokens.empty()) {
        throw DataError("empty_reference", "empty reference after tokenization");
    }
    const double lcs = static_cast<double>(lcs_length(cand_tokens, ref_tokens));
    return from_counts(lcs, static_cast<double>(cand_tokens.size()),
                       static_cast<double>(ref_tokens.size()), RougeVariant::rougeL);
}

std::string render_summary_text(const ProductSummary& summary) {
    std::string text;
    for (const auto& entry : summary.entries) {
        text += entry.raw_text;
        text += '\n';
    }
    return text;
}

EvalReport evaluate_corpus(std::span<const ProductSummary> summaries,
                           const Dataset& dataset,
                           std::span<const RougeVariant> variants,
                           const RougeOptions& options, const TextAssets& assets) {
    std::unordered_map<std::string, const ProductRecord*> products;
    for (const auto& product : dataset.products) {
        products.emplace(product.product_id, &product);
    }

    EvalReport report;
    std::vector<double> sum_p(variants.size(), 0.0);
    std::vector<double> sum_r(variants.size(), 0.0);
    std::vector<double> sum_f(variants.size(), 0.0);

    for (const auto& summary : summaries) {
        auto it = products.find(summary.product_id);
        const ProductRecord* product = it == products.end() ? nullptr : it->second;
        if (product == nullptr || !product->reference_summary) {
            ++report.n_skipped;
            continue;
        }
        const std::string candidate = render_summary_text(summary);
        std::vector<RougeScore> scores;
        for (std::size_t i = 0; i < variants.size(); ++i) {
            RougeScore score;
            switch (variants[i]) {
                case RougeVariant::rouge1:
                    score = rouge_n(candidate, *product->reference_summary, 1, options,
                                    assets);
                    break;
                case RougeVariant::rouge2:
                    score = rouge_n(candidate, *product->reference_summary, 2, options,
                                    assets);
                    break;
                case RougeVariant::rougeL:
                    score = rouge_l(candidate, *product->reference_summary, options,
                                    assets);
                    break;
            }
            sum_p[i] += score.precision;
            sum_r[i] += score.recall;
            sum_f[i] += score.f1;
            scores.push_back(score);
        }
        report.per_product.emplace(summary.product_id, std::move(scores));
        ++report.n_evaluated;
    }

    if (report.n_evaluated == 0) {
        throw DataError("nothing_to_evaluate", "nothing to evaluate: no product has a reference");
    }
    for (std::size_t i = 0; i < variants.size(); ++i) {
        RougeScore mean;
        mean.variant = variants[i];
        mean.precision = sum_p[i] / report.n_evaluated;
        mean.recall = sum_r[i] / report.n_evaluated;
        mean.f1 = sum_f[i] / report.n_evaluated;
        report.macro_average.push_back(mean);
    }
    return report;
}

}  // namespace revsum
