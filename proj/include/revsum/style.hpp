#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "revsum/preprocess.hpp"

namespace revsum {

// One multinomial naive Bayes base classifier over the shared vocabulary.
struct StyleBase {
    std::vector<double> log_p_summary;  // per-token log P(t | summary)
    std::vector<double> log_p_review;
    double log_prior_summary = 0;
    double log_prior_review = 0;
};

struct StyleModel {
    std::vector<std::string> vocab;
    std::vector<StyleBase> bases;
    int n_splits = 0;
    std::uint64_t seed = 0;

    std::unordered_map<std::string, int> vocab_index;
    void rebuild_index();
};

struct StyleScore {
    double sl = 0;  // in [0, 1]
};

// Shuffles 0..n_items-1 by seed and cuts the order into n_splits chunks whose
// sizes differ by at most one; every index lands in exactly one chunk.
std::vector<std::vector<std::size_t>> balanced_splits(std::size_t n_items,
                                                      std::size_t n_splits,
                                                      std::uint64_t seed);

// The majority class is shuffled by seed and split into
// ceil(|majority| / |minority|) near-equal subsets; one base classifier is
// trained per (subset, full minority) pair with add-one smoothing.
StyleModel train_style_model(const std::vector<std::vector<std::string>>& summary_sentences,
                             const std::vector<std::vector<std::string>>& review_sentences,
                             std::uint64_t seed);

// Mean posterior P(summary | sentence) over the base classifiers. A sentence
// with no in-vocabulary tokens falls back to the prior.
StyleScore summary_likelihood(const StyleModel& model,
                              std::span<const std::string> features);

// Style features are stems with stopwords retained; summary style lives
// partly in function words, so this path skips the stoplist on purpose.
std::vector<std::string> style_features(const SentenceRecord& sentence);

void save_style(const StyleModel& model, const std::filesystem::path& path,
                const std::string& config_hash);
StyleModel load_style(const std::filesystem::path& path);

}  // namespace revsum
