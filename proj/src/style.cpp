#include "revsum/style.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include <json.hpp>

#include "revsum/errors.hpp"
#include "revsum/porter.hpp"

namespace revsum {

void StyleModel::rebuild_index() {
    vocab_index.clear();
    vocab_index.reserve(vocab.size());
    for (std::size_t v = 0; v < vocab.size(); ++v) {
        vocab_index.emplace(vocab[v], static_cast<int>(v));
    }
}

namespace {

using TokenLists = std::vector<std::vector<std::string>>;

std::vector<double> smoothed_log_likelihoods(const TokenLists& sentences,
                                             std::span<const std::size_t> picks,
                                             const std::unordered_map<std::string, int>& index,
                                             std::size_t vocab_size) {
    std::vector<double> counts(vocab_size, 1.0);  // add-one smoothing
    double total = static_cast<double>(vocab_size);
    for (const std::size_t s : picks) {
        for (const auto& token : sentences[s]) {
            auto it = index.find(token);
            if (it != index.end()) {
                counts[static_cast<std::size_t>(it->second)] += 1.0;
                total += 1.0;
            }
        }
    }
    std::vector<double> log_p(vocab_size);
    const double log_total = std::log(total);
    for (std::size_t v = 0; v < vocab_size; ++v) {
        log_p[v] = std::log(counts[v]) - log_total;
    }
    return log_p;
}

double posterior_summary(const StyleBase& base, std::span<const int> ids) {
    double log_summary = base.log_prior_summary;
    double log_review = base.log_prior_review;
    for (const int v : ids) {
        log_summary += base.log_p_summary[static_cast<std::size_t>(v)];
        log_review += base.log_p_review[static_cast<std::size_t>(v)];
    }
    const double peak = std::max(log_summary, log_review);
    const double w_summary = std::exp(log_summary - peak);
    const double w_review = std::exp(log_review - peak);
    return w_summary / (w_summary + w_review);
}

}  // namespace

std::vector<std::vector<std::size_t>> balanced_splits(std::size_t n_items,
                                                      std::size_t n_splits,
                                                      std::uint64_t seed) {
    std::vector<std::size_t> order(n_items);
    for (std::size_t i = 0; i < n_items; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng() % i]);
    }
    std::vector<std::vector<std::size_t>> splits(n_splits);
    for (std::size_t split = 0; split < n_splits; ++split) {
        const std::size_t lo = split * n_items / n_splits;
        const std::size_t hi = (split + 1) * n_items / n_splits;
        splits[split].assign(order.begin() + static_cast<std::ptrdiff_t>(lo),
                             order.begin() + static_cast<std::ptrdiff_t>(hi));
    }
    return splits;
}

StyleModel train_style_model(const TokenLists& summary_sentences,
                             const TokenLists& review_sentences, std::uint64_t seed) {
    if (summary_sentences.empty() || review_sentences.empty()) {
        throw DataError("need_both_classes", "need both classes to train the style model");
    }

    StyleModel model;
    model.seed = seed;

    std::map<std::string, int> vocab_counts;
    for (const auto* side : {&summary_sentences, &review_sentences}) {
        for (const auto& sentence : *side) {
            for (const auto& token : sentence) ++vocab_counts[token];
        }
    }
    for (const auto& [token, _] : vocab_counts) model.vocab.push_back(token);
    if (model.vocab.empty()) {
        throw DataError("empty_vocab", "style training sentences contain no tokens");
    }
    model.rebuild_index();
    const std::size_t V = model.vocab.size();

    const bool summaries_are_minority = summary_sentences.size() <= review_sentences.size();
    const TokenLists& majority = summaries_are_minority ? review_sentences : summary_sentences;
    const TokenLists& minority = summaries_are_minority ? summary_sentences : review_sentences;

    const std::size_t n_splits =
        (majority.size() + minority.size() - 1) / minority.size();
    model.n_splits = static_cast<int>(n_splits);

    const std::vector<std::vector<std::size_t>> splits =
        balanced_splits(majority.size(), n_splits, seed);

    std::vector<std::size_t> minority_picks(minority.size());
    for (std::size_t i = 0; i < minority_picks.size(); ++i) minority_picks[i] = i;
    const std::vector<double> minority_log_p =
        smoothed_log_likelihoods(minority, minority_picks, model.vocab_index, V);

    for (const auto& picks : splits) {
        StyleBase base;
        const std::vector<double> majority_log_p =
            smoothed_log_likelihoods(majority, picks, model.vocab_index, V);
        base.log_p_summary = summaries_are_minority ? minority_log_p : majority_log_p;
        base.log_p_review = summaries_are_minority ? majority_log_p : minority_log_p;

        const double n_minority = static_cast<double>(minority.size());
        const double n_majority = static_cast<double>(picks.size());
        const double log_total = std::log(n_minority + n_majority);
        const double log_prior_minority = std::log(n_minority) - log_total;
        const double log_prior_majority = std::log(n_majority) - log_total;
        base.log_prior_summary =
            summaries_are_minority ? log_prior_minority : log_prior_majority;
        base.log_prior_review =
            summaries_are_minority ? log_prior_majority : log_prior_minority;
        model.bases.push_back(std::move(base));
    }
    return model;
}

StyleScore summary_likelihood(const StyleModel& model,
                              std::span<const std::string> features) {
    std::vector<int> ids;
    for (const auto& token : features) {
        auto it = model.vocab_index.find(token);
        if (it != model.vocab_index.end()) ids.push_back(it->second);
    }
    double sum = 0.0;
    for (const auto& base : model.bases) {
        sum += posterior_summary(base, ids);
    }
    return StyleScore{sum / static_cast<double>(model.bases.size())};
}

std::vector<std::string> style_features(const SentenceRecord& sentence) {
    std::vector<std::string> features;
    features.reserve(sentence.tokens.size());
    for (const auto& token : sentence.tokens) {
        features.push_back(porter_stem(token));
    }
    return features;
}

namespace {
constexpr int kStyleFormatVersion = 1;
}

void save_style(const StyleModel& model, const std::filesystem::path& path,
                const std::string& config_hash) {
    nlohmann::ordered_json obj;
    obj["format_version"] = kStyleFormatVersion;
    obj["artifact"] = "style_model";
    obj["config_hash"] = config_hash;
    obj["seed"] = model.seed;
    obj["n_splits"] = model.n_splits;
    obj["vocab"] = model.vocab;
    auto& bases = obj["bases"] = nlohmann::ordered_json::array();
    for (const auto& base : model.bases) {
        bases.push_back({{"log_p_summary", base.log_p_summary},
                         {"log_p_review", base.log_p_review},
                         {"log_prior_summary", base.log_prior_summary},
                         {"log_prior_review", base.log_prior_review}});
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("unwritable_file", "cannot write model: " + path.string());
    out << obj.dump() << '\n';
}

StyleModel load_style(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("unreadable_file", "cannot open model: " + path.string());
    nlohmann::json obj;
    try {
        in >> obj;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad_model", "invalid model file " + path.string() + ": " + e.what());
    }
    if (obj.value("format_version", -1) != kStyleFormatVersion ||
        obj.value("artifact", "") != "style_model") {
        throw DataError("bad_model", "unsupported model file: " + path.string());
    }
    StyleModel model;
    model.seed = obj.at("seed").get<std::uint64_t>();
    model.n_splits = obj.at("n_splits").get<int>();
    model.vocab = obj.at("vocab").get<std::vector<std::string>>();
    for (const auto& entry : obj.at("bases")) {
        StyleBase base;
        base.log_p_summary = entry.at("log_p_summary").get<std::vector<double>>();
        base.log_p_review = entry.at("log_p_review").get<std::vector<double>>();
        base.log_prior_summary = entry.at("log_prior_summary").get<double>();
        base.log_prior_review = entry.at("log_prior_review").get<double>();
        if (base.log_p_summary.size() != model.vocab.size() ||
            base.log_p_review.size() != model.vocab.size()) {
            throw DataError("bad_model", "inconsistent base size: " + path.string());
        }
        model.bases.push_back(std::move(base));
    }
    if (model.bases.empty() ||
        model.n_splits != static_cast<int>(model.bases.size())) {
        throw DataError("bad_model", "inconsistent split count: " + path.string());
    }
    model.rebuild_index();
    return model;
}

}  // namespace revsum
