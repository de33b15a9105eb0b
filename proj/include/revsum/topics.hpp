#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "revsum/errors.hpp"
#include "revsum/preprocess.hpp"

namespace revsum {

struct LdaModel {
    int K = 0;
    std::vector<std::string> vocab;
    std::vector<std::vector<double>> phi;  // K x V, each row sums to 1
    double alpha = 0;
    double beta = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    std::string tag;  // "LDAreview" or "LDAsummary"

    std::unordered_map<std::string, int> vocab_index;

    void rebuild_index();
    // -1 when the token is out of vocabulary.
    int vocab_id(const std::string& token) const;
};

struct LdaTrainConfig {
    int K = 10;
    double alpha = 0;  // <= 0 selects 50/K
    double beta = 0.01;
    int iterations = 500;
    std::uint64_t seed = 42;
    int min_doc_freq = 2;  // tokens in fewer combined docs are pruned
    std::string tag = "LDAreview";
};

LdaModel train_lda(std::span<const CombinedDoc> docs, const LdaTrainConfig& config);

// exp(- sum log p(w) / N) over the in-vocab tokens of `docs`, with
// per-document topic proportions fitted by a seeded fold-in sampler.
double perplexity(const LdaModel& model, std::span<const CombinedDoc> docs,
                  int fold_in_sweeps = 50);

// Log-likelihood of `docs` under the model, same fold-in procedure.
double corpus_log_likelihood(const LdaModel& model, std::span<const CombinedDoc> docs,
                             int fold_in_sweeps = 50);

struct KCandidate {
    int K = 0;
    double train_log_likelihood = 0;
    double heldout_perplexity = 0;
};

struct KSelectionReport {
    std::vector<KCandidate> candidates;
    int chosen_K = 0;
};

// A failed candidate aborts the sweep; the scores gathered so far ride along
// for diagnostics.
class KSweepError : public Error {
public:
    KSweepError(std::string code, const std::string& message, KSelectionReport partial)
        : Error(std::move(code), message), partial_(std::move(partial)) {}

    const KSelectionReport& partial_report() const noexcept { return partial_; }

private:
    KSelectionReport partial_;
};

struct KSweepConfig {
    int k_min = 5;
    int k_max = 40;
    int k_step = 5;
    double holdout_fraction = 0.1;
    double alpha = 0;  // <= 0 selects 50/K per candidate
    double beta = 0.01;
    int iterations = 500;
    int fold_in_sweeps = 50;
    std::uint64_t seed = 42;
    int min_doc_freq = 2;
    std::string tag = "LDAreview";
};

// argmin over held-out perplexity; ties resolve to the smaller K.
int select_k_from_scores(std::span<const KCandidate> candidates);

KSelectionReport select_k(std::span<const CombinedDoc> docs, const KSweepConfig& config);

struct TopicAssignment {
    SentenceId sentence_id;
    std::vector<double> probs;  // length K; all zero when discarded
    int top_topic = -1;
    double top_prob = 0;
    bool discarded = false;
};

// Fold-in over the sentence's in-vocab stems; a sentence with none is
// discarded (all-zero probabilities) rather than given a topic.
TopicAssignment infer_sentence_topics(const LdaModel& model,
                                      const SentenceRecord& sentence,
                                      int sweeps = 50);

void save_lda(const LdaModel& model, const std::filesystem::path& path,
              const std::string& config_hash);
LdaModel load_lda(const std::filesystem::path& path);

void save_k_report(const KSelectionReport& report, const std::filesystem::path& path,
                   const std::string& config_hash);

}  // namespace revsum
