#include "revsum/topics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include <json.hpp>

#include "revsum/errors.hpp"
#include "revsum/log.hpp"
#include "revsum/text_util.hpp"

namespace revsum {

void LdaModel::rebuild_index() {
    vocab_index.clear();
    vocab_index.reserve(vocab.size());
    for (std::size_t v = 0; v < vocab.size(); ++v) {
        vocab_index.emplace(vocab[v], static_cast<int>(v));
    }
}

int LdaModel::vocab_id(const std::string& token) const {
    auto it = vocab_index.find(token);
    return it == vocab_index.end() ? -1 : it->second;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

int sample_unnormalized(std::span<const double> weights, double total,
                        std::mt19937_64& rng) {
    double u = uniform01(rng) * total;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        u -= weights[k];
        if (u <= 0.0) return static_cast<int>(k);
    }
    return static_cast<int>(weights.size()) - 1;
}

// Expands a combined doc's bag into a token-id sequence, dropping
// out-of-vocabulary tokens. Bags are ordered maps, so expansion order is
// deterministic.
std::vector<int> doc_to_ids(const CombinedDoc& doc,
                            const std::unordered_map<std::string, int>& index) {
    std::vector<int> ids;
    for (const auto& [token, count] : doc.bag) {
        auto it = index.find(token);
        if (it == index.end()) continue;
        ids.insert(ids.end(), static_cast<std::size_t>(count), it->second);
    }
    return ids;
}

// Samples topic assignments for one document against a frozen phi and
// returns the smoothed topic proportions.
std::vector<double> fold_in_theta(const LdaModel& model, std::span<const int> ids,
                                  int sweeps, std::uint64_t seed) {
    const int K = model.K;
    std::mt19937_64 rng(seed);
    std::vector<int> z(ids.size());
    std::vector<double> n_k(static_cast<std::size_t>(K), 0.0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        z[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
        n_k[static_cast<std::size_t>(z[i])] += 1.0;
    }
    std::vector<double> weights(static_cast<std::size_t>(K));
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const int v = ids[i];
            n_k[static_cast<std::size_t>(z[i])] -= 1.0;
            double total = 0.0;
            for (int k = 0; k < K; ++k) {
                const double w =
                    model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] *
                    (n_k[static_cast<std::size_t>(k)] + model.alpha);
                weights[static_cast<std::size_t>(k)] = w;
                total += w;
            }
            z[i] = total > 0.0 ? sample_unnormalized(weights, total, rng)
                               : static_cast<int>(rng() % static_cast<std::uint64_t>(K));
            n_k[static_cast<std::size_t>(z[i])] += 1.0;
        }
    }
    std::vector<double> theta(static_cast<std::size_t>(K));
    const double denom = static_cast<double>(ids.size()) + model.alpha * K;
    for (int k = 0; k < K; ++k) {
        theta[static_cast<std::size_t>(k)] =
            (n_k[static_cast<std::size_t>(k)] + model.alpha) / denom;
    }
    return theta;
}

struct ScoredCorpus {
    double log_likelihood = 0;
    std::int64_t n_tokens = 0;
};

ScoredCorpus score_corpus(const LdaModel& model, std::span<const CombinedDoc> docs,
                          int fold_in_sweeps) {
    ScoredCorpus scored;
    std::int64_t doc_index = 0;
    for (const auto& doc : docs) {
        const std::vector<int> ids = doc_to_ids(doc, model.vocab_index);
        ++doc_index;
        if (ids.empty()) continue;
        const std::vector<double> theta =
            fold_in_theta(model, ids, fold_in_sweeps,
                          mix_seed(model.seed, static_cast<std::uint64_t>(doc_index)));
        for (int v : ids) {
            double p = 0.0;
            for (int k = 0; k < model.K; ++k) {
                p += theta[static_cast<std::size_t>(k)] *
                     model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
            }
            scored.log_likelihood += std::log(p);
        }
        scored.n_tokens += static_cast<std::int64_t>(ids.size());
    }
    if (scored.n_tokens == 0) {
        throw DataError("no_scorable_tokens", "no scorable tokens");
    }
    return scored;
}

}  // namespace

LdaModel train_lda(std::span<const CombinedDoc> docs, const LdaTrainConfig& config) {
    if (config.K < 1) throw UsageError("bad_k", "K must be >= 1");
    if (config.beta <= 0) throw UsageError("bad_beta", "beta must be > 0");
    if (config.iterations < 1) throw UsageError("bad_iterations", "iterations must be >= 1");

    // Vocabulary: tokens appearing in at least min_doc_freq combined docs.
    std::map<std::string, int> doc_freq;
    for (const auto& doc : docs) {
        for (const auto& [token, _] : doc.bag) ++doc_freq[token];
    }
    LdaModel model;
    for (const auto& [token, df] : doc_freq) {
        if (df >= config.min_doc_freq) model.vocab.push_back(token);
    }
    model.rebuild_index();

    std::vector<std::vector<int>> corpus;
    for (const auto& doc : docs) {
        std::vector<int> ids = doc_to_ids(doc, model.vocab_index);
        if (!ids.empty()) corpus.push_back(std::move(ids));
    }
    if (model.vocab.empty() || corpus.empty()) {
        throw DataError("empty_corpus", "empty corpus after vocabulary pruning");
    }

    const int K = config.K;
    const int V = static_cast<int>(model.vocab.size());
    if (K > static_cast<int>(corpus.size())) {
        log_warn("K=" + std::to_string(K) + " exceeds document count " +
                 std::to_string(corpus.size()) + "; proceeding");
    }

    model.K = K;
    model.alpha = config.alpha > 0 ? config.alpha : 50.0 / K;
    model.beta = config.beta;
    model.seed = config.seed;
    model.iterations = config.iterations;
    model.tag = config.tag;

    std::mt19937_64 rng(config.seed);
    const std::size_t D = corpus.size();
    std::vector<std::vector<int>> z(D);
    std::vector<std::vector<int>> n_dk(D, std::vector<int>(static_cast<std::size_t>(K), 0));
    std::vector<std::vector<int>> n_kv(static_cast<std::size_t>(K),
                                       std::vector<int>(static_cast<std::size_t>(V), 0));
    std::vector<int> n_k(static_cast<std::size_t>(K), 0);

    for (std::size_t d = 0; d < D; ++d) {
        z[d].resize(corpus[d].size());
        for (std::size_t i = 0; i < corpus[d].size(); ++i) {
            const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
            z[d][i] = k;
            ++n_dk[d][static_cast<std::size_t>(k)];
            ++n_kv[static_cast<std::size_t>(k)][static_cast<std::size_t>(corpus[d][i])];
            ++n_k[static_cast<std::size_t>(k)];
        }
    }

    const double v_beta = V * model.beta;
    std::vector<double> weights(static_cast<std::size_t>(K));
    for (int iter = 0; iter < config.iterations; ++iter) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = 0; i < corpus[d].size(); ++i) {
                const int v = corpus[d][i];
                const int old_k = z[d][i];
                --n_dk[d][static_cast<std::size_t>(old_k)];
                --n_kv[static_cast<std::size_t>(old_k)][static_cast<std::size_t>(v)];
                --n_k[static_cast<std::size_t>(old_k)];

                double total = 0.0;
                for (int k = 0; k < K; ++k) {
                    const double w =
                        (n_kv[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] +
                         model.beta) /
                        (n_k[static_cast<std::size_t>(k)] + v_beta) *
                        (n_dk[d][static_cast<std::size_t>(k)] + model.alpha);
                    weights[static_cast<std::size_t>(k)] = w;
                    total += w;
                }
                const int new_k = sample_unnormalized(weights, total, rng);
                z[d][i] = new_k;
                ++n_dk[d][static_cast<std::size_t>(new_k)];
                ++n_kv[static_cast<std::size_t>(new_k)][static_cast<std::size_t>(v)];
                ++n_k[static_cast<std::size_t>(new_k)];
            }
        }
    }

    model.phi.assign(static_cast<std::size_t>(K),
                     std::vector<double>(static_cast<std::size_t>(V), 0.0));
    for (int k = 0; k < K; ++k) {
        const double denom = n_k[static_cast<std::size_t>(k)] + v_beta;
        for (int v = 0; v < V; ++v) {
            model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
                (n_kv[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] +
                 model.beta) /
                denom;
        }
    }
    return model;
}

double perplexity(const LdaModel& model, std::span<const CombinedDoc> docs,
                  int fold_in_sweeps) {
    const ScoredCorpus scored = score_corpus(model, docs, fold_in_sweeps);
    return std::exp(-scored.log_likelihood / static_cast<double>(scored.n_tokens));
}

double corpus_log_likelihood(const LdaModel& model, std::span<const CombinedDoc> docs,
                             int fold_in_sweeps) {
    return score_corpus(model, docs, fold_in_sweeps).log_likelihood;
}

int select_k_from_scores(std::span<const KCandidate> candidates) {
    if (candidates.empty()) {
        throw DataError("empty_sweep", "no K candidates to select from");
    }
    int best_k = candidates[0].K;
    double best = candidates[0].heldout_perplexity;
    for (const auto& candidate : candidates.subspan(1)) {
        if (candidate.heldout_perplexity < best ||
            (candidate.heldout_perplexity == best && candidate.K < best_k)) {
            best = candidate.heldout_perplexity;
            best_k = candidate.K;
        }
    }
    return best_k;
}

KSelectionReport select_k(std::span<const CombinedDoc> docs, const KSweepConfig& config) {
    if (config.k_step < 1) throw UsageError("bad_step", "k_step must be >= 1");
    if (config.k_min < 1 || config.k_max < config.k_min) {
        throw UsageError("bad_range", "invalid K range");
    }
    if (config.holdout_fraction < 0 || config.holdout_fraction >= 1) {
        throw UsageError("bad_holdout", "holdout_fraction must be in [0, 1)");
    }

    // Deterministic train/held-out split.
    std::vector<std::size_t> order(docs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(mix_seed(config.seed, fnv1a64("holdout")));
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng() % i]);
    }
    std::size_t n_held = static_cast<std::size_t>(
        std::llround(config.holdout_fraction * static_cast<double>(docs.size())));
    if (docs.size() >= 2 && config.holdout_fraction > 0 && n_held == 0) n_held = 1;
    if (n_held >= docs.size()) n_held = docs.size() - 1;

    std::vector<CombinedDoc> heldout;
    std::vector<CombinedDoc> train;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_held ? heldout : train).push_back(docs[order[i]]);
    }
    if (heldout.empty()) {
        log_warn("no held-out split possible; scoring perplexity on training docs");
    }

    KSelectionReport report;
    for (int k = config.k_min; k <= config.k_max; k += config.k_step) {
        LdaTrainConfig train_config;
        train_config.K = k;
        train_config.alpha = config.alpha;
        train_config.beta = config.beta;
        train_config.iterations = config.iterations;
        train_config.seed = mix_seed(config.seed, static_cast<std::uint64_t>(k));
        train_config.min_doc_freq = config.min_doc_freq;
        train_config.tag = config.tag;
        try {
            const LdaModel model = train_lda(train, train_config);
            KCandidate candidate;
            candidate.K = k;
            candidate.train_log_likelihood =
                corpus_log_likelihood(model, train, config.fold_in_sweeps);
            candidate.heldout_perplexity = perplexity(
                model, heldout.empty() ? std::span<const CombinedDoc>(train) : heldout,
                config.fold_in_sweeps);
            log_info("K=" + std::to_string(k) +
                     " perplexity=" + std::to_string(candidate.heldout_perplexity) +
                     " train_ll=" + std::to_string(candidate.train_log_likelihood));
            report.candidates.push_back(candidate);
        } catch (const Error& e) {
            log_error("K sweep aborted at K=" + std::to_string(k) + ": " + e.what());
            throw KSweepError(e.code(), e.what(), report);
        }
    }
    report.chosen_K = select_k_from_scores(report.candidates);
    return report;
}

TopicAssignment infer_sentence_topics(const LdaModel& model,
                                      const SentenceRecord& sentence, int sweeps) {
    TopicAssignment assignment;
    assignment.sentence_id = sentence.id;
    std::vector<int> ids;
    for (const auto& stem : sentence.stems) {
        const int v = model.vocab_id(stem);
        if (v >= 0) ids.push_back(v);
    }
    if (ids.empty()) {
        assignment.probs.assign(static_cast<std::size_t>(model.K), 0.0);
        assignment.discarded = true;
        assignment.top_topic = -1;
        assignment.top_prob = 0.0;
        return assignment;
    }
    assignment.probs = fold_in_theta(model, ids, sweeps,
                                     mix_seed(model.seed, fnv1a64(sentence.id.str())));
    assignment.top_topic = static_cast<int>(
        std::max_element(assignment.probs.begin(), assignment.probs.end()) -
        assignment.probs.begin());
    assignment.top_prob = assignment.probs[static_cast<std::size_t>(assignment.top_topic)];
    return assignment;
}

namespace {
constexpr int kModelFormatVersion = 1;
}

void save_lda(const LdaModel& model, const std::filesystem::path& path,
              const std::string& config_hash) {
    nlohmann::ordered_json obj;
    obj["format_version"] = kModelFormatVersion;
    obj["artifact"] = "lda_model";
    obj["config_hash"] = config_hash;
    obj["tag"] = model.tag;
    obj["K"] = model.K;
    obj["alpha"] = model.alpha;
    obj["beta"] = model.beta;
    obj["seed"] = model.seed;
    obj["iterations"] = model.iterations;
    obj["vocab"] = model.vocab;
    obj["phi"] = model.phi;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("unwritable_file", "cannot write model: " + path.string());
    out << obj.dump() << '\n';
}

LdaModel load_lda(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("unreadable_file", "cannot open model: " + path.string());
    nlohmann::json obj;
    try {
        in >> obj;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad_model", "invalid model file " + path.string() + ": " + e.what());
    }
    if (obj.value("format_version", -1) != kModelFormatVersion ||
        obj.value("artifact", "") != "lda_model") {
        throw DataError("bad_model", "unsupported model file: " + path.string());
    }
    LdaModel model;
    model.tag = obj.at("tag").get<std::string>();
    model.K = obj.at("K").get<int>();
    model.alpha = obj.at("alpha").get<double>();
    model.beta = obj.at("beta").get<double>();
    model.seed = obj.at("seed").get<std::uint64_t>();
    model.iterations = obj.at("iterations").get<int>();
    model.vocab = obj.at("vocab").get<std::vector<std::string>>();
    model.phi = obj.at("phi").get<std::vector<std::vector<double>>>();
    if (model.K < 1 || model.phi.size() != static_cast<std::size_t>(model.K)) {
        throw DataError("bad_model", "inconsistent model dimensions: " + path.string());
    }
    for (const auto& row : model.phi) {
        if (row.size() != model.vocab.size()) {
            throw DataError("bad_model", "inconsistent phi row size: " + path.string());
        }
    }
    model.rebuild_index();
    return model;
}

void save_k_report(const KSelectionReport& report, const std::filesystem::path& path,
                   const std::string& config_hash) {
    nlohmann::ordered_json obj;
    obj["artifact"] = "k_selection";
    obj["config_hash"] = config_hash;
    obj["chosen_K"] = report.chosen_K;
    auto& list = obj["candidates"] = nlohmann::ordered_json::array();
    for (const auto& candidate : report.candidates) {
        list.push_back({{"K", candidate.K},
                        {"train_log_likelihood", candidate.train_log_likelihood},
                        {"heldout_perplexity", candidate.heldout_perplexity}});
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("unwritable_file", "cannot write report: " + path.string());
    out << obj.dump(2) << '\n';
}

}  // namespace revsum
