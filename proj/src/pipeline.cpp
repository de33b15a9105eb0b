#include "revsum/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "revsum/errors.hpp"
#include "revsum/log.hpp"
#include "revsum/sentiment.hpp"
#include "revsum/style.hpp"
#include "revsum/text_util.hpp"
#include "revsum/topics.hpp"

namespace revsum {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

ArtifactPaths ArtifactPaths::in(const fs::path& output_dir) {
    ArtifactPaths paths;
    paths.stats = output_dir / "stats.json";
    paths.sentences = output_dir / "sentences.jsonl";
    paths.lda_review = output_dir / "lda_review.json";
    paths.lda_summary = output_dir / "lda_summary.json";
    paths.k_report_review = output_dir / "kselect_review.json";
    paths.k_report_summary = output_dir / "kselect_summary.json";
    paths.style_model = output_dir / "style_model.json";
    paths.assignments = output_dir / "assignments.jsonl";
    paths.sentiment = output_dir / "sentiment.jsonl";
    paths.style_scores = output_dir / "style_scores.jsonl";
    paths.summaries = output_dir / "summaries.jsonl";
    paths.summaries_text_dir = output_dir / "summaries_txt";
    paths.eval_report = output_dir / "eval_report.json";
    return paths;
}

namespace {

ordered_json meta_line(const char* artifact, const PipelineConfig& config) {
    return ordered_json{{"artifact", artifact},
                        {"config_hash", config.config_hash()},
                        {"seed", config.seed}};
}

void ensure_output_dir(const PipelineConfig& config) {
    fs::create_directories(config.output_dir);
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("unwritable_file", "cannot write artifact: " + path.string());
    }
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("missing_artifact",
                        "missing artifact (run the earlier stages first): " + path.string());
    }
    return in;
}

// Cache probe: an artifact written by the same config hash and seed is
// reused unless --force is set.
bool cache_hit(const fs::path& path, const PipelineConfig& config) {
    if (config.force) return false;
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string first_line;
    if (!std::getline(in, first_line)) return false;
    try {
        const json meta = json::parse(first_line);
        return meta.value("config_hash", "") == config.config_hash() &&
               meta.value("seed", std::uint64_t{0}) == config.seed;
    } catch (const json::exception&) {
        return false;
    }
}

json read_meta(std::ifstream& in, const fs::path& path, const char* artifact) {
    std::string first_line;
    if (!std::getline(in, first_line)) {
        throw DataError("bad_artifact", "empty artifact file: " + path.string());
    }
    json meta;
    try {
        meta = json::parse(first_line);
    } catch (const json::exception& e) {
        throw DataError("bad_artifact",
                        "bad artifact header in " + path.string() + ": " + e.what());
    }
    if (meta.value("artifact", "") != artifact) {
        throw DataError("bad_artifact", "expected " + std::string(artifact) +
                                            " artifact: " + path.string());
    }
    return meta;
}

Dataset load_configured_dataset(const PipelineConfig& config) {
    LoadOptions options;
    options.min_reviews = config.min_reviews;
    return load_dataset(config.dataset_path, options);
}

ordered_json sentence_id_json(const SentenceId& id) {
    return ordered_json{{"product", id.product_id},
                        {"source", source_name(id.source)},
                        {"doc", id.doc_index},
                        {"sent", id.sent_index}};
}

SentenceId sentence_id_from_json(const json& obj) {
    SentenceId id;
    id.product_id = obj.at("product").get<std::string>();
    id.source = source_from_name(obj.at("source").get<std::string>());
    id.doc_index = obj.at("doc").get<int>();
    id.sent_index = obj.at("sent").get<int>();
    return id;
}

// Deterministic parallel map: results land in a preallocated vector by
// index, so the worker count cannot change any output.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min<int>(jobs, static_cast<int>(n));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < n;
                 i += static_cast<std::size_t>(workers)) {
                fn(i);
            }
        });
    }
    for (auto& thread : threads) thread.join();
}

std::string sanitize_filename(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
        if (!ok) c = '_';
    }
    return out;
}

// Max cosine similarity between each review-topic row and any summary-topic
// row, computed over the shared vocabulary.
std::vector<double> topic_alignment_weights(const LdaModel& review,
                                            const LdaModel& summary) {
    std::vector<std::pair<int, int>> shared;  // (review id, summary id)
    for (std::size_t v = 0; v < review.vocab.size(); ++v) {
        const int sv = summary.vocab_id(review.vocab[v]);
        if (sv >= 0) shared.emplace_back(static_cast<int>(v), sv);
    }
    std::vector<double> weights(static_cast<std::size_t>(review.K), 0.0);
    if (shared.empty()) return weights;
    for (int rk = 0; rk < review.K; ++rk) {
        double best = 0.0;
        for (int sk = 0; sk < summary.K; ++sk) {
            double dot = 0.0;
            double norm_r = 0.0;
            double norm_s = 0.0;
            for (const auto& [rv, sv] : shared) {
                const double a = review.phi[static_cast<std::size_t>(rk)]
                                           [static_cast<std::size_t>(rv)];
                const double b = summary.phi[static_cast<std::size_t>(sk)]
                                            [static_cast<std::size_t>(sv)];
                dot += a * b;
                norm_r += a * a;
                norm_s += b * b;
            }
            if (norm_r > 0 && norm_s > 0) {
                best = std::max(best, dot / std::sqrt(norm_r * norm_s));
            }
        }
        weights[static_cast<std::size_t>(rk)] = best;
    }
    return weights;
}

}  // namespace

void save_sentences(std::span<const SentenceRecord> sentences, const fs::path& path,
                    const std::string& config_hash, std::uint64_t seed) {
    auto out = open_out(path);
    out << ordered_json{{"artifact", "sentences"},
                        {"config_hash", config_hash},
                        {"seed", seed}}
               .dump()
        << '\n';
    for (const auto& sentence : sentences) {
        ordered_json obj;
        obj["id"] = sentence_id_json(sentence.id);
        obj["raw"] = sentence.raw_text;
        obj["tokens"] = sentence.tokens;
        obj["stems"] = sentence.stems;
        obj["nouns"] = sentence.nouns;
        obj["word_count"] = sentence.word_count;
        out << obj.dump() << '\n';
    }
}

std::vector<SentenceRecord> load_sentences(const fs::path& path) {
    auto in = open_in(path);
    read_meta(in, path, "sentences");
    std::vector<SentenceRecord> sentences;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json obj = json::parse(line);
        SentenceRecord record;
        record.id = sentence_id_from_json(obj.at("id"));
        record.raw_text = obj.at("raw").get<std::string>();
        record.tokens = obj.at("tokens").get<std::vector<std::string>>();
        record.stems = obj.at("stems").get<std::vector<std::string>>();
        record.nouns = obj.at("nouns").get<std::vector<std::string>>();
        record.word_count = obj.at("word_count").get<int>();
        sentences.push_back(std::move(record));
    }
    return sentences;
}

void save_summaries(std::span<const ProductSummary> summaries, const fs::path& path,
                    const std::string& config_hash, std::uint64_t seed) {
    auto out = open_out(path);
    out << ordered_json{{"artifact", "summaries"},
                        {"config_hash", config_hash},
                        {"seed", seed}}
               .dump()
        << '\n';
    for (const auto& summary : summaries) {
        ordered_json obj;
        obj["product_id"] = summary.product_id;
        auto& entries = obj["entries"] = ordered_json::array();
        for (const auto& entry : summary.entries) {
            entries.push_back({{"topic", entry.topic_id},
                               {"sentence", entry.sentence_id.str()},
                               {"text", entry.raw_text},
                               {"score", entry.score},
                               {"polarity", polarity_name(entry.polarity)}});
        }
        obj["k_used"] = summary.k_used;
        out << obj.dump() << '\n';
    }
}

std::vector<ProductSummary> load_summaries(const fs::path& path) {
    auto in = open_in(path);
    read_meta(in, path, "summaries");
    std::vector<ProductSummary> summaries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json obj = json::parse(line);
        ProductSummary summary;
        summary.product_id = obj.at("product_id").get<std::string>();
        for (const auto& entry_json : obj.at("entries")) {
            SummaryEntry entry;
            entry.topic_id = entry_json.at("topic").get<int>();
            entry.raw_text = entry_json.at("text").get<std::string>();
            entry.score = entry_json.at("score").get<double>();
            entry.polarity = entry_json.at("polarity").get<std::string>() == "negative"
                                 ? Polarity::negative
                                 : Polarity::positive;
            summary.entries.push_back(std::move(entry));
        }
        summary.k_used = obj.at("k_used").get<int>();
        summaries.push_back(std::move(summary));
    }
    return summaries;
}

void stage_stats(const PipelineConfig& config) {
    ensure_output_dir(config);
    const Dataset dataset = load_configured_dataset(config);
    const CorpusStats stats = dataset_stats(
        dataset, [](const std::string& text) { return split_sentences(text); });

    ordered_json obj = meta_line("stats", config);
    obj["n_products"] = stats.n_products;
    obj["n_summaries"] = stats.n_summaries;
    obj["n_summary_sentences"] = stats.n_summary_sentences;
    obj["n_reviews"] = stats.n_reviews;
    obj["n_review_sentences"] = stats.n_review_sentences;

    auto out = open_out(ArtifactPaths::in(config.output_dir).stats);
    out << obj.dump(2) << '\n';
    log_info("stats written for " + std::to_string(stats.n_products) + " products");
}

void stage_preprocess(const PipelineConfig& config) {
    ensure_output_dir(config);
    const ArtifactPaths paths = ArtifactPaths::in(config.output_dir);
    if (cache_hit(paths.sentences, config)) {
        log_info("preprocess: cache hit, skipping");
        return;
    }
    const Dataset dataset = load_configured_dataset(config);
    const TextAssets assets = TextAssets::load(config.asset_dir);
    const LexiconNounTagger tagger(assets.noun_lexicon);
    const std::vector<SentenceRecord> sentences =
        preprocess_dataset(dataset, assets, tagger);
    save_sentences(sentences, paths.sentences, config.config_hash(), config.seed);
    log_info("preprocess: " + std::to_string(sentences.size()) + " sentences");
}

namespace {

void train_corpus_model(const PipelineConfig& config,
                        std::span<const SentenceRecord> sentences, Source source,
                        const std::string& tag, const fs::path& model_path,
                        const fs::path& report_path) {
    std::vector<SentenceRecord> subset;
    for (const auto& sentence : sentences) {
        if (sentence.id.source == source) subset.push_back(sentence);
    }
    const std::vector<CombinedDoc> docs = build_combined_docs(subset);

    KSweepConfig sweep;
    sweep.k_min = config.k_min;
    sweep.k_max = config.k_max;
    sweep.k_step = config.k_step;
    sweep.holdout_fraction = config.holdout_fraction;
    sweep.alpha = config.alpha;
    sweep.beta = config.beta;
    sweep.iterations = config.iterations;
    sweep.fold_in_sweeps = config.infer_sweeps;
    sweep.seed = mix_seed(config.seed, fnv1a64(tag));
    sweep.min_doc_freq = config.min_doc_freq;
    sweep.tag = tag;
    const KSelectionReport report = select_k(docs, sweep);
    save_k_report(report, report_path, config.config_hash());
    log_info(tag + ": chose K=" + std::to_string(report.chosen_K));

    // Final model retrains on the full corpus at the chosen K.
    LdaTrainConfig train;
    train.K = report.chosen_K;
    train.alpha = config.alpha;
    train.beta = config.beta;
    train.iterations = config.iterations;
    train.seed = mix_seed(config.seed, fnv1a64(tag));
    train.min_doc_freq = config.min_doc_freq;
    train.tag = tag;
    const LdaModel model = train_lda(docs, train);
    save_lda(model, model_path, config.config_hash());
}

}  // namespace

void stage_train_topics(const PipelineConfig& config) {
    ensure_output_dir(config);
    const ArtifactPaths paths = ArtifactPaths::in(config.output_dir);
    if (cache_hit(paths.lda_review, config) && cache_hit(paths.lda_summary, config)) {
        log_info("train-topics: cache hit, skipping");
        return;
    }
    const std::vector<SentenceRecord> sentences = load_sentences(paths.sentences);
    train_corpus_model(config, sentences, Source::review, "LDAreview", paths.lda_review,
                       paths.k_report_review);
    train_corpus_model(config, sentences, Source::summary, "LDAsummary",
                       paths.lda_summary, paths.k_report_summary);
}

void stage_train_style(const PipelineConfig& config) {
    ensure_output_dir(config);
    const ArtifactPaths paths = ArtifactPaths::in(config.output_dir);
    if (cache_hit(paths.style_model, config)) {
        log_info("train-style: cache hit, skipping");
        return;
    }
    const std::vector<SentenceRecord> sentences = load_sentences(paths.sentences);
    std::vector<std::vector<std::string>> summary_features;
    std::vector<std::vector<std::string>> review_features;
    for (const auto& sentence : sentences) {
        auto features = style_features(sentence);
        if (features.empty()) continue;
        (sentence.id.source == Source::summary ? summary_features : review_features)
            .push_back(std::move(features));
    }
    const StyleModel model = train_style_model(
        summary_features, review_features, mix_seed(config.seed, fnv1a64("style")));
    save_style(model, paths.style_model, config.config_hash());
    log_info("train-style: " + std::to_string(model.n_splits) + " base classifiers");
}

void stage_summarize(const PipelineConfig& config) {
    ensure_output_dir(config);
    const ArtifactPaths paths = ArtifactPaths::in(config.output_dir);
    const Dataset dataset = load_configured_dataset(config);
    const std::vector<SentenceRecord> sentences = load_sentences(paths.sentences);
    const TextAssets assets = TextAssets::load(config.asset_dir);
    const SentimentLexicon lexicon = SentimentLexicon::load(config.asset_dir);
    const LdaModel lda_review = load_lda(paths.lda_review);
    const StyleModel style = load_style(paths.style_model);

    std::vector<double> alignment;
    if (config.summary_reweight) {
        const LdaModel lda_summary = load_lda(paths.lda_summary);
        alignment = topic_alignment_weights(lda_review, lda_summary);
    }

    // Review sentences only, in artifact order, grouped by product.
    std::vector<const SentenceRecord*> review_sentences;
    for (const auto& sentence : sentences) {
        if (sentence.id.source == Source::review) review_sentences.push_back(&sentence);
    }

    std::vector<SentenceArtifacts> artifacts(review_sentences.size());
    parallel_for(review_sentences.size(), config.jobs, [&](std::size_t i) {
        const SentenceRecord& sentence = *review_sentences[i];
        SentenceArtifacts& artifact = artifacts[i];
        artifact.assignment =
            infer_sentence_topics(lda_review, sentence, config.infer_sweeps);
        artifact.raw_text = sentence.raw_text;
        artifact.sentiment = score_sentence(sentence.tokens, lexicon);
        artifact.sl = summary_likelihood(style, style_features(sentence)).sl;
        if (!artifact.assignment.discarded && !alignment.empty()) {
            artifact.assignment.top_prob *=
                alignment[static_cast<std::size_t>(artifact.assignment.top_topic)];
        }
    });

    {
        auto out = open_out(paths.assignments);
        out << meta_line("assignments", config).dump() << '\n';
        for (const auto& artifact : artifacts) {
            ordered_json obj;
            obj["id"] = sentence_id_json(artifact.assignment.sentence_id);
            obj["discarded"] = artifact.assignment.discarded;
            obj["top_topic"] = artifact.assignment.top_topic;
            obj["top_prob"] = artifact.assignment.top_prob;
            obj["probs"] = artifact.assignment.probs;
            out << obj.dump() << '\n';
        }
    }
    {
        auto out = open_out(paths.sentiment);
        out << meta_line("sentiment", config).dump() << '\n';
        for (const auto& artifact : artifacts) {
            ordered_json obj;
            obj["id"] = sentence_id_json(artifact.assignment.sentence_id);
            obj["ps"] = artifact.sentiment.ps;
            obj["ns"] = artifact.sentiment.ns;
            obj["polarity"] = polarity_name(artifact.sentiment.polarity);
            obj["neutral"] = artifact.sentiment.neutral;
            out << obj.dump() << '\n';
        }
    }
    {
        auto out = open_out(paths.style_scores);
        out << meta_line("style_scores", config).dump() << '\n';
        for (const auto& artifact : artifacts) {
            ordered_json obj;
            obj["id"] = sentence_id_json(artifact.assignment.sentence_id);
            obj["sl"] = artifact.sl;
            out << obj.dump() << '\n';
        }
    }

    std::unordered_map<std::string, std::vector<SentenceArtifacts>> by_product;
    for (const auto& artifact : artifacts) {
        by_product[artifact.assignment.sentence_id.product_id].push_back(artifact);
    }

    std::vector<ProductSummary> summaries;
    for (const auto& product : dataset.products) {
        if (product.reviews.empty()) {
            log_warn("product '" + product.product_id + "' has no reviews; skipping");
            continue;
        }
        auto it = by_product.find(product.product_id);
        static const std::vector<SentenceArtifacts> kEmpty;
        const auto& product_artifacts = it == by_product.end() ? kEmpty : it->second;
        summaries.push_back(
            generate_summary(product.product_id, product_artifacts, config.k_summary));
    }
    save_summaries(summaries, paths.summaries, config.config_hash(), config.seed);

    fs::create_directories(paths.summaries_text_dir);
    for (const auto& summary : summaries) {
        auto out = open_out(paths.summaries_text_dir /
                            (sanitize_filename(summary.product_id) + ".txt"));
        out << render_summary_text(summary);
    }
    log_info("summarize: " + std::to_string(summaries.size()) + " product summaries");
}

std::string format_eval_table(const EvalReport& report) {
    std::ostringstream out;
    out << "variant    precision    recall       f1\n";
    out.setf(std::ios::fixed);
    out.precision(4);
    for (const auto& score : report.macro_average) {
        out << rouge_variant_name(score.variant);
        for (int pad = static_cast<int>(std::string(rouge_variant_name(score.variant)).size());
             pad < 11; ++pad) {
            out << ' ';
        }
        out << score.precision << "       " << score.recall << "    " << score.f1 << '\n';
    }
    out << "n_evaluated=" << report.n_evaluated << " n_skipped=" << report.n_skipped
        << '\n';
    return out.str();
}

void stage_evaluate(const PipelineConfig& config) {
    ensure_output_dir(config);
    const ArtifactPaths paths = ArtifactPaths::in(config.output_dir);
    const Dataset dataset = load_configured_dataset(config);
    const TextAssets assets = TextAssets::load(config.asset_dir);
    const std::vector<ProductSummary> summaries = load_summaries(paths.summaries);

    const EvalReport report = evaluate_corpus(summaries, dataset, config.variants,
                                              config.rouge_options(), assets);

    ordered_json obj = meta_line("eval_report", config);
    obj["n_evaluated"] = report.n_evaluated;
    obj["n_skipped"] = report.n_skipped;
    auto& macro = obj["macro_average"] = ordered_json::array();
    for (const auto& score : report.macro_average) {
        macro.push_back({{"variant", rouge_variant_name(score.variant)},
                         {"precision", score.precision},
                         {"recall", score.recall},
                         {"f1", score.f1}});
    }
    auto& per_product = obj["per_product"] = ordered_json::object();
    for (const auto& [product_id, scores] : report.per_product) {
        auto& list = per_product[product_id] = ordered_json::array();
        for (const auto& score : scores) {
            list.push_back({{"variant", rouge_variant_name(score.variant)},
                            {"precision", score.precision},
                            {"recall", score.recall},
                            {"f1", score.f1}});
        }
    }
    auto out = open_out(paths.eval_report);
    out << obj.dump(2) << '\n';

    std::cout << format_eval_table(report);
}

int run_pipeline(const PipelineConfig& config) {
    config.validate();
    const struct {
        const char* name;
        void (*fn)(const PipelineConfig&);
    } stages[] = {
        {"stats", stage_stats},
        {"preprocess", stage_preprocess},
        {"train-topics", stage_train_topics},
        {"train-style", stage_train_style},
        {"summarize", stage_summarize},
    };
    for (const auto& stage : stages) {
        try {
            log_info("stage " + std::string(stage.name));
            stage.fn(config);
        } catch (const Error& e) {
            log_error("stage " + std::string(stage.name) + " failed [" + e.code() +
                      "]: " + e.what());
            throw;
        } catch (const std::exception& e) {
            log_error("stage " + std::string(stage.name) + " failed: " + e.what());
            throw StageError(stage.name, "internal", e.what());
        }
    }

    const Dataset dataset = load_configured_dataset(config);
    const bool any_reference =
        std::any_of(dataset.products.begin(), dataset.products.end(),
                    [](const ProductRecord& p) { return p.reference_summary.has_value(); });
    if (any_reference) {
        try {
            log_info("stage evaluate");
            stage_evaluate(config);
        } catch (const Error& e) {
            log_error("stage evaluate failed [" + e.code() + "]: " + e.what());
            throw;
        }
    } else {
        log_info("no reference summaries in dataset; skipping evaluation");
    }
    return 0;
}

}  // namespace revsum
