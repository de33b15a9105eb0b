#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "revsum/preprocess.hpp"
#include "revsum/sentiment.hpp"

namespace testutil {

inline std::filesystem::path source_dir() { return REVSUM_SOURCE_DIR; }
inline std::filesystem::path asset_dir() { return source_dir() / "assets"; }
inline std::filesystem::path data_dir() { return source_dir() / "tests" / "data"; }

inline const revsum::TextAssets& shared_assets() {
    static const revsum::TextAssets assets = revsum::TextAssets::load(asset_dir());
    return assets;
}

// Small deterministic lexicon so sentiment tests do not depend on the
// shipped asset values.
inline revsum::SentimentLexicon mini_lexicon() {
    revsum::SentimentLexicon lexicon;
    lexicon.valence = {
        {"great", 3.1},   {"good", 1.9},  {"love", 3.2},     {"nice", 1.8},
        {"excellent", 3.2}, {"fine", 0.8}, {"bad", -2.5},    {"terrible", -2.1},
        {"awful", -2.0},  {"poor", -2.1}, {"broken", -1.9},  {"worst", -3.1},
    };
    lexicon.negators = {"not", "no", "never", "without"};
    lexicon.boosters = {{"very", 0.293}, {"really", 0.293}, {"slightly", -0.293}};
    return lexicon;
}

// Synthetic combined docs drawn from per-topic vocabularies; doc i of
// `docs_per_topic` belongs to topic i / docs_per_topic.
inline std::vector<revsum::CombinedDoc> planted_docs(
    const std::vector<std::vector<std::string>>& topic_vocabs, int docs_per_topic,
    int tokens_per_doc, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<revsum::CombinedDoc> docs;
    for (std::size_t topic = 0; topic < topic_vocabs.size(); ++topic) {
        const auto& vocab = topic_vocabs[topic];
        for (int d = 0; d < docs_per_topic; ++d) {
            revsum::CombinedDoc doc;
            doc.noun_key = "t" + std::to_string(topic) + "d" + std::to_string(d);
            doc.member_ids.push_back(revsum::SentenceId{
                doc.noun_key, revsum::Source::review, static_cast<int>(topic), d});
            for (int t = 0; t < tokens_per_doc; ++t) {
                ++doc.bag[vocab[rng() % vocab.size()]];
            }
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

inline std::vector<std::string> numbered_vocab(const std::string& prefix, int n) {
    std::vector<std::string> vocab;
    for (int i = 0; i < n; ++i) vocab.push_back(prefix + std::to_string(i));
    return vocab;
}

// Unique scratch directory under the build tree.
inline std::filesystem::path fresh_dir(const std::string& name) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("revsum_test_" + name + "_" + std::to_string(++counter) + "_" +
                      std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testutil
