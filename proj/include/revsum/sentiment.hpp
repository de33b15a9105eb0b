#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace revsum {

enum class Polarity { positive, negative };

const char* polarity_name(Polarity polarity);

// token<TAB>valence per line; negators and boosters live in their own
// one-entry-per-line files.
struct SentimentLexicon {
    std::unordered_map<std::string, double> valence;  // values in [-4, 4]
    std::unordered_set<std::string> negators;
    std::unordered_map<std::string, double> boosters;  // token -> increment

    static SentimentLexicon load(const std::filesystem::path& asset_dir);
};

struct SentimentScores {
    double ps = 0;
    double ns = 0;
    Polarity polarity = Polarity::positive;
    bool neutral = false;  // no lexicon hits; ties resolve positive
};

// Rule set v1: lexicon valence, negation inside a 3-token back window
// (flip and scale by 0.74), booster increment from the immediately
// preceding token. Input tokens must be lowercased but neither
// stopword-filtered nor stemmed.
SentimentScores score_sentence(std::span<const std::string> raw_tokens,
                               const SentimentLexicon& lexicon);

Polarity polarity_label(double ps, double ns);

}  // namespace revsum
