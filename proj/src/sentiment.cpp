#include "revsum/sentiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "revsum/errors.hpp"
#include "revsum/text_util.hpp"

namespace revsum {

namespace {

constexpr int kNegationWindow = 3;
constexpr double kNegationScale = 0.74;

}  // namespace

const char* polarity_name(Polarity polarity) {
    return polarity == Polarity::positive ? "positive" : "negative";
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& asset_dir) {
    SentimentLexicon lexicon;

    auto open = [&](const char* name) {
        std::ifstream in(asset_dir / name);
        if (!in) {
            throw DataError("missing_asset",
                            "cannot open asset file: " + (asset_dir / name).string());
        }
        return in;
    };

    std::string line;
    {
        auto in = open("sentiment_lexicon.txt");
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            const std::string token = to_lower_ascii(line.substr(0, tab));
            const double value = std::stod(line.substr(tab + 1));
            if (value < -4.0 || value > 4.0) {
                throw DataError("bad_lexicon",
                                "valence out of [-4, 4] for token '" + token + "'");
            }
            lexicon.valence[token] = value;
        }
    }
    {
        auto in = open("negators.txt");
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] != '#') {
                lexicon.negators.insert(to_lower_ascii(line));
            }
        }
    }
    {
        auto in = open("boosters.txt");
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            lexicon.boosters[to_lower_ascii(line.substr(0, tab))] =
                std::stod(line.substr(tab + 1));
        }
    }
    return lexicon;
}

SentimentScores score_sentence(std::span<const std::string> raw_tokens,
                               const SentimentLexicon& lexicon) {
    double positive_sum = 0.0;
    double magnitude_sum = 0.0;
    double negative_sum = 0.0;

    for (std::size_t i = 0; i < raw_tokens.size(); ++i) {
        auto hit = lexicon.valence.find(raw_tokens[i]);
        if (hit == lexicon.valence.end()) continue;
        double adjusted = hit->second;

        // Booster only acts on the token right after it, and only when the
        // booster is not itself a valence word.
        if (i > 0) {
            const std::string& prev = raw_tokens[i - 1];
            if (!lexicon.valence.contains(prev)) {
                auto booster = lexicon.boosters.find(prev);
                if (booster != lexicon.boosters.end()) {
                    adjusted += adjusted < 0 ? -booster->second : booster->second;
                }
            }
        }

        for (int back = 1; back <= kNegationWindow; ++back) {
            if (static_cast<std::size_t>(back) > i) break;
            if (lexicon.negators.contains(raw_tokens[i - static_cast<std::size_t>(back)])) {
                adjusted *= -kNegationScale;
                break;
            }
        }

        if (adjusted > 0) positive_sum += adjusted;
        if (adjusted < 0) negative_sum += -adjusted;
        magnitude_sum += std::abs(adjusted);
    }

    SentimentScores scores;
    if (magnitude_sum > 0) {
        scores.ps = positive_sum / magnitude_sum;
        scores.ns = negative_sum / magnitude_sum;
        scores.neutral = false;
    } else {
        scores.ps = 0.0;
        scores.ns = 0.0;
        scores.neutral = true;
    }
    scores.polarity = polarity_label(scores.ps, scores.ns);
    return scores;
}

Polarity polarity_label(double ps, double ns) {
    return ps >= ns ? Polarity::positive : Polarity::negative;
}

}  // namespace revsum
