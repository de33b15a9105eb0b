#include "revsum/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "revsum/errors.hpp"
#include "revsum/porter.hpp"
#include "revsum/text_util.hpp"

namespace revsum {

const char* source_name(Source source) {
    return source == Source::review ? "review" : "summary";
}

Source source_from_name(const std::string& name) {
    if (name == "review") return Source::review;
    if (name == "summary") return Source::summary;
    throw DataError("bad_source", "unknown sentence source: " + name);
}

std::string SentenceId::str() const {
    return product_id + "/" + source_name(source) + "/" + std::to_string(doc_index) +
           "/" + std::to_string(sent_index);
}

namespace {

// Tokens that end with '.' without ending a sentence.
constexpr std::array<std::string_view, 26> kAbbreviations = {
    "mr.",   "mrs.",  "ms.",  "dr.",   "prof.", "sr.",   "jr.",
    "st.",   "vs.",   "etc.", "e.g.",  "i.e.",  "inc.",  "ltd.",
    "co.",   "corp.", "no.",  "fig.",  "al.",   "approx.", "dept.",
    "est.",  "min.",  "max.", "oz.",   "lbs.",
};

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

bool is_alpha_or_digit(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// The whitespace-delimited chunk ending at position i (inclusive), lowercased.
std::string chunk_ending_at(const std::string& text, std::size_t i) {
    std::size_t start = i;
    while (start > 0 && !is_space(text[start - 1])) --start;
    return to_lower_ascii(std::string_view(text).substr(start, i - start + 1));
}

bool guarded_period(const std::string& text, std::size_t i) {
    // Decimal number: digit on both sides.
    if (i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) && is_digit(text[i + 1])) {
        return true;
    }
    std::string chunk = chunk_ending_at(text, i);
    while (!chunk.empty() && !is_alpha_or_digit(chunk[0])) chunk.erase(chunk.begin());
    for (const auto& abbrev : kAbbreviations) {
        if (chunk == abbrev) return true;
    }
    // Single-letter initials, "j." in "j. smith".
    if (chunk.size() == 2 && std::isalpha(static_cast<unsigned char>(chunk[0]))) {
        return true;
    }
    return false;
}

bool closes_sentence(const std::string& text, std::size_t i) {
    // A terminator only ends the sentence when followed by whitespace or the
    // end of text, possibly after closing quotes/brackets; this keeps tokens
    // like "amazon.com" intact.
    std::size_t j = i + 1;
    while (j < text.size() &&
           (text[j] == '"' || text[j] == '\'' || text[j] == ')' || text[j] == ']' ||
            text[j] == '.' || text[j] == '!' || text[j] == '?')) {
        ++j;
    }
    return j >= text.size() || is_space(text[j]);
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::size_t start = 0;

    auto flush = [&](std::size_t end) {  // [start, end)
        std::size_t a = start;
        std::size_t b = end;
        while (a < b && is_space(text[a])) ++a;
        while (b > a && is_space(text[b - 1])) --b;
        if (b > a) sentences.push_back(text.substr(a, b - a));
        start = end;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            flush(i + 1);
            continue;
        }
        if (c != '.' && c != '!' && c != '?') continue;
        if (!closes_sentence(text, i)) continue;
        if (c == '.' && guarded_period(text, i)) continue;
        // Pull trailing terminators and closers into this sentence.
        std::size_t end = i + 1;
        while (end < text.size() && !is_space(text[end])) ++end;
        flush(end);
        i = end - 1;
    }
    flush(text.size());
    return sentences;
}

TextAssets TextAssets::load(const std::filesystem::path& asset_dir) {
    TextAssets assets;

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
        auto in = open("stopwords.txt");
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] != '#') assets.stopwords.insert(to_lower_ascii(line));
        }
    }
    {
        auto in = open("contractions.txt");
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            const std::string from = to_lower_ascii(line.substr(0, tab));
            std::istringstream to(to_lower_ascii(line.substr(tab + 1)));
            std::vector<std::string> parts;
            std::string part;
            while (to >> part) parts.push_back(part);
            if (!from.empty() && !parts.empty()) {
                assets.contractions.emplace(from, std::move(parts));
            }
        }
    }
    {
        auto in = open("nouns.txt");
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] != '#') {
                assets.noun_lexicon.insert(to_lower_ascii(line));
            }
        }
    }
    return assets;
}

namespace {

bool is_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Splits one whitespace chunk into normalized tokens: surrounding punctuation
// dropped, apostrophes squeezed out, other internal punctuation splits.
void append_normalized(const std::string& chunk, std::vector<std::string>& out) {
    std::string current;
    for (char c : chunk) {
        if (is_alnum(c)) {
            current.push_back(c);
        } else if (c == '\'') {
            continue;
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
}

// Trims punctuation from both ends but keeps interior characters, so map
// entries like "e-mail" or "don't" can still be looked up.
std::string_view trim_punct(std::string_view chunk) {
    std::size_t a = 0;
    std::size_t b = chunk.size();
    while (a < b && !is_alnum(chunk[a])) ++a;
    while (b > a && !is_alnum(chunk[b - 1])) --b;
    return chunk.substr(a, b - a);
}

}  // namespace

NormalizeResult normalize_and_filter(const std::string& raw, const TextAssets& assets) {
    NormalizeResult result;
    std::istringstream stream(to_lower_ascii(raw));
    std::string chunk;
    while (stream >> chunk) {
        const std::string key{trim_punct(chunk)};
        if (key.empty()) continue;
        auto it = assets.contractions.find(key);
        if (it != assets.contractions.end()) {
            for (const auto& replacement : it->second) {
                result.tokens.push_back(replacement);
            }
        } else {
            append_normalized(key, result.tokens);
        }
    }
    for (const auto& token : result.tokens) {
        if (!assets.stopwords.contains(token)) {
            result.stems.push_back(porter_stem(token));
        }
    }
    return result;
}

bool LexiconNounTagger::is_noun(const std::string& token) const {
    if (lexicon_.contains(token)) return true;
    auto has_suffix = [&](std::string_view suffix) {
        return token.size() > suffix.size() + 1 &&
               token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    return has_suffix("tion") || has_suffix("ment") || has_suffix("ness") ||
           has_suffix("ity");
}

std::vector<std::string> tag_nouns(std::span<const std::string> tokens,
                                   const NounTagger& tagger) {
    std::vector<std::string> nouns;
    for (const auto& token : tokens) {
        if (tagger.is_noun(token)) nouns.push_back(porter_stem(token));
    }
    std::sort(nouns.begin(), nouns.end());
    nouns.erase(std::unique(nouns.begin(), nouns.end()), nouns.end());
    return nouns;
}

SentenceRecord make_sentence_record(SentenceId id, const std::string& raw_text,
                                    const TextAssets& assets, const NounTagger& tagger) {
    SentenceRecord record;
    record.id = std::move(id);
    record.raw_text = raw_text;

    NormalizeResult normalized = normalize_and_filter(raw_text, assets);
    record.tokens = std::move(normalized.tokens);
    record.stems = std::move(normalized.stems);

    // Nouns are tagged on the surviving (non-stopword) tokens so that every
    // noun stem is also present in `stems`.
    std::vector<std::string> surviving;
    for (const auto& token : record.tokens) {
        if (!assets.stopwords.contains(token)) surviving.push_back(token);
    }
    record.nouns = tag_nouns(surviving, tagger);

    std::istringstream raw_stream(raw_text);
    std::string chunk;
    while (raw_stream >> chunk) ++record.word_count;
    return record;
}

std::vector<SentenceRecord> preprocess_dataset(const Dataset& dataset,
                                               const TextAssets& assets,
                                               const NounTagger& tagger) {
    std::vector<SentenceRecord> records;
    for (const auto& product : dataset.products) {
        for (std::size_t doc = 0; doc < product.reviews.size(); ++doc) {
            const auto sentences = split_sentences(product.reviews[doc]);
            for (std::size_t s = 0; s < sentences.size(); ++s) {
                records.push_back(make_sentence_record(
                    SentenceId{product.product_id, Source::review,
                               static_cast<int>(doc), static_cast<int>(s)},
                    sentences[s], assets, tagger));
            }
        }
        if (product.reference_summary) {
            const auto sentences = split_sentences(*product.reference_summary);
            for (std::size_t s = 0; s < sentences.size(); ++s) {
                records.push_back(make_sentence_record(
                    SentenceId{product.product_id, Source::summary, 0,
                               static_cast<int>(s)},
                    sentences[s], assets, tagger));
            }
        }
    }
    return records;
}

std::vector<CombinedDoc> build_combined_docs(std::span<const SentenceRecord> sentences) {
    std::map<std::string, CombinedDoc> by_noun;
    for (const auto& sentence : sentences) {
        for (const auto& noun : sentence.nouns) {
            CombinedDoc& doc = by_noun[noun];
            doc.noun_key = noun;
            doc.member_ids.push_back(sentence.id);
            for (const auto& stem : sentence.stems) {
                ++doc.bag[stem];
            }
        }
    }
    std::vector<CombinedDoc> docs;
    docs.reserve(by_noun.size());
    for (auto& [_, doc] : by_noun) {
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace revsum
