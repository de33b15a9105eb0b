#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "revsum/corpus.hpp"

namespace revsum {

enum class Source { review, summary };

const char* source_name(Source source);
Source source_from_name(const std::string& name);

struct SentenceId {
    std::string product_id;
    Source source = Source::review;
    int doc_index = 0;
    int sent_index = 0;

    auto operator<=>(const SentenceId&) const = default;

    // "product/review/3/0" — stable key used in artifacts and seeds.
    std::string str() const;
};

struct SentenceRecord {
    SentenceId id;
    std::string raw_text;
    std::vector<std::string> tokens;  // normalized, stopwords still present
    std::vector<std::string> stems;   // stopword-filtered, stemmed
    std::vector<std::string> nouns;   // sorted unique noun stems
    int word_count = 0;               // whitespace tokens of raw_text
};

struct CombinedDoc {
    std::string noun_key;
    std::vector<SentenceId> member_ids;
    std::map<std::string, int> bag;  // stem -> count over all members
};

// Plain-text asset files: stopwords.txt (one word per line), contractions.txt
// (from<TAB>to per line), nouns.txt (one lemma per line).
struct TextAssets {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, std::vector<std::string>> contractions;
    std::unordered_set<std::string> noun_lexicon;

    static TextAssets load(const std::filesystem::path& asset_dir);
};

std::vector<std::string> split_sentences(const std::string& text);

struct NormalizeResult {
    std::vector<std::string> tokens;
    std::vector<std::string> stems;
};

NormalizeResult normalize_and_filter(const std::string& raw, const TextAssets& assets);

class NounTagger {
public:
    virtual ~NounTagger() = default;
    virtual bool is_noun(const std::string& token) const = 0;
};

// Default tagger: lexicon lookup plus -tion/-ment/-ness/-ity suffix rules.
class LexiconNounTagger : public NounTagger {
public:
    explicit LexiconNounTagger(const std::unordered_set<std::string>& lexicon)
        : lexicon_(lexicon) {}

    bool is_noun(const std::string& token) const override;

private:
    const std::unordered_set<std::string>& lexicon_;
};

// Stems of the tokens the tagger accepts, sorted and deduplicated.
std::vector<std::string> tag_nouns(std::span<const std::string> tokens,
                                   const NounTagger& tagger);

SentenceRecord make_sentence_record(SentenceId id, const std::string& raw_text,
                                    const TextAssets& assets, const NounTagger& tagger);

// Segments and normalizes every review and reference summary in the dataset.
std::vector<SentenceRecord> preprocess_dataset(const Dataset& dataset,
                                               const TextAssets& assets,
                                               const NounTagger& tagger);

std::vector<CombinedDoc> build_combined_docs(std::span<const SentenceRecord> sentences);

}  // namespace revsum
