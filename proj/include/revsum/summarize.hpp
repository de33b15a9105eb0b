#pragma once

#include <span>
#include <string>
#include <vector>

#include "revsum/sentiment.hpp"
#include "revsum/topics.hpp"

namespace revsum {

// Everything known about one non-discarded sentence by the time summaries
// are assembled.
struct ScoredSentence {
    SentenceId id;
    std::string raw_text;
    double p = 0;  // probability of the sentence's top topic
    SentimentScores sentiment;
    double sl = 0;
    double op = 0;     // PS or NS depending on the topic's polarity
    double score = 0;  // (p + op) * sl
};

struct TopicGroup {
    int topic_id = -1;
    std::vector<ScoredSentence> members;
    int n_pos = 0;
    int n_neg = 0;
    Polarity polarity = Polarity::positive;
};

// Topics ranked by how many sentences name them as top topic; ties go to the
// lower topic id, discarded assignments are ignored, and at most k non-empty
// topics come back.
std::vector<int> select_salient_topics(std::span<const TopicAssignment> assignments,
                                       int k = 5);

// Majority polarity (ties positive); every member's opinion score becomes PS
// on a positive topic and NS on a negative one.
void topic_polarity_and_op(TopicGroup& group);

// (p + op) * sl. All three arguments must be in [0, 1]; the result may
// exceed 1.
double sentence_score(double p, double op, double sl);

struct SummaryEntry {
    int topic_id = -1;
    SentenceId sentence_id;
    std::string raw_text;
    double score = 0;
    Polarity polarity = Polarity::positive;
};

struct ProductSummary {
    std::string product_id;
    std::vector<SummaryEntry> entries;  // ordered by topic salience
    int k_used = 0;
};

// Per-sentence pipeline outputs feeding summary assembly.
struct SentenceArtifacts {
    TopicAssignment assignment;
    std::string raw_text;
    SentimentScores sentiment;
    double sl = 0;
};

// Within each salient topic the highest Score wins; score ties break toward
// higher topic probability, then the lexicographically smaller sentence id.
ProductSummary generate_summary(const std::string& product_id,
                                std::span<const SentenceArtifacts> sentences,
                                int k = 5);

}  // namespace revsum
