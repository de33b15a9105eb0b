#include "revsum/summarize.hpp"

#include <algorithm>
#include <map>

#include "revsum/errors.hpp"
#include "revsum/log.hpp"

namespace revsum {

std::vector<int> select_salient_topics(std::span<const TopicAssignment> assignments,
                                       int k) {
    std::map<int, int> counts;
    for (const auto& assignment : assignments) {
        if (!assignment.discarded) ++counts[assignment.top_topic];
    }
    std::vector<std::pair<int, int>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<int> topics;
    for (const auto& [topic, _] : ranked) {
        if (static_cast<int>(topics.size()) >= k) break;
        topics.push_back(topic);
    }
    return topics;
}

void topic_polarity_and_op(TopicGroup& group) {
    group.n_pos = 0;
    group.n_neg = 0;
    for (const auto& member : group.members) {
        if (member.sentiment.polarity == Polarity::positive) {
            ++group.n_pos;
        } else {
            ++group.n_neg;
        }
    }
    group.polarity = group.n_pos >= group.n_neg ? Polarity::positive : Polarity::negative;
    for (auto& member : group.members) {
        member.op = group.polarity == Polarity::positive ? member.sentiment.ps
                                                         : member.sentiment.ns;
    }
}

double sentence_score(double p, double op, double sl) {
    if (!(p >= 0.0 && p <= 1.0) || !(op >= 0.0 && op <= 1.0) ||
        !(sl >= 0.0 && sl <= 1.0)) {
        throw ContractViolation("sentence_score arguments must lie in [0, 1]");
    }
    return (p + op) * sl;
}

ProductSummary generate_summary(const std::string& product_id,
                                std::span<const SentenceArtifacts> sentences, int k) {
    ProductSummary summary;
    summary.product_id = product_id;

    std::vector<TopicAssignment> assignments;
    assignments.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        assignments.push_back(sentence.assignment);
    }
    const std::vector<int> salient = select_salient_topics(assignments, k);
    if (salient.empty()) {
        log_warn("product '" + product_id +
                 "' has no non-discarded sentences; emitting empty summary");
        return summary;
    }

    std::map<int, TopicGroup> groups;
    for (const auto& sentence : sentences) {
        if (sentence.assignment.discarded) continue;
        TopicGroup& group = groups[sentence.assignment.top_topic];
        group.topic_id = sentence.assignment.top_topic;
        ScoredSentence member;
        member.id = sentence.assignment.sentence_id;
        member.raw_text = sentence.raw_text;
        member.p = sentence.assignment.top_prob;
        member.sentiment = sentence.sentiment;
        member.sl = sentence.sl;
        group.members.push_back(std::move(member));
    }

    for (const int topic : salient) {
        TopicGroup& group = groups.at(topic);
        topic_polarity_and_op(group);

        const ScoredSentence* best = nullptr;
        for (auto& member : group.members) {
            member.score = sentence_score(member.p, member.op, member.sl);
            if (best == nullptr || member.score > best->score ||
                (member.score == best->score &&
                 (member.p > best->p ||
                  (member.p == best->p && member.id < best->id)))) {
                best = &member;
            }
        }

        SummaryEntry entry;
        entry.topic_id = topic;
        entry.sentence_id = best->id;
        entry.raw_text = best->raw_text;
        entry.score = best->score;
        entry.polarity = group.polarity;
        summary.entries.push_back(std::move(entry));
    }
    summary.k_used = static_cast<int>(summary.entries.size());
    return summary;
}

}  // namespace revsum
