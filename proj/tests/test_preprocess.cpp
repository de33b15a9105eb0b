#include <doctest.h>

#include <algorithm>
#include <cctype>

#include "revsum/preprocess.hpp"
#include "test_helpers.hpp"

using namespace revsum;

namespace {

std::string squash_whitespace(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

SentenceRecord record_for(const std::string& text, int sent = 0) {
    const LexiconNounTagger tagger(testutil::shared_assets().noun_lexicon);
    return make_sentence_record(SentenceId{"p", Source::review, 0, sent}, text,
                                testutil::shared_assets(), tagger);
}

}  // namespace

TEST_CASE("split_sentences basics") {
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("   \n\t ").empty());

    const auto two = split_sentences("Great phone. Battery lasts long!");
    REQUIRE(two.size() == 2);
    CHECK(two[0] == "Great phone.");
    CHECK(two[1] == "Battery lasts long!");

    const auto guarded = split_sentences("I paid $200 vs. the old price.");
    REQUIRE(guarded.size() == 1);

    CHECK(split_sentences("Ships in 3.5 days.").size() == 1);
    CHECK(split_sentences("Visit amazon.com for details.").size() == 1);
    CHECK(split_sentences("line one\nline two").size() == 2);
    CHECK(split_sentences("Really?! Yes.").size() == 2);
}

TEST_CASE("split_sentences covers all non-whitespace") {
    const std::string cases[] = {
        "Great phone. Battery lasts long!",
        "I paid $200 vs. the old price.",
        "No terminator at all",
        "Weird   spacing .  And!More?",
        "e.g. this works, i.e. nothing is lost... honest!",
        "\"Quoted sentence.\" Another one.",
    };
    for (const auto& text : cases) {
        CAPTURE(text);
        std::string glued;
        for (const auto& sentence : split_sentences(text)) {
            glued += squash_whitespace(sentence);
        }
        CHECK(glued == squash_whitespace(text));
    }
}

TEST_CASE("normalize_and_filter applies the substitution map") {
    const auto& assets = testutil::shared_assets();

    const auto email = normalize_and_filter("Check your e-mail", assets);
    CHECK(std::count(email.tokens.begin(), email.tokens.end(), "email") == 1);

    const auto stop = normalize_and_filter("the of and", assets);
    CHECK(stop.stems.empty());
    CHECK(stop.tokens.size() == 3);

    const auto contraction = normalize_and_filter("don't", assets);
    REQUIRE(contraction.tokens.size() == 2);
    CHECK(contraction.tokens[0] == "do");
    CHECK(contraction.tokens[1] == "not");
}

TEST_CASE("normalize_and_filter output is stopword free") {
    const auto& assets = testutil::shared_assets();
    const auto result = normalize_and_filter(
        "The battery, which I bought yesterday, is VERY good!", assets);
    for (const auto& token : result.tokens) {
        CHECK(token == to_lower_ascii(token));
    }
    CHECK(result.stems.size() <= result.tokens.size());
    for (const auto& stem : result.stems) {
        CHECK(!assets.stopwords.contains(stem));
    }
}

TEST_CASE("tag_nouns uses lexicon plus suffix rules") {
    const LexiconNounTagger tagger(testutil::shared_assets().noun_lexicon);

    const std::vector<std::string> battery = {"battery", "last", "one", "day"};
    const auto nouns = tag_nouns(battery, tagger);
    CHECK(nouns == std::vector<std::string>{"batteri", "day"});

    const std::vector<std::string> adverbs = {"very", "quickly"};
    CHECK(tag_nouns(adverbs, tagger).empty());

    const std::vector<std::string> heuristic = {"resolution"};
    CHECK(tag_nouns(heuristic, tagger) == std::vector<std::string>{"resolut"});
}

TEST_CASE("sentence record invariants") {
    const auto record =
        record_for("The battery resolution is very good, don't you think?");
    CHECK(record.stems.size() <= record.tokens.size());
    for (const auto& noun : record.nouns) {
        CHECK(std::count(record.stems.begin(), record.stems.end(), noun) > 0);
    }
    CHECK(record.word_count == 9);
}

TEST_CASE("build_combined_docs groups by shared noun") {
    std::vector<SentenceRecord> records;
    records.push_back(record_for("The battery last one day long.", 0));
    records.push_back(record_for("It is pretty heavy due to the battery.", 1));
    const auto docs = build_combined_docs(records);

    const auto battery = std::find_if(docs.begin(), docs.end(), [](const CombinedDoc& d) {
        return d.noun_key == "batteri";
    });
    REQUIRE(battery != docs.end());
    CHECK(battery->member_ids.size() == 2);
}

TEST_CASE("combined doc membership counts") {
    std::vector<SentenceRecord> records;
    records.push_back(record_for("The screen and the battery are fine.", 0));  // 2 nouns
    records.push_back(record_for("Works wonderfully and cheaply.", 1));        // 0 nouns
    records.push_back(record_for("Replaced the battery.", 2));                 // 1 noun

    const auto docs = build_combined_docs(records);
    std::size_t total_memberships = 0;
    for (const auto& doc : docs) {
        total_memberships += doc.member_ids.size();
        int bag_total = 0;
        for (const auto& [_, count] : doc.bag) bag_total += count;
        CHECK(bag_total > 0);
    }
    std::size_t total_nouns = 0;
    for (const auto& record : records) total_nouns += record.nouns.size();
    CHECK(total_memberships == total_nouns);

    // The two-noun sentence is in exactly two docs, the noun-free one in none.
    int first_sentence_docs = 0;
    for (const auto& doc : docs) {
        for (const auto& id : doc.member_ids) {
            if (id.sent_index == 0) ++first_sentence_docs;
            CHECK(id.sent_index != 1);
        }
    }
    CHECK(first_sentence_docs == 2);
}

TEST_CASE("combined doc noun keys belong to every member") {
    std::vector<SentenceRecord> records;
    records.push_back(record_for("Battery life and screen quality are great.", 0));
    records.push_back(record_for("Battery drains fast.", 1));
    records.push_back(record_for("The screen is bright.", 2));
    for (const auto& doc : build_combined_docs(records)) {
        for (const auto& id : doc.member_ids) {
            const auto& record = records[static_cast<std::size_t>(id.sent_index)];
            CHECK(std::count(record.nouns.begin(), record.nouns.end(), doc.noun_key) == 1);
        }
    }
}
