#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "revsum/errors.hpp"
#include "revsum/rouge.hpp"
#include "test_helpers.hpp"

using namespace revsum;

namespace {

const RougeOptions kPlain{false, false};

// Independent n-gram scorer: enumerates every candidate n-gram and consumes
// matches from a reference multiset.
RougeScore exhaustive_rouge(const std::vector<std::string>& cand,
                            const std::vector<std::string>& ref, int n) {
    auto list_ngrams = [n](const std::vector<std::string>& tokens) {
        std::vector<std::vector<std::string>> grams;
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
            grams.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                               tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
        }
        return grams;
    };
    const auto cand_grams = list_ngrams(cand);
    auto ref_grams = list_ngrams(ref);
    int overlap = 0;
    for (const auto& gram : cand_grams) {
        for (auto it = ref_grams.begin(); it != ref_grams.end(); ++it) {
            if (*it == gram) {
                ref_grams.erase(it);
                ++overlap;
                break;
            }
        }
    }
    RougeScore score;
    const std::size_t n_ref = list_ngrams(ref).size();
    score.precision = cand_grams.empty() ? 0.0 : static_cast<double>(overlap) / cand_grams.size();
    score.recall = n_ref == 0 ? 0.0 : static_cast<double>(overlap) / n_ref;
    score.f1 = score.precision + score.recall > 0
                   ? 2 * score.precision * score.recall / (score.precision + score.recall)
                   : 0.0;
    return score;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& token : tokens) {
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

}  // namespace

TEST_CASE("hand-counted unigram overlap") {
    const RougeScore score = rouge_n("the battery is great", "battery life is great", 1,
                                     kPlain, testutil::shared_assets());
    CHECK(score.precision == doctest::Approx(0.75));
    CHECK(score.recall == doctest::Approx(0.75));
    CHECK(score.f1 == doctest::Approx(0.75));
}

TEST_CASE("identical and disjoint texts") {
    const auto& assets = testutil::shared_assets();
    for (int n : {1, 2}) {
        const RougeScore same =
            rouge_n("crisp display with deep blacks", "crisp display with deep blacks", n,
                    kPlain, assets);
        CHECK(same.precision == doctest::Approx(1.0));
        CHECK(same.recall == doctest::Approx(1.0));
        CHECK(same.f1 == doctest::Approx(1.0));

        const RougeScore none =
            rouge_n("alpha beta gamma", "delta epsilon zeta", n, kPlain, assets);
        CHECK(none.precision == doctest::Approx(0.0));
        CHECK(none.recall == doctest::Approx(0.0));
        CHECK(none.f1 == doctest::Approx(0.0));
    }
}

TEST_CASE("empty reference is an error, empty candidate scores zero") {
    const auto& assets = testutil::shared_assets();
    CHECK_THROWS_WITH_AS(rouge_n("something", "", 1, kPlain, assets),
                         doctest::Contains("empty reference"), DataError);
    const RougeScore zero = rouge_n("", "reference words here", 1, kPlain, assets);
    CHECK(zero.precision == 0.0);
    CHECK(zero.recall == 0.0);
    CHECK(zero.f1 == 0.0);
}

TEST_CASE("repeating a candidate token cannot exceed the reference count") {
    const auto& assets = testutil::shared_assets();
    const RougeScore once = rouge_n("battery", "battery pack", 1, kPlain, assets);
    const RougeScore many =
        rouge_n("battery battery battery", "battery pack", 1, kPlain, assets);
    CHECK(once.recall == doctest::Approx(many.recall));
    CHECK(many.precision <= once.precision);
}

TEST_CASE("precision and recall are mirror images") {
    const auto& assets = testutil::shared_assets();
    const std::string a = "sharp screen with vivid colors";
    const std::string b = "screen colors look vivid to me";
    for (int n : {1, 2}) {
        const RougeScore ab = rouge_n(a, b, n, kPlain, assets);
        const RougeScore ba = rouge_n(b, a, n, kPlain, assets);
        CHECK(ab.precision == doctest::Approx(ba.recall));
        CHECK(ab.recall == doctest::Approx(ba.precision));
    }
}

TEST_CASE("stemming option merges inflected forms") {
    const auto& assets = testutil::shared_assets();
    const RougeOptions stemmed{true, false};
    const RougeScore raw = rouge_n("lasting batteries", "battery lasts", 1, kPlain, assets);
    const RougeScore merged =
        rouge_n("lasting batteries", "battery lasts", 1, stemmed, assets);
    CHECK(raw.f1 == doctest::Approx(0.0));
    CHECK(merged.f1 > 0.5);
}

TEST_CASE("exhaustive oracle matches on random pairs") {
    const auto& assets = testutil::shared_assets();
    const auto vocab = testutil::numbered_vocab("tok", 6);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> cand;
        std::vector<std::string> ref;
        const int cand_len = static_cast<int>(rng() % 11);
        const int ref_len = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < cand_len; ++i) cand.push_back(vocab[rng() % vocab.size()]);
        for (int i = 0; i < ref_len; ++i) ref.push_back(vocab[rng() % vocab.size()]);
        for (int n : {1, 2}) {
            const RougeScore got = rouge_n(join(cand), join(ref), n, kPlain, assets);
            const RougeScore want = exhaustive_rouge(cand, ref, n);
            CAPTURE(join(cand));
            CAPTURE(join(ref));
            CHECK(got.precision == doctest::Approx(want.precision).epsilon(0));
            CHECK(got.recall == doctest::Approx(want.recall).epsilon(0));
            CHECK(got.f1 == doctest::Approx(want.f1).epsilon(0));
        }
    }
}

TEST_CASE("rouge_l longest common subsequence") {
    const auto& assets = testutil::shared_assets();
    // LCS("a b c d e", "a c e") = 3.
    const RougeScore score = rouge_l("alpha beta gamma delta epsilon",
                                     "alpha gamma epsilon", kPlain, assets);
    CHECK(score.recall == doctest::Approx(1.0));
    CHECK(score.precision == doctest::Approx(3.0 / 5.0));

    const RougeScore self = rouge_l("one two three", "one two three", kPlain, assets);
    CHECK(self.f1 == doctest::Approx(1.0));
}

TEST_CASE("evaluate_corpus macro averages hand-built scores") {
    const auto& assets = testutil::shared_assets();
    Dataset dataset;
    dataset.products.push_back(
        {"p1", {"irrelevant"}, std::string("battery life is great")});
    dataset.products.push_back(
        {"p2", {"irrelevant"}, std::string("alpha xray yankee zulu")});

    auto summary_with = [](const std::string& id, const std::string& text) {
        ProductSummary summary;
        summary.product_id = id;
        SummaryEntry entry;
        entry.topic_id = 0;
        entry.raw_text = text;
        summary.entries.push_back(entry);
        summary.k_used = 1;
        return summary;
    };
    const std::vector<ProductSummary> summaries = {
        summary_with("p1", "the battery is great"),  // ROUGE-1 F1 = 0.75
        summary_with("p2", "alpha bravo charlie delta"),  // ROUGE-1 F1 = 0.25
    };
    const std::vector<RougeVariant> variants = {RougeVariant::rouge1};
    const EvalReport report =
        evaluate_corpus(summaries, dataset, variants, kPlain, assets);
    CHECK(report.n_evaluated == 2);
    CHECK(report.macro_average.at(0).f1 == doctest::Approx(0.5));
}

TEST_CASE("self evaluation is perfect and missing references are skipped") {
    const auto& assets = testutil::shared_assets();
    Dataset dataset;
    dataset.products.push_back({"p1", {"r"}, std::string("good battery and screen")});
    dataset.products.push_back({"p2", {"r"}, std::nullopt});

    auto identical = [](const std::string& id, const std::string& text) {
        ProductSummary summary;
        summary.product_id = id;
        SummaryEntry entry;
        entry.raw_text = text;
        summary.entries.push_back(entry);
        summary.k_used = 1;
        return summary;
    };
    const std::vector<ProductSummary> summaries = {
        identical("p1", "good battery and screen"), identical("p2", "whatever")};
    const std::vector<RougeVariant> variants = {RougeVariant::rouge1,
                                                RougeVariant::rouge2,
                                                RougeVariant::rougeL};
    const EvalReport report =
        evaluate_corpus(summaries, dataset, variants, kPlain, assets);
    CHECK(report.n_evaluated == 1);
    CHECK(report.n_skipped == 1);
    for (const auto& score : report.macro_average) {
        CHECK(score.f1 == doctest::Approx(1.0));
    }
}

TEST_CASE("nothing to evaluate is an error") {
    const auto& assets = testutil::shared_assets();
    Dataset dataset;
    dataset.products.push_back({"p1", {"r"}, std::nullopt});
    ProductSummary summary;
    summary.product_id = "p1";
    const std::vector<ProductSummary> summaries = {summary};
    const std::vector<RougeVariant> variants = {RougeVariant::rouge1};
    CHECK_THROWS_WITH_AS(evaluate_corpus(summaries, dataset, variants, kPlain, assets),
                         doctest::Contains("nothing to evaluate"), DataError);
}
