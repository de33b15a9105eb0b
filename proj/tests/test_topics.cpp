#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "revsum/errors.hpp"
#include "revsum/topics.hpp"
#include "test_helpers.hpp"

using namespace revsum;

namespace {

LdaTrainConfig fast_config(int k, std::uint64_t seed = 11) {
    LdaTrainConfig config;
    config.K = k;
    config.iterations = 200;
    config.seed = seed;
    config.min_doc_freq = 1;
    return config;
}

std::vector<CombinedDoc> two_vocab_corpus(std::uint64_t seed = 5) {
    return testutil::planted_docs({testutil::numbered_vocab("alpha", 20),
                                   testutil::numbered_vocab("bravo", 20)},
                                  50, 30, seed);
}

// Fraction of docs whose argmax-inferred topic matches the planted label
// under the best label permutation (K=2).
double doc_label_purity(const LdaModel& model, std::span<const CombinedDoc> docs,
                        int docs_per_topic) {
    int agree = 0;
    int total = 0;
    std::vector<int> inferred;
    for (const auto& doc : docs) {
        SentenceRecord fake;
        fake.id = doc.member_ids.front();
        for (const auto& [token, count] : doc.bag) {
            for (int i = 0; i < count; ++i) fake.stems.push_back(token);
        }
        const TopicAssignment assignment = infer_sentence_topics(model, fake);
        REQUIRE(!assignment.discarded);
        inferred.push_back(assignment.top_topic);
    }
    for (std::size_t i = 0; i < inferred.size(); ++i) {
        const int label = static_cast<int>(i) / docs_per_topic;
        if (inferred[i] == label) ++agree;
        ++total;
    }
    const double direct = static_cast<double>(agree) / total;
    return std::max(direct, 1.0 - direct);
}

}  // namespace

TEST_CASE("train_lda is deterministic for a fixed seed") {
    const auto docs = two_vocab_corpus();
    const LdaModel a = train_lda(docs, fast_config(2));
    const LdaModel b = train_lda(docs, fast_config(2));
    CHECK(a.vocab == b.vocab);
    REQUIRE(a.phi.size() == b.phi.size());
    for (std::size_t k = 0; k < a.phi.size(); ++k) {
        for (std::size_t v = 0; v < a.phi[k].size(); ++v) {
            CHECK(a.phi[k][v] == b.phi[k][v]);
        }
    }
}

TEST_CASE("phi rows are probability distributions") {
    const auto docs = two_vocab_corpus();
    const LdaModel model = train_lda(docs, fast_config(3));
    for (const auto& row : model.phi) {
        double sum = 0;
        for (double p : row) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("planted two-vocabulary corpus separates at K=2") {
    const auto docs = two_vocab_corpus();
    const LdaModel model = train_lda(docs, fast_config(2));

    // Top-10 words of each topic should come from a single vocabulary.
    for (int k = 0; k < 2; ++k) {
        std::vector<int> order(model.vocab.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return model.phi[k][static_cast<std::size_t>(a)] >
                   model.phi[k][static_cast<std::size_t>(b)];
        });
        int alpha_hits = 0;
        for (int i = 0; i < 10; ++i) {
            if (model.vocab[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
                    .starts_with("alpha")) {
                ++alpha_hits;
            }
        }
        const double purity = std::max(alpha_hits, 10 - alpha_hits) / 10.0;
        CHECK(purity >= 0.9);
    }

    CHECK(doc_label_purity(model, docs, 50) >= 0.9);
}

TEST_CASE("train_lda rejects an empty corpus") {
    std::vector<CombinedDoc> docs;
    CHECK_THROWS_WITH_AS(train_lda(docs, fast_config(2)), doctest::Contains("empty corpus"),
                         DataError);

    // Pruning every token also counts as empty.
    CombinedDoc lonely;
    lonely.noun_key = "x";
    lonely.bag["solitary"] = 3;
    std::vector<CombinedDoc> pruned{lonely};
    LdaTrainConfig config = fast_config(2);
    config.min_doc_freq = 2;
    CHECK_THROWS_AS(train_lda(pruned, config), DataError);
}

TEST_CASE("train_lda proceeds when K exceeds the document count") {
    const auto docs = testutil::planted_docs({testutil::numbered_vocab("tok", 6)}, 3, 10, 2);
    const LdaModel model = train_lda(docs, fast_config(8));
    CHECK(model.K == 8);
}

TEST_CASE("perplexity closed forms") {
    // Uniform phi: every word has probability 1/V whatever theta is.
    LdaModel uniform;
    uniform.K = 4;
    uniform.vocab = testutil::numbered_vocab("w", 25);
    uniform.alpha = 0.5;
    uniform.beta = 0.01;
    uniform.seed = 3;
    uniform.phi.assign(4, std::vector<double>(25, 1.0 / 25.0));
    uniform.rebuild_index();

    std::vector<CombinedDoc> docs;
    CombinedDoc doc;
    doc.noun_key = "d";
    doc.bag["w0"] = 3;
    doc.bag["w7"] = 2;
    doc.bag["w24"] = 1;
    docs.push_back(doc);
    CHECK(perplexity(uniform, docs) == doctest::Approx(25.0).epsilon(1e-9));

    // Degenerate one-topic model that puts all mass on the repeated word.
    LdaModel onehot;
    onehot.K = 1;
    onehot.vocab = {"w"};
    onehot.alpha = 0.5;
    onehot.beta = 0.01;
    onehot.seed = 3;
    onehot.phi = {{1.0}};
    onehot.rebuild_index();
    CombinedDoc repeated;
    repeated.noun_key = "r";
    repeated.bag["w"] = 10;
    std::vector<CombinedDoc> repeated_docs{repeated};
    CHECK(perplexity(onehot, repeated_docs) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("perplexity requires scorable tokens") {
    LdaModel model;
    model.K = 1;
    model.vocab = {"w"};
    model.alpha = 0.5;
    model.beta = 0.01;
    model.phi = {{1.0}};
    model.rebuild_index();
    CombinedDoc oov;
    oov.noun_key = "o";
    oov.bag["unseen"] = 4;
    std::vector<CombinedDoc> docs{oov};
    CHECK_THROWS_WITH_AS(perplexity(model, docs), doctest::Contains("no scorable tokens"),
                         DataError);
}

TEST_CASE("training docs score no worse than shuffled noise docs") {
    const auto docs = two_vocab_corpus(9);
    const LdaModel model = train_lda(docs, fast_config(2, 21));

    // Noise: same token counts pushed through a shuffled vocabulary map.
    std::vector<std::string> shuffled = model.vocab;
    std::mt19937_64 rng(17);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rng() % i]);
    }
    std::vector<CombinedDoc> noise;
    for (const auto& doc : docs) {
        CombinedDoc mapped;
        mapped.noun_key = doc.noun_key;
        for (const auto& [token, count] : doc.bag) {
            const int v = model.vocab_id(token);
            REQUIRE(v >= 0);
            mapped.bag[shuffled[static_cast<std::size_t>(v)]] += count;
        }
        noise.push_back(std::move(mapped));
    }
    CHECK(perplexity(model, docs) <= perplexity(model, noise));
}

TEST_CASE("select_k_from_scores picks the argmin with small-K ties") {
    const std::vector<KCandidate> scores = {{5, -100.0, 210.0},
                                            {10, -90.0, 180.0},
                                            {15, -95.0, 195.0}};
    CHECK(select_k_from_scores(scores) == 10);

    const std::vector<KCandidate> tie = {{5, 0.0, 50.0}, {10, 0.0, 50.0}};
    CHECK(select_k_from_scores(tie) == 5);
}

TEST_CASE("select_k finds the planted topic count") {
    const auto docs = testutil::planted_docs({testutil::numbered_vocab("ax", 25),
                                              testutil::numbered_vocab("bx", 25),
                                              testutil::numbered_vocab("cx", 25)},
                                             50, 30, 13);
    KSweepConfig sweep;
    sweep.k_min = 2;
    sweep.k_max = 8;
    sweep.k_step = 1;
    sweep.iterations = 150;
    sweep.seed = 29;
    sweep.min_doc_freq = 1;
    const KSelectionReport report = select_k(docs, sweep);
    REQUIRE(report.candidates.size() == 7);
    for (const auto& candidate : report.candidates) {
        CHECK(candidate.heldout_perplexity > 0.0);
    }
    CHECK(report.chosen_K >= 3);
    CHECK(report.chosen_K <= 4);
}

TEST_CASE("select_k propagates training failures with a partial report") {
    std::vector<CombinedDoc> docs;  // empty corpus fails at the first candidate
    KSweepConfig sweep;
    sweep.k_min = 2;
    sweep.k_max = 3;
    sweep.k_step = 1;
    try {
        select_k(docs, sweep);
        FAIL("expected KSweepError");
    } catch (const KSweepError& e) {
        CHECK(e.partial_report().candidates.empty());
    }
}

TEST_CASE("infer_sentence_topics discards out-of-vocabulary sentences") {
    const auto docs = two_vocab_corpus();
    const LdaModel model = train_lda(docs, fast_config(2));

    SentenceRecord unknown;
    unknown.id = {"p", Source::review, 0, 0};
    unknown.stems = {"nowhere", "offmap"};
    const TopicAssignment assignment = infer_sentence_topics(model, unknown);
    CHECK(assignment.discarded);
    CHECK(assignment.top_topic == -1);
    for (double p : assignment.probs) CHECK(p == 0.0);
}

TEST_CASE("infer_sentence_topics yields a distribution and finds planted topics") {
    const auto docs = two_vocab_corpus();
    const LdaModel model = train_lda(docs, fast_config(2));

    SentenceRecord alpha_sentence;
    alpha_sentence.id = {"p", Source::review, 0, 1};
    alpha_sentence.stems = {"alpha0", "alpha1", "alpha2", "alpha3", "alpha4", "alpha5"};
    const TopicAssignment assignment = infer_sentence_topics(model, alpha_sentence);
    REQUIRE(!assignment.discarded);

    double sum = 0;
    for (double p : assignment.probs) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(assignment.top_prob > 0.8);

    // The same stems under the planted labels: alpha belongs to one topic and
    // an all-bravo sentence must land on the other.
    SentenceRecord bravo_sentence;
    bravo_sentence.id = {"p", Source::review, 0, 2};
    bravo_sentence.stems = {"bravo0", "bravo1", "bravo2", "bravo3", "bravo4", "bravo5"};
    const TopicAssignment other = infer_sentence_topics(model, bravo_sentence);
    REQUIRE(!other.discarded);
    CHECK(other.top_topic != assignment.top_topic);
    CHECK(other.top_prob > 0.8);
}

TEST_CASE("discarded XOR unit-sum holds over fixture sentences") {
    const auto docs = two_vocab_corpus();
    const LdaModel model = train_lda(docs, fast_config(2));
    std::mt19937_64 rng(33);
    for (int i = 0; i < 50; ++i) {
        SentenceRecord sentence;
        sentence.id = {"fuzz", Source::review, 0, i};
        const int len = static_cast<int>(rng() % 6);
        for (int t = 0; t < len; ++t) {
            if (rng() % 2 == 0) {
                sentence.stems.push_back("alpha" + std::to_string(rng() % 20));
            } else {
                sentence.stems.push_back("oov" + std::to_string(rng() % 5));
            }
        }
        const TopicAssignment assignment = infer_sentence_topics(model, sentence);
        double sum = 0;
        for (double p : assignment.probs) sum += p;
        if (assignment.discarded) {
            CHECK(sum == 0.0);
        } else {
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("lda model round-trips through disk with identical inference") {
    const auto dir = testutil::fresh_dir("lda");
    const auto docs = two_vocab_corpus();
    const LdaModel model = train_lda(docs, fast_config(2));
    save_lda(model, dir / "model.json", "deadbeef");
    const LdaModel reloaded = load_lda(dir / "model.json");

    CHECK(reloaded.K == model.K);
    CHECK(reloaded.vocab == model.vocab);
    SentenceRecord sentence;
    sentence.id = {"p", Source::review, 3, 1};
    sentence.stems = {"alpha1", "bravo2", "alpha7"};
    const TopicAssignment a = infer_sentence_topics(model, sentence);
    const TopicAssignment b = infer_sentence_topics(reloaded, sentence);
    REQUIRE(a.probs.size() == b.probs.size());
    for (std::size_t i = 0; i < a.probs.size(); ++i) {
        CHECK(a.probs[i] == b.probs[i]);
    }
}
