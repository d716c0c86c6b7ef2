#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "wise/subsample.hpp"

using namespace wise;

namespace {

LabeledSentence sent(std::vector<std::string> tokens, int label) {
    LabeledSentence s;
    s.tokens = std::move(tokens);
    s.text = join_tokens(s.tokens);
    s.label = label;
    s.domain = "t";
    return s;
}

// Axis-aligned 3-dim embedding so cosine scores are easy to derive by hand.
EmbeddingMatrix axis_embeddings() {
    Vocabulary v;
    size_t a = v.add("alpha");
    size_t b = v.add("beta");
    size_t c = v.add("gamma");
    auto e = EmbeddingMatrix::zeros(v, 3);
    e.row(a)[0] = 1.0;
    e.row(b)[1] = 1.0;
    e.row(c)[2] = 1.0;
    return e;
}

}  // namespace

TEST_CASE("selected_count: ceiling semantics") {
    CHECK(selected_count(0.01, 675851) == 6759);
    CHECK(selected_count(0.01, 100) == 1);
    CHECK(selected_count(0.5, 3) == 2);
    CHECK(selected_count(1.0, 7) == 7);
    CHECK(selected_count(0.01, 0) == 0);
}

TEST_CASE("testset_vector: unique tokens summed, OOV ignored") {
    auto e = axis_embeddings();
    Dataset test;
    test.sentences.push_back(sent({"alpha", "alpha", "beta"}, 1));
    test.sentences.push_back(sent({"beta", "mystery"}, 0));
    auto v = testset_vector(test, e);
    REQUIRE(v.size() == 3);
    // alpha and beta each appear once as unique tokens over the whole set.
    CHECK(v[0] == 1.0);
    CHECK(v[1] == 1.0);
    CHECK(v[2] == 0.0);
}

TEST_CASE("testset_vector rejects an empty test set") {
    auto e = axis_embeddings();
    CHECK_THROWS(testset_vector(Dataset{}, e));
}

TEST_CASE("semantic_subsample: hand-derived top-1 per class") {
    auto e = axis_embeddings();
    Dataset test;
    test.sentences.push_back(sent({"alpha"}, 1));  // test vector = x-axis

    Dataset wiki;
    wiki.sentences.push_back(sent({"beta"}, 1));            // cos 0
    wiki.sentences.push_back(sent({"alpha", "beta"}, 1));   // cos ~0.707
    wiki.sentences.push_back(sent({"alpha"}, 1));           // cos 1
    wiki.sentences.push_back(sent({"gamma"}, 0));           // cos 0
    wiki.sentences.push_back(sent({"alpha", "gamma"}, 0));  // cos ~0.707

    auto r = semantic_subsample(wiki, test, e, 0.4);
    // ceil(0.4*3)=2 positives, ceil(0.4*2)=1 negative.
    REQUIRE(r.dataset.sentences.size() == 3);
    CHECK(r.report.selected_positive == 2);
    CHECK(r.report.selected_negative == 1);
    // Original order preserved: indices 1, 2, 4 of wiki.
    CHECK(r.dataset.sentences[0].tokens ==
          std::vector<std::string>{"alpha", "beta"});
    CHECK(r.dataset.sentences[1].tokens == std::vector<std::string>{"alpha"});
    CHECK(r.dataset.sentences[2].tokens ==
          std::vector<std::string>{"alpha", "gamma"});
}

TEST_CASE("semantic_subsample: ties broken by original index") {
    auto e = axis_embeddings();
    Dataset test;
    test.sentences.push_back(sent({"alpha"}, 1));
    Dataset wiki;
    // Three identical-score positives; only the first two should survive.
    wiki.sentences.push_back(sent({"alpha"}, 1));
    wiki.sentences.push_back(sent({"alpha"}, 1));
    wiki.sentences.push_back(sent({"alpha"}, 1));
    wiki.sentences.push_back(sent({"beta"}, 0));
    auto r = semantic_subsample(wiki, test, e, 0.5);
    REQUIRE(r.report.selected_positive == 2);
    CHECK(r.dataset.sentences[0] == wiki.sentences[0]);
    CHECK(r.dataset.sentences[1] == wiki.sentences[1]);
}

TEST_CASE("semantic_subsample: fraction 1.0 returns the dataset unchanged") {
    auto e = fixtures::toy_embeddings(8, 3);
    auto wiki = fixtures::keyword_dataset(30, 30, 7);
    auto test = fixtures::keyword_dataset(5, 5, 9);
    auto r = semantic_subsample(wiki, test, e, 1.0);
    CHECK(r.dataset.sentences == wiki.sentences);
}

TEST_CASE("semantic_subsample: per-class retention counts on a larger set") {
    auto e = fixtures::toy_embeddings(8, 3);
    auto wiki = fixtures::keyword_dataset(500, 700, 11);
    auto test = fixtures::keyword_dataset(20, 20, 13);
    auto r = semantic_subsample(wiki, test, e, 0.1);
    CHECK(r.report.selected_positive == 50);   // ceil(0.1*500)
    CHECK(r.report.selected_negative == 70);   // ceil(0.1*700)
    size_t pos = 0, neg = 0;
    for (const auto& s : r.dataset.sentences) (s.label == 1 ? pos : neg)++;
    CHECK(pos == 50);
    CHECK(neg == 70);
}

TEST_CASE("semantic_subsample: selected sentences beat the discarded ones") {
    auto e = fixtures::toy_embeddings(8, 3);
    auto wiki = fixtures::keyword_dataset(100, 100, 17);
    auto test = fixtures::keyword_dataset(10, 10, 19);
    auto tv = testset_vector(test, e);
    auto r = semantic_subsample(wiki, test, e, 0.2);
    // Minimum kept score per class must be >= maximum discarded score.
    for (int label : {0, 1}) {
        double min_kept = 2.0, max_dropped = -2.0;
        size_t kept_seen = 0;
        for (const auto& s : wiki.sentences) {
            if (s.label != label) continue;
            double score = cosine(sentence_vector(s.tokens, e, true), tv);
            bool kept = false;
            for (const auto& k : r.dataset.sentences) {
                if (k == s) kept = true;
            }
            if (kept) {
                min_kept = std::min(min_kept, score);
                ++kept_seen;
            } else {
                max_dropped = std::max(max_dropped, score);
            }
        }
        CHECK(kept_seen == 20);
        CHECK(min_kept >= max_dropped);
    }
}

TEST_CASE("semantic_subsample: invalid fraction and missing class rejected") {
    auto e = axis_embeddings();
    Dataset test;
    test.sentences.push_back(sent({"alpha"}, 1));
    Dataset wiki;
    wiki.sentences.push_back(sent({"alpha"}, 1));
    wiki.sentences.push_back(sent({"beta"}, 0));
    CHECK_THROWS(semantic_subsample(wiki, test, e, 0.0));
    CHECK_THROWS(semantic_subsample(wiki, test, e, 1.5));
    Dataset one_class;
    one_class.sentences.push_back(sent({"alpha"}, 1));
    CHECK_THROWS(semantic_subsample(one_class, test, e, 0.5));
}

TEST_CASE("semantic_subsample: all-OOV test set is an error") {
    auto e = axis_embeddings();
    Dataset test;
    test.sentences.push_back(sent({"mystery", "unknown"}, 1));
    Dataset wiki;
    wiki.sentences.push_back(sent({"alpha"}, 1));
    wiki.sentences.push_back(sent({"beta"}, 0));
    CHECK_THROWS(semantic_subsample(wiki, test, e, 0.5));
}

TEST_CASE("SubsampleReport::to_text is key=value lines") {
    SubsampleReport r;
    r.selected_positive = 3;
    r.selected_negative = 4;
    r.fraction = 0.25;
    auto text = r.to_text();
    CHECK(text.find("selected_positive=3") != std::string::npos);
    CHECK(text.find("selected_negative=4") != std::string::npos);
    CHECK(text.find("fraction=0.25") != std::string::npos);
}
