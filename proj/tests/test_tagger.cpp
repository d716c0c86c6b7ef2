#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "wise/tagger.hpp"

using namespace wise;

TEST_CASE("train_tagger memorizes a consistent single example") {
    std::vector<TaggedSentence> corpus = {
        {{"the", "DT"}, {"cat", "NN"}, {"sat", "VBD"}}};
    auto model = train_tagger(corpus, 5, 1);
    CHECK(model.training_accuracy == 1.0);
    auto tags = model.tag({"the", "cat", "sat"});
    REQUIRE(tags.size() == 3);
    CHECK(tags[0] == "DT");
    CHECK(tags[1] == "NN");
    CHECK(tags[2] == "VBD");
}

TEST_CASE("train_tagger rejects empty corpus") {
    CHECK_THROWS(train_tagger({}, 5, 1));
}

TEST_CASE("train_tagger is deterministic") {
    auto corpus = fixtures::tiny_tagged_corpus();
    auto a = train_tagger(corpus, 5, 42);
    auto b = train_tagger(corpus, 5, 42);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::string> toks = {"the", "dog", "sat", "quickly"};
        CHECK(a.tag(toks) == b.tag(toks));
    }
    CHECK(a.training_accuracy == b.training_accuracy);
}

TEST_CASE("tag output length always matches input length") {
    auto model = train_tagger(fixtures::tiny_tagged_corpus(), 5, 1);
    CHECK(model.tag({}).empty());
    for (size_t len = 1; len <= 12; ++len) {
        std::vector<std::string> toks(len, "zzzunseen");
        CHECK(model.tag(toks).size() == len);
    }
}

TEST_CASE("unseen token still gets a content tag") {
    auto model = train_tagger(fixtures::tiny_tagged_corpus(), 5, 1);
    auto tags = model.tag({"qqqq"});
    REQUIRE(tags.size() == 1);
    CHECK(tags[0] != kUnkTag);
    CHECK(tags[0] != kPadTag);
    CHECK(model.tagset().contains(tags[0]));
}

TEST_CASE("declared tagset rejects foreign tags") {
    TagSet ts;
    ts.add("DT");
    std::vector<TaggedSentence> corpus = {{{"the", "DT"}, {"cat", "NN"}}};
    CHECK_THROWS(train_tagger(corpus, 1, 1, &ts));
}

TEST_CASE("tagset caps content tags at 36") {
    TagSet ts;
    for (int i = 0; i < 36; ++i) ts.add("T" + std::to_string(i));
    CHECK(ts.content_size() == 36);
    CHECK_THROWS(ts.add("T36"));
}

TEST_CASE("tagger model round trips through save/load") {
    auto model = train_tagger(fixtures::tiny_tagged_corpus(), 5, 7);
    std::string path = "tagger_roundtrip.json";
    model.save(path);
    auto loaded = TaggerModel::load(path);
    std::remove(path.c_str());
    std::vector<std::string> toks = {"be", "sure", "to", "book", "a", "room"};
    CHECK(model.tag(toks) == loaded.tag(toks));
    CHECK(model.training_accuracy == loaded.training_accuracy);
}

TEST_CASE("load_conll parses sentences and rejects malformed lines") {
    {
        std::ofstream out("conll_ok.tsv");
        out << "the\tDT\ncat\tNN\n\nsat\tVBD\n";
    }
    auto corpus = load_conll("conll_ok.tsv");
    std::remove("conll_ok.tsv");
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].size() == 2);
    CHECK(corpus[1].size() == 1);

    {
        std::ofstream out("conll_bad.tsv");
        out << "the DT\n";  // space, not tab
    }
    CHECK_THROWS(load_conll("conll_bad.tsv"));
    std::remove("conll_bad.tsv");
}

TEST_CASE("to_pos_version preserves counts, labels and lengths") {
    auto model = train_tagger(fixtures::tiny_tagged_corpus(), 5, 1);
    Dataset d;
    d.sentences.push_back({"be sure to book", {"be", "sure", "to", "book"}, 1,
                           "hotel"});
    d.sentences.push_back({"the cat sat", {"the", "cat", "sat"}, 0, "misc"});
    auto pos = to_pos_version(d, model);
    REQUIRE(pos.size() == d.size());
    for (size_t i = 0; i < d.size(); ++i) {
        CHECK(pos.sentences[i].tokens.size() == d.sentences[i].tokens.size());
        CHECK(pos.sentences[i].label == d.sentences[i].label);
        CHECK(pos.sentences[i].domain == d.sentences[i].domain);
    }
    CHECK(pos.sentences[1].tokens[0] == "DT");

    // Applying twice keeps lengths; every output token is a tagset tag.
    auto pos2 = to_pos_version(pos, model);
    for (size_t i = 0; i < pos2.size(); ++i) {
        CHECK(pos2.sentences[i].tokens.size() == pos.sentences[i].tokens.size());
        for (const auto& t : pos2.sentences[i].tokens) {
            CHECK(model.tagset().contains(t));
        }
    }

    Dataset empty;
    CHECK(to_pos_version(empty, model).size() == 0);
}
