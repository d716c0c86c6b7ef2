#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fixtures.hpp"
#include "wise/eval.hpp"
#include "wise/nn.hpp"

using namespace wise;

namespace {

Vocabulary toy_vocab() {
    Vocabulary v;
    for (const auto& w : fixtures::filler_words()) v.add(w);
    v.add("recommend");
    return v;
}

ModelConfig tiny_config(uint64_t seed = 3) {
    ModelConfig cfg;
    cfg.embedding_dim = 8;
    cfg.vocab = toy_vocab();
    cfg.lstm_sizes = {8, 6, 4};
    cfg.l2_lambda = 1e-3;
    cfg.max_seq_len = 16;
    cfg.seed = seed;
    return cfg;
}

void zero_parameters(ClassifierModel& m) {
    auto zero = [](std::vector<double>& v) {
        std::fill(v.begin(), v.end(), 0.0);
    };
    zero(m.embedding);
    for (auto& l : m.lstm) {
        zero(l.w);
        zero(l.u);
        zero(l.b);
    }
    zero(m.dense_w);
    zero(m.dense_b);
}

}  // namespace

TEST_CASE("build_model: dense head shape follows the last LSTM layer") {
    ModelConfig cfg;
    cfg.embedding_dim = 100;
    cfg.vocab = toy_vocab();
    cfg.lstm_sizes = {100, 50, 20};
    auto m = build_model(cfg);
    CHECK(m.dense_w.size() == 2 * 20);
    CHECK(m.dense_b.size() == 2);
    CHECK(m.lstm[0].w.size() == 4 * 100 * 100);
    CHECK(m.lstm[1].w.size() == 4 * 50 * 100);
    CHECK(m.lstm[2].w.size() == 4 * 20 * 50);
}

TEST_CASE("build_model: deterministic from seed") {
    auto a = build_model(tiny_config(9));
    auto b = build_model(tiny_config(9));
    CHECK(a.embedding == b.embedding);
    for (int l = 0; l < 3; ++l) {
        CHECK(a.lstm[l].w == b.lstm[l].w);
        CHECK(a.lstm[l].u == b.lstm[l].u);
    }
    CHECK(a.dense_w == b.dense_w);
}

TEST_CASE("build_model: init shape/vocab mismatch rejected") {
    auto cfg = tiny_config();
    auto bad_dim = EmbeddingMatrix::zeros(cfg.vocab, 5);
    CHECK_THROWS(build_model(cfg, &bad_dim));
    Vocabulary other;
    other.add("different");
    auto bad_vocab = EmbeddingMatrix::zeros(other, cfg.embedding_dim);
    CHECK_THROWS(build_model(cfg, &bad_vocab));
}

TEST_CASE("forward: zero parameters give (0.5, 0.5)") {
    auto m = build_model(tiny_config());
    zero_parameters(m);
    auto p = forward(m, {2, 3, 4});
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("forward: hand-built 1-unit LSTM with zero weights") {
    ModelConfig cfg;
    cfg.embedding_dim = 1;
    Vocabulary v;
    v.add("x");
    cfg.vocab = v;
    cfg.lstm_sizes = {1, 1, 1};
    auto m = build_model(cfg);
    zero_parameters(m);
    m.dense_w = {1.0, -1.0};  // reads the single hidden unit
    // Zero-weight LSTM emits zero state, so logits are (0, 0).
    auto p = forward(m, {2});
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("forward: empty sequence is defined and finite") {
    auto m = build_model(tiny_config());
    auto p = forward(m, {});
    CHECK(std::isfinite(p[0]));
    CHECK(std::isfinite(p[1]));
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forward: probabilities positive and sum to 1") {
    auto m = build_model(tiny_config());
    wise::Rng rng(12);
    for (int t = 0; t < 30; ++t) {
        std::vector<size_t> ids;
        size_t len = rng.next_index(10);
        for (size_t i = 0; i < len; ++i) {
            ids.push_back(rng.next_index(m.config.vocab.size()));
        }
        auto p = forward(m, ids);
        CHECK(p[0] > 0.0);
        CHECK(p[1] > 0.0);
        CHECK(std::fabs(p[0] + p[1] - 1.0) < 1e-9);
    }
}

TEST_CASE("forward: PAD positions do not advance the state") {
    auto m = build_model(tiny_config());
    auto with_pad = forward(m, {2, kPadId, 3, kPadId, kPadId, 4});
    auto without = forward(m, {2, 3, 4});
    CHECK(with_pad == without);
}

TEST_CASE("forward: out-of-range id rejected") {
    auto m = build_model(tiny_config());
    CHECK_THROWS(forward(m, {m.config.vocab.size()}));
}

TEST_CASE("forward: truncation keeps the tail and never changes short input") {
    auto cfg = tiny_config();
    cfg.max_seq_len = 4;
    auto m = build_model(cfg);
    auto full = forward(m, {2, 3, 4, 5});
    CHECK(forward(m, {9, 10, 2, 3, 4, 5}) == full);  // head dropped
    // At or under the limit: identical regardless of padding.
    auto short_seq = forward(m, {2, 3});
    CHECK(forward(m, {2, 3, kPadId, kPadId}) == short_seq);
}

TEST_CASE("forward is pure: repeated calls agree bitwise") {
    auto m = build_model(tiny_config());
    std::vector<size_t> ids = {2, 5, 7, 3};
    auto a = forward(m, ids);
    auto b = forward(m, ids);
    CHECK(a == b);
}

TEST_CASE("adam scalar check: constant unit gradient") {
    TrainConfig tc;  // lr=0.001, betas=(0.9, 0.999), eps=1e-8
    double m1 = 0.0, m2 = 0.0, param = 0.0;
    adam_update_element(1.0, m1, m2, param, 1, tc);
    // Bias-corrected mhat = vhat = 1, so the first step is -lr (up to eps).
    CHECK(param == doctest::Approx(-0.001).epsilon(1e-6));
}

TEST_CASE("train: toy separable set reaches F1 >= 0.95") {
    ModelConfig cfg;
    cfg.embedding_dim = 16;
    cfg.vocab = toy_vocab();
    cfg.lstm_sizes = {16, 8, 4};
    cfg.l2_lambda = 1e-4;
    cfg.max_seq_len = 16;
    cfg.seed = 5;
    auto m = build_model(cfg);
    auto data = fixtures::keyword_dataset(200, 200, 17);
    TrainConfig tc;
    tc.epochs = 5;
    tc.shuffle_seed = 23;
    tc.learning_rate = 0.01;  // small corpus means few Adam steps
    auto history = train(m, data, tc);
    REQUIRE(history.size() == 5);
    CHECK(history.back().loss < history.front().loss);
    auto report = evaluate(m, data);
    CHECK(report.f1 >= 0.95);
}

TEST_CASE("train: epochs=0 is a no-op") {
    auto m = build_model(tiny_config());
    auto before = m.embedding;
    TrainConfig tc;
    tc.epochs = 0;
    auto history = train(m, fixtures::keyword_dataset(5, 5, 1), tc);
    CHECK(history.empty());
    CHECK(m.embedding == before);
}

TEST_CASE("train rejects single-class data") {
    auto m = build_model(tiny_config());
    TrainConfig tc;
    CHECK_THROWS(train(m, fixtures::keyword_dataset(10, 0, 1), tc));
}

TEST_CASE("train is deterministic given seeds") {
    auto data = fixtures::keyword_dataset(40, 40, 8);
    TrainConfig tc;
    tc.epochs = 2;
    tc.shuffle_seed = 99;
    auto a = build_model(tiny_config(4));
    auto b = build_model(tiny_config(4));
    auto ha = train(a, data, tc);
    auto hb = train(b, data, tc);
    CHECK(a.embedding == b.embedding);
    CHECK(a.dense_w == b.dense_w);
    for (size_t i = 0; i < ha.size(); ++i) {
        CHECK(ha[i].loss == hb[i].loss);
    }
}

TEST_CASE("untouched embedding rows are bit-invariant under training") {
    auto cfg = tiny_config();
    cfg.trainable_embeddings = true;
    auto m = build_model(cfg);
    auto before = m.embedding;
    // Corpus uses only a few tokens; every other row must stay untouched.
    Dataset data;
    data.sentences.push_back({"the hotel", {"the", "hotel"}, 1, "t"});
    data.sentences.push_back({"room view", {"room", "view"}, 0, "t"});
    TrainConfig tc;
    tc.epochs = 3;
    tc.batch_size = 2;
    train(m, data, tc);
    const size_t D = cfg.embedding_dim;
    std::vector<std::string> used = {"the", "hotel", "room", "view"};
    for (size_t id = 0; id < cfg.vocab.size(); ++id) {
        bool is_used = false;
        for (const auto& u : used) {
            if (cfg.vocab.id(u) == id) is_used = true;
        }
        bool changed = false;
        for (size_t d = 0; d < D; ++d) {
            if (m.embedding[id * D + d] != before[id * D + d]) changed = true;
        }
        if (is_used) {
            CHECK(changed);
        } else {
            CHECK(!changed);
        }
    }
}

TEST_CASE("frozen embeddings never change") {
    auto cfg = tiny_config();
    cfg.trainable_embeddings = false;
    auto m = build_model(cfg);
    auto before = m.embedding;
    TrainConfig tc;
    tc.epochs = 2;
    train(m, fixtures::keyword_dataset(20, 20, 2), tc);
    CHECK(m.embedding == before);
}

TEST_CASE("fine_tune: 0 epochs is identity; phases recorded in order") {
    auto m = build_model(tiny_config());
    auto data = fixtures::keyword_dataset(20, 20, 3);
    TrainConfig tc;
    tc.epochs = 1;
    tc.phase = "wiki";
    train(m, data, tc);
    auto params = m.dense_w;
    TrainConfig ft;
    ft.epochs = 0;
    ft.phase = "hotel";
    fine_tune(m, data, ft);
    CHECK(m.dense_w == params);
    // A real fine-tune pass records its phase.
    ft.epochs = 1;
    fine_tune(m, data, ft);
    CHECK(m.phases == std::vector<std::string>{"wiki", "hotel"});
}

TEST_CASE("fine_tune on the training data does not increase first-epoch loss") {
    auto data = fixtures::keyword_dataset(100, 100, 4);
    auto cfg = tiny_config();
    auto m = build_model(cfg);
    TrainConfig tc;
    tc.epochs = 3;
    auto h1 = train(m, data, tc);
    TrainConfig ft = tc;
    ft.epochs = 1;
    ft.phase = "continue";
    auto h2 = fine_tune(m, data, ft);
    CHECK(h2.front().loss <= h1.front().loss);
}

TEST_CASE("extract_embedding_layer: identity after zero training") {
    auto cfg = tiny_config();
    auto init = fixtures::toy_embeddings(cfg.embedding_dim, 31);
    cfg.vocab = init.vocab;
    auto m = build_model(cfg, &init);
    auto extracted = extract_embedding_layer(m);
    CHECK(extracted.data == init.data);
    CHECK(extracted.vocab.tokens() == init.vocab.tokens());
    CHECK(extracted.dim == init.dim);
}

TEST_CASE("sentence_representation: dimension, zero model, purity") {
    auto m = build_model(tiny_config());
    auto r = sentence_representation(m, {2, 3});
    CHECK(r.size() == 4);  // lstm_sizes[2]
    CHECK(sentence_representation(m, {2, 3}) == r);

    zero_parameters(m);
    auto z = sentence_representation(m, {2, 3});
    for (double x : z) CHECK(x == 0.0);
}

TEST_CASE("gradient_check: tiny fixture model under 1e-4") {
    Vocabulary v;
    for (int i = 0; i < 18; ++i) v.add("w" + std::to_string(i));
    ModelConfig cfg;
    cfg.embedding_dim = 8;
    cfg.vocab = v;  // 20 entries with specials
    cfg.lstm_sizes = {8, 6, 4};
    cfg.l2_lambda = 1e-3;
    cfg.max_seq_len = 8;
    cfg.seed = 13;
    auto m = build_model(cfg);
    Dataset batch;
    batch.sentences.push_back({"w0 w3 w5 w2 w7", {"w0", "w3", "w5", "w2", "w7"},
                               1, "t"});
    batch.sentences.push_back({"w1 w4 w6", {"w1", "w4", "w6"}, 0, "t"});
    double err = gradient_check(m, batch, 1e-5);
    CHECK(err < 1e-4);
}

TEST_CASE("gradient_check rejects degenerate step") {
    auto m = build_model(tiny_config());
    Dataset batch = fixtures::keyword_dataset(2, 2, 1);
    CHECK_THROWS(gradient_check(m, batch, 0.0));
}

TEST_CASE("L2 applies to LSTM weight matrices only") {
    auto cfg = tiny_config();
    cfg.l2_lambda = 0.01;
    auto m = build_model(cfg);
    auto cfg0 = cfg;
    cfg0.l2_lambda = 0.0;
    auto m0 = m;
    m0.config.l2_lambda = 0.0;

    Dataset batch = fixtures::keyword_dataset(2, 2, 6);
    auto with_l2 = batch_gradients(m, batch);
    auto without = batch_gradients(m0, batch);
    REQUIRE(with_l2.size() == without.size());

    auto tensor_values = [&](const std::string& name, bool regularized) {
        for (size_t i = 0; i < with_l2.size(); ++i) {
            if (with_l2[i].first != name) continue;
            const auto& a = with_l2[i].second;
            const auto& b = without[i].second;
            // Collect the parameter tensor to compare against 2*lambda*w.
            std::vector<double>* param = nullptr;
            if (name == "lstm0.w") param = &m.lstm[0].w;
            if (name == "lstm0.u") param = &m.lstm[0].u;
            if (name == "lstm1.w") param = &m.lstm[1].w;
            if (name == "lstm2.u") param = &m.lstm[2].u;
            for (size_t k = 0; k < a.size(); ++k) {
                double expected = regularized && param
                                      ? 2.0 * 0.01 * (*param)[k]
                                      : 0.0;
                if (regularized) {
                    CHECK(a[k] - b[k] == doctest::Approx(expected).epsilon(1e-9));
                } else {
                    CHECK(a[k] == b[k]);
                }
            }
        }
    };
    tensor_values("lstm0.w", true);
    tensor_values("lstm0.u", true);
    tensor_values("lstm1.w", true);
    tensor_values("lstm2.u", true);
    tensor_values("lstm0.b", false);
    tensor_values("lstm1.b", false);
    tensor_values("lstm2.b", false);
    tensor_values("embedding", false);
    tensor_values("dense.w", false);
    tensor_values("dense.b", false);
}

TEST_CASE("checkpoint round trip: bit-identical forward") {
    auto m = build_model(tiny_config(21));
    TrainConfig tc;
    tc.epochs = 1;
    tc.phase = "wiki";
    train(m, fixtures::keyword_dataset(20, 20, 5), tc);
    save_model(m, "ckpt_rt.bin");
    auto loaded = load_model("ckpt_rt.bin");
    std::remove("ckpt_rt.bin");

    CHECK(loaded.phases == m.phases);
    CHECK(loaded.adam_step == m.adam_step);
    wise::Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        std::vector<size_t> ids;
        size_t len = 1 + rng.next_index(8);
        for (size_t i = 0; i < len; ++i) {
            ids.push_back(rng.next_index(m.config.vocab.size()));
        }
        CHECK(forward(m, ids) == forward(loaded, ids));
    }
}

TEST_CASE("checkpoint stores the full initialization vocabulary") {
    auto cfg = tiny_config();
    auto init = fixtures::toy_embeddings(cfg.embedding_dim, 31);
    cfg.vocab = init.vocab;
    auto m = build_model(cfg, &init);
    // Train on a corpus covering a strict subset of the vocabulary.
    Dataset data;
    data.sentences.push_back({"the hotel", {"the", "hotel"}, 1, "t"});
    data.sentences.push_back({"room view", {"room", "view"}, 0, "t"});
    TrainConfig tc;
    tc.epochs = 1;
    train(m, data, tc);
    save_model(m, "ckpt_vocab.bin");
    auto loaded = load_model("ckpt_vocab.bin");
    std::remove("ckpt_vocab.bin");
    CHECK(loaded.config.vocab.size() == init.vocab.size());
    CHECK(loaded.embedding.size() == init.vocab.size() * cfg.embedding_dim);
}

TEST_CASE("checkpoint: corrupt and wrong-version files rejected") {
    {
        FILE* f = std::fopen("ckpt_bad.bin", "wb");
        std::fputs("NOTACKPT garbage", f);
        std::fclose(f);
    }
    CHECK_THROWS_WITH_AS(load_model("ckpt_bad.bin"),
                         doctest::Contains("magic"), std::runtime_error);
    std::remove("ckpt_bad.bin");
}
